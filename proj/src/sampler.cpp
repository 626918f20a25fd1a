#include "htrmt/sampler.hpp"

#include "htrmt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

namespace htrmt {

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_stream(std::uint64_t master_seed, std::uint64_t trial)
{
    return mix64(mix64(master_seed) ^ mix64(trial + 0x632be59bd9b4e019ULL));
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : key_(mix64(seed) ^ mix64(~stream)) {}

std::uint64_t Rng::next()
{
    return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
}

double Rng::uniform()
{
    return (double(next() >> 11) + 0.5) * 0x1p-53;
}

double Rng::normal()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2 * uniform() - 1;
        v = 2 * uniform() - 1;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

namespace {

// Marsaglia-Tsang for shape >= 1, returned as a log.
double log_gamma_mt(double a, Rng& rng)
{
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9 * d);
    for (;;) {
        const double x = rng.normal();
        const double t = 1 + c * x;
        if (t <= 0)
            continue;
        const double v = t * t * t;
        const double u = rng.uniform();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v))
            return std::log(d) + std::log(v);
    }
}

void check_shape(double shape)
{
    if (!(shape > 0) || !std::isfinite(shape))
        throw UsageError("gamma shape must be positive and finite");
}

} // namespace

double sample_log_gamma(double shape, Rng& rng)
{
    check_shape(shape);
    if (shape >= 1)
        return log_gamma_mt(shape, rng);
    // Gamma(a) = Gamma(a + 1) U^(1/a)
    const double g = log_gamma_mt(shape + 1, rng);
    return g + std::log(rng.uniform()) / shape;
}

double sample_gamma(double shape, Rng& rng)
{
    check_shape(shape);
    if (shape >= 1)
        return std::exp(log_gamma_mt(shape, rng));
    if (shape < 1e-2)
        return std::exp(sample_log_gamma(shape, rng));
    const double g = std::exp(log_gamma_mt(shape + 1, rng));
    return g * std::pow(rng.uniform(), 1.0 / shape);
}

std::string_view model_name(ModelKind k)
{
    switch (k) {
    case ModelKind::antisym_beta: return "antisym-beta";
    case ModelKind::antisym_alpha: return "antisym-alpha";
    case ModelKind::dyson: return "dyson";
    }
    return "?";
}

ModelKind parse_model(std::string_view s)
{
    for (auto k : {ModelKind::antisym_beta, ModelKind::antisym_alpha, ModelKind::dyson})
        if (model_name(k) == s)
            return k;
    throw UsageError("unknown model '" + std::string(s) + "'");
}

long dimension(const TridiagModel& m)
{
    return m.kind == ModelKind::dyson ? 2 * m.size - 1 : m.size;
}

void validate(const TridiagModel& m)
{
    if (!(m.alpha > 0) || !std::isfinite(m.alpha))
        throw UsageError("alpha must be positive");
    if (m.kind == ModelKind::dyson) {
        if (m.size < 1)
            throw UsageError("chain length N must be at least 1");
        if (!(m.kappa > 0) || !std::isfinite(m.kappa))
            throw UsageError("kappa must be positive");
    } else if (m.size < 2) {
        throw UsageError("matrix size must be at least 2");
    }
}

double model_beta(const TridiagModel& m)
{
    return 2 * m.alpha / double(m.size / 2);
}

std::vector<double> superdiag_shapes(const TridiagModel& m)
{
    validate(m);
    const long n = dimension(m);
    std::vector<double> shapes(n - 1, m.alpha);
    if (m.kind == ModelKind::antisym_beta) {
        const double beta = model_beta(m);
        for (long j = 1; j < n; ++j)
            shapes[j - 1] = beta * double(n - j) / 4;
    }
    return shapes;
}

std::vector<double> build_tridiag(const TridiagModel& m, Rng& rng)
{
    auto b = superdiag_shapes(m);
    const double log_scale = m.kind == ModelKind::dyson ? -std::log(m.kappa) : 0.0;
    for (auto& e : b) {
        // work in logs so that entries far below the double range of their squares survive
        const double lg = e < 1e-2 ? sample_log_gamma(e, rng) : std::log(sample_gamma(e, rng));
        e = std::exp(0.5 * (lg + log_scale));
    }
    return b;
}

std::vector<double> build_tridiag(const TridiagModel& m, std::uint64_t seed)
{
    Rng rng(seed);
    return build_tridiag(m, rng);
}

namespace {

double pivot_floor(const std::vector<double>& b)
{
    double big = 0;
    for (double e : b)
        big = std::max(big, e * e);
    return std::max(big, 1.0) * std::numeric_limits<double>::min() * 4;
}

long count_below(const std::vector<double>& b, double t, double pivmin)
{
    double q = -t;
    if (std::abs(q) < pivmin)
        q = -pivmin;
    long neg = q < 0;
    for (double e : b) {
        q = -t - e * e / q;
        if (std::abs(q) < pivmin)
            q = -pivmin;
        neg += q < 0;
    }
    return neg;
}

} // namespace

std::vector<long> sturm_counts(const std::vector<double>& b, const std::vector<double>& shifts)
{
    const size_t k = shifts.size();
    const double pivmin = pivot_floor(b);
    std::vector<double> q(k);
    std::vector<long> neg(k, 0);
    for (size_t s = 0; s < k; ++s) {
        q[s] = -shifts[s];
        if (std::abs(q[s]) < pivmin)
            q[s] = -pivmin;
        neg[s] += q[s] < 0;
    }
    for (double e : b) {
        const double e2 = e * e;
        for (size_t s = 0; s < k; ++s) {
            double v = -shifts[s] - e2 / q[s];
            if (std::abs(v) < pivmin)
                v = -pivmin;
            q[s] = v;
            neg[s] += v < 0;
        }
    }
    return neg;
}

long zero_modes(const std::vector<double>& b)
{
    long zeros = 0, block = 1;
    for (double e : b) {
        if (e == 0.0) {
            zeros += block % 2;
            block = 1;
        } else {
            ++block;
        }
    }
    return zeros + block % 2;
}

std::vector<double> spectrum(const std::vector<double>& b)
{
    const long n = long(b.size()) + 1;
    double radius = 0;
    for (long i = 0; i < n; ++i) {
        const double left = i > 0 ? b[i - 1] : 0.0;
        const double right = i < n - 1 ? b[i] : 0.0;
        radius = std::max(radius, left + right);
    }
    const double pivmin = pivot_floor(b);
    const double tol = 1e-12 * radius;
    std::vector<double> out(n);
    for (long k = 0; k < n; ++k) {
        // the k-th eigenvalue is the smallest t with more than k eigenvalues below
        double lo = k > 0 ? out[k - 1] : -radius - tol, hi = radius + tol;
        lo = std::min(lo, hi);
        bool done = false;
        for (int it = 0; it < 200 && !done; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) {
                done = true;
                break;
            }
            if (count_below(b, mid, pivmin) > k)
                hi = mid;
            else
                lo = mid;
            done = hi - lo < std::numeric_limits<double>::epsilon() * std::max(std::abs(mid), tol);
        }
        if (!done && !(hi - lo <= tol))
            throw ConvergenceError("bisection did not reach tolerance for eigenvalue " + std::to_string(k));
        out[k] = 0.5 * (lo + hi);
    }
    return out;
}

namespace {

void check_edges(const std::vector<double>& edges)
{
    if (edges.size() < 2)
        throw UsageError("a histogram needs at least two edges");
    for (size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1]))
            throw UsageError("histogram edges must increase");
}

} // namespace

BinCounts sturm_histogram(const std::vector<double>& b, const std::vector<double>& edges)
{
    check_edges(edges);
    const auto c = sturm_counts(b, edges);
    const long n = long(b.size()) + 1;
    BinCounts h;
    h.counts.resize(edges.size() - 1);
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        h.counts[i] = c[i + 1] - c[i];
    h.below = c.front();
    h.above = n - c.back();
    return h;
}

BinCounts positive_histogram(const std::vector<double>& b, const std::vector<double>& edges)
{
    check_edges(edges);
    if (edges.front() != 0.0)
        throw UsageError("positive histogram edges must start at 0");
    const long n = long(b.size()) + 1;
    const long zeros = zero_modes(b);
    std::vector<double> shifts(edges.begin() + 1, edges.end());
    const auto c = sturm_counts(b, shifts);
    // by the +-x pairing, #(-e, e) = 2 #(< e) - n
    std::vector<long> below(edges.size(), 0);
    for (size_t i = 0; i < shifts.size(); ++i)
        below[i + 1] = std::max(0L, (2 * c[i] - n - zeros) / 2);
    BinCounts h;
    h.counts.resize(edges.size() - 1);
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        h.counts[i] = below[i + 1] - below[i];
    h.above = (n - zeros) / 2 - below.back();
    return h;
}

BinCounts bin_values(const std::vector<double>& values, const std::vector<double>& edges)
{
    check_edges(edges);
    BinCounts h;
    h.counts.assign(edges.size() - 1, 0);
    for (double v : values) {
        if (v < edges.front()) {
            ++h.below;
        } else if (v >= edges.back()) {
            ++h.above;
        } else {
            const auto it = std::upper_bound(edges.begin(), edges.end(), v);
            ++h.counts[size_t(it - edges.begin()) - 1];
        }
    }
    return h;
}

std::uint64_t Histogram::total() const
{
    std::uint64_t t = below + above;
    for (auto c : counts)
        t += c;
    return t;
}

std::vector<double> Histogram::bin_mass() const
{
    const double t = double(total());
    std::vector<double> out(counts.size());
    for (size_t i = 0; i < counts.size(); ++i)
        out[i] = t > 0 ? double(counts[i]) / t : 0.0;
    return out;
}

std::vector<double> Histogram::density() const
{
    auto out = bin_mass();
    for (size_t i = 0; i < out.size(); ++i)
        out[i] /= edges[i + 1] - edges[i];
    return out;
}

double Histogram::out_of_range_mass() const
{
    const double t = double(total());
    return t > 0 ? double(below + above) / t : 0.0;
}

namespace {

// Runs body(trial, worker) for every trial on a fixed strided partition.
void for_trials(long trials, int threads, const std::function<void(long, int)>& body)
{
    const int workers = int(std::min<long>(std::max(1, threads), std::max(1L, trials)));
    if (workers <= 1) {
        for (long t = 0; t < trials; ++t)
            body(t, 0);
        return;
    }
    std::exception_ptr failure;
    std::mutex guard;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (long t = w; t < trials; t += workers)
                    body(t, w);
            } catch (...) {
                std::lock_guard<std::mutex> lock(guard);
                if (!failure)
                    failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace

Histogram run_trials(const TridiagModel& m, long trials, const std::vector<double>& edges, std::uint64_t seed,
                     HistogramSide side, int threads)
{
    validate(m);
    check_edges(edges);
    if (trials < 1)
        throw UsageError("trials must be at least 1");
    const int workers = int(std::min<long>(std::max(1, threads), trials));
    std::vector<BinCounts> acc(workers);
    for (auto& a : acc)
        a.counts.assign(edges.size() - 1, 0);
    for_trials(trials, workers, [&](long t, int w) {
        Rng rng(seed, trial_stream(seed, std::uint64_t(t)));
        const auto b = build_tridiag(m, rng);
        const auto h = side == HistogramSide::positive ? positive_histogram(b, edges) : sturm_histogram(b, edges);
        auto& a = acc[w];
        for (size_t i = 0; i < h.counts.size(); ++i)
            a.counts[i] += h.counts[i];
        a.below += h.below;
        a.above += h.above;
    });
    Histogram out;
    out.edges = edges;
    out.counts.assign(edges.size() - 1, 0);
    out.trials = trials;
    out.side = side;
    for (const auto& a : acc) {
        for (size_t i = 0; i < a.counts.size(); ++i)
            out.counts[i] += std::uint64_t(a.counts[i]);
        out.below += std::uint64_t(a.below);
        out.above += std::uint64_t(a.above);
    }
    return out;
}

std::vector<double> default_edges(const TridiagModel& m, int bins)
{
    validate(m);
    if (bins < 1)
        throw UsageError("bins must be at least 1");
    // second moment of the limiting spectrum
    double second = 2 * m.alpha;
    if (m.kind == ModelKind::antisym_beta)
        second = m.alpha;
    else if (m.kind == ModelKind::dyson)
        second /= m.kappa;
    const double half = 6 * std::sqrt(second);
    // zero eigenvalues must sit inside a bin, not on an edge
    if (bins % 2 == 0)
        ++bins;
    std::vector<double> e(bins + 1);
    for (int i = 0; i <= bins; ++i)
        e[i] = -half + 2 * half * i / bins;
    return e;
}

namespace {

// ||J^l e_i||^2 for l = 0..pmax and the odd cross terms <J^l e_i, J^{l+1} e_i>.
void local_powers(const std::vector<double>& b, long i, int pmax, std::vector<double>& even,
                  double& odd_sum)
{
    const long n = long(b.size()) + 1;
    const long lo = std::max(0L, i - pmax - 1), hi = std::min(n - 1, i + pmax + 1);
    const long len = hi - lo + 1;
    std::vector<double> cur(len, 0.0), nxt(len, 0.0);
    cur[i - lo] = 1.0;
    auto norm2 = [&](const std::vector<double>& v) {
        double s = 0;
        for (double x : v)
            s += x * x;
        return s;
    };
    auto apply = [&](const std::vector<double>& v, std::vector<double>& out) {
        for (long k = 0; k < len; ++k) {
            const long g = lo + k;
            double s = 0;
            if (g > 0 && k > 0)
                s += b[g - 1] * v[k - 1];
            if (g < n - 1 && k + 1 < len)
                s += b[g] * v[k + 1];
            out[k] = s;
        }
    };
    even[0] += 1.0;
    for (int l = 1; l <= pmax; ++l) {
        apply(cur, nxt);
        double dot = 0;
        for (long k = 0; k < len; ++k)
            dot += cur[k] * nxt[k];
        odd_sum += dot;
        std::swap(cur, nxt);
        even[l] += norm2(cur);
    }
    apply(cur, nxt);
    for (long k = 0; k < len; ++k)
        odd_sum += cur[k] * nxt[k];
}

void jackknife(const std::vector<double>& x, double& mean, double& err)
{
    const size_t T = x.size();
    double sum = 0;
    for (double v : x)
        sum += v;
    mean = sum / double(T);
    if (T < 2) {
        err = 0;
        return;
    }
    double var = 0;
    for (double v : x) {
        const double loo = (sum - v) / double(T - 1);
        var += (loo - mean) * (loo - mean);
    }
    err = std::sqrt(var * double(T - 1) / double(T));
}

} // namespace

EmpiricalMoments empirical_moments(const TridiagModel& m, int pmax, long trials, std::uint64_t seed, int threads)
{
    validate(m);
    if (pmax < 0 || pmax > 12)
        throw UsageError("moment order must be in [0, 12]");
    if (trials < 1)
        throw UsageError("trials must be at least 1");
    const long n = dimension(m);
    std::vector<std::vector<double>> v(pmax + 1, std::vector<double>(trials)), w = v;
    std::vector<double> odd(trials, 0.0);
    for_trials(trials, threads, [&](long t, int) {
        Rng rng(seed, trial_stream(seed, std::uint64_t(t)));
        const auto b = build_tridiag(m, rng);
        std::vector<double> first(pmax + 1, 0.0), trace(pmax + 1, 0.0);
        double odd_first = 0, odd_trace = 0;
        local_powers(b, 0, pmax, first, odd_first);
        for (long i = 0; i < n; ++i)
            local_powers(b, i, pmax, trace, odd_trace);
        for (int l = 0; l <= pmax; ++l) {
            v[l][t] = first[l];
            w[l][t] = trace[l] / double(n);
        }
        odd[t] = std::abs(odd_trace);
    });
    EmpiricalMoments out;
    out.trials = trials;
    out.v.resize(pmax + 1);
    out.v_err.resize(pmax + 1);
    out.w.resize(pmax + 1);
    out.w_err.resize(pmax + 1);
    for (int l = 0; l <= pmax; ++l) {
        jackknife(v[l], out.v[l], out.v_err[l]);
        jackknife(w[l], out.w[l], out.w_err[l]);
    }
    out.odd_trace_max = *std::max_element(odd.begin(), odd.end());
    return out;
}

void to_json(nlohmann::json& j, const TridiagModel& m)
{
    j = nlohmann::json{{"model", std::string(model_name(m.kind))}, {"size", m.size}, {"alpha", m.alpha}};
    if (m.kind == ModelKind::dyson)
        j["kappa"] = m.kappa;
}

TridiagModel model_from_json(const nlohmann::json& j)
{
    TridiagModel m;
    try {
        m.kind = parse_model(j.at("model").get<std::string>());
        m.size = j.at("size").get<long>();
        m.alpha = j.at("alpha").get<double>();
        if (j.contains("kappa"))
            m.kappa = j.at("kappa").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad model header: ") + e.what());
    }
    validate(m);
    return m;
}

void write_histogram_csv(std::ostream& os, const Histogram& h, const TridiagModel& m, std::uint64_t seed,
                         const nlohmann::json& extra)
{
    nlohmann::json head;
    to_json(head, m);
    head["seed"] = seed;
    head["trials"] = h.trials;
    head["side"] = h.side == HistogramSide::positive ? "positive" : "full";
    head["below"] = h.below;
    head["above"] = h.above;
    if (extra.is_object())
        for (auto it = extra.begin(); it != extra.end(); ++it)
            head[it.key()] = it.value();
    os << "# " << head.dump() << "\n";
    os << "bin_left,bin_right,count,density_estimate\n";
    const auto d = h.density();
    char buf[160];
    for (size_t i = 0; i < h.counts.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%llu,%.17g\n", h.edges[i], h.edges[i + 1],
                      static_cast<unsigned long long>(h.counts[i]), d[i]);
        os << buf;
    }
}

} // namespace htrmt
