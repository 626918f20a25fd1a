#include "htrmt/errors.hpp"
#include "htrmt/quadrature.hpp"
#include "htrmt/scalar.hpp"
#include "htrmt/specfun.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace htrmt {

namespace {

constexpr double kEnvelope = 1e-16;

bool near_minus_one(double a1)
{
    return std::abs(a1 + 1.0) < 1e-7;
}

// Natural scale used to start the tail search.
double bulk_scale(const DensitySpec& s)
{
    switch (s.kind) {
    case DensityKind::gaussian:
    case DensityKind::antisym:
        return 1.0 + std::sqrt(s.alpha);
    case DensityKind::laguerre:
        return 2.0 + s.alpha1 + s.alpha;
    case DensityKind::antisym_squared:
        return 1.0 + s.alpha;
    case DensityKind::dyson:
        return 1.0 + 2.0 * s.alpha;
    case DensityKind::jacobi:
        return 1.0;
    }
    return 1.0;
}

// Smallest X beyond the bulk where |x|^{p+1} rho(x) drops below the envelope
// fraction of its largest seen value.
double tail_cutoff(const DensitySpec& s, int p)
{
    double x = bulk_scale(s), peak = 0.0;
    for (int i = 0; i < 600; ++i) {
        const double g = std::pow(x, p + 1.0) * density_value(s, x);
        peak = std::max(peak, g);
        if (i > 3 && g <= kEnvelope * peak)
            return x;
        x *= 1.15;
    }
    throw ConvergenceError("density tail does not decay");
}

// x rho(x) as a function of log x for the kinds with a logarithmic
// singularity at the origin.
double scaled_at(const DensitySpec& s, double log_x)
{
    switch (s.kind) {
    case DensityKind::antisym:
        return 2.0 * antisym_squared_scaled(s.alpha, 2.0 * log_x);
    case DensityKind::antisym_squared:
        return antisym_squared_scaled(s.alpha, log_x);
    case DensityKind::dyson:
        return dyson_dos_scaled(s.alpha, log_x);
    default:
        throw UsageError("scaled density not available for this kind");
    }
}

QuadOptions options(double abs_tol)
{
    QuadOptions o;
    o.abs_tol = abs_tol;
    return o;
}

double integrate_piece(const DensitySpec& s, int p, double lo, double hi, double abs_tol)
{
    if (!(hi > lo))
        return 0.0;
    auto f = [&](double x) { return std::pow(x, p) * density_value(s, x); };
    return integrate(f, lo, hi, options(abs_tol)).value;
}

double integrate_range(const DensitySpec& s, int p, double a, double b, double abs_tol)
{
    if (!(b > a))
        return 0.0;
    switch (s.kind) {
    case DensityKind::gaussian: {
        double lo = a, hi = b;
        if (!std::isfinite(lo) || !std::isfinite(hi)) {
            const double big = tail_cutoff(s, p);
            lo = std::max(lo, -big);
            hi = std::min(hi, big);
        }
        if (lo < 0.0 && hi > 0.0)
            return integrate_piece(s, p, lo, 0.0, abs_tol) + integrate_piece(s, p, 0.0, hi, abs_tol);
        return integrate_piece(s, p, lo, hi, abs_tol);
    }
    case DensityKind::jacobi: {
        const double lo = std::max(a, 0.0), hi = std::min(b, 1.0);
        if (!(hi > lo))
            return 0.0;
        auto f = [&](double x) { return std::pow(x, p) * density_value(s, x); };
        double total = 0.0;
        const double mid = std::clamp(0.5, lo, hi);
        if (mid > lo)
            total += lo <= 0.0 ? integrate_left_power(f, 0.0, mid, s.alpha1, options(abs_tol)).value
                               : integrate_piece(s, p, lo, mid, abs_tol);
        if (hi > mid) {
            if (hi >= 1.0) {
                // reflected density, so the distance to 1 is never rounded away
                auto g = [&](double d) {
                    return std::pow(1.0 - d, p) * density_jacobi(s.alpha2, s.alpha1, s.alpha, d);
                };
                total += integrate_right_power(g, mid, 1.0, s.alpha2, options(abs_tol)).value;
            } else {
                total += integrate_piece(s, p, mid, hi, abs_tol);
            }
        }
        return total;
    }
    case DensityKind::laguerre: {
        if (near_minus_one(s.alpha1)) {
            DensitySpec t{DensityKind::antisym_squared, s.alpha, -1.0, 0.0};
            return integrate_range(t, p, a, b, abs_tol);
        }
        double lo = std::max(a, 0.0), hi = b;
        if (!std::isfinite(hi))
            hi = tail_cutoff(s, p);
        if (!(hi > lo))
            return 0.0;
        auto f = [&](double x) { return std::pow(x, p) * density_value(s, x); };
        const double knee = std::clamp(1.0, lo, hi);
        double total = 0.0;
        if (knee > lo)
            total += lo <= 0.0 ? integrate_left_power(f, 0.0, knee, s.alpha1, options(abs_tol)).value
                               : integrate_piece(s, p, lo, knee, abs_tol);
        total += integrate_piece(s, p, knee, hi, abs_tol);
        return total;
    }
    case DensityKind::antisym:
    case DensityKind::antisym_squared:
    case DensityKind::dyson: {
        double lo = std::max(a, 0.0), hi = b;
        if (!std::isfinite(hi))
            hi = tail_cutoff(s, p);
        if (!(hi > lo))
            return 0.0;
        const double knee = std::clamp(s.kind == DensityKind::antisym ? 0.5 : 0.25, lo, hi);
        double total = 0.0;
        if (knee > lo) {
            if (lo <= 0.0) {
                // x = exp(-1/t): dx = x dt / t^2, and x rho(x) stays bounded
                auto g = [&](double t) {
                    const double lx = -1.0 / t;
                    return std::exp(p * lx) * scaled_at(s, lx) / (t * t);
                };
                total += integrate(g, 0.0, -1.0 / std::log(knee), options(abs_tol)).value;
            } else {
                total += integrate_piece(s, p, lo, knee, abs_tol);
            }
        }
        total += integrate_piece(s, p, knee, hi, abs_tol);
        return total;
    }
    }
    return 0.0;
}

} // namespace

std::string_view density_kind_name(DensityKind k)
{
    switch (k) {
    case DensityKind::gaussian:
        return "gaussian";
    case DensityKind::laguerre:
        return "laguerre";
    case DensityKind::jacobi:
        return "jacobi";
    case DensityKind::antisym:
        return "antisym";
    case DensityKind::antisym_squared:
        return "antisym-squared";
    case DensityKind::dyson:
        return "dyson";
    }
    return "?";
}

DensityKind parse_density_kind(std::string_view s)
{
    for (auto k : {DensityKind::gaussian, DensityKind::laguerre, DensityKind::jacobi, DensityKind::antisym,
                   DensityKind::antisym_squared, DensityKind::dyson})
        if (density_kind_name(k) == s)
            return k;
    throw UsageError("unknown density family '" + std::string(s) + "'");
}

double density_value(const DensitySpec& s, double x)
{
    switch (s.kind) {
    case DensityKind::gaussian:
        return density_gaussian(s.alpha, x);
    case DensityKind::laguerre:
        return density_laguerre(s.alpha1, s.alpha, x);
    case DensityKind::jacobi:
        return density_jacobi(s.alpha1, s.alpha2, s.alpha, x);
    case DensityKind::antisym:
        return density_antisym(s.alpha, x);
    case DensityKind::antisym_squared:
        return density_antisym_squared(s.alpha, x);
    case DensityKind::dyson:
        return dyson_dos(s.alpha, x);
    }
    return 0.0;
}

double density_moment(const DensitySpec& s, int p, double abs_tol)
{
    if (p < 0)
        throw UsageError("moment order must be non-negative");
    return integrate_range(s, p, -INFINITY, INFINITY, abs_tol);
}

double density_mass(const DensitySpec& s, double a, double b, double abs_tol)
{
    return integrate_range(s, 0, a, b, abs_tol);
}

std::vector<double> parallel_map(const std::vector<double>& grid, int threads,
                                 const std::function<double(double)>& f)
{
    std::vector<double> out(grid.size());
    const size_t n = grid.size();
    const size_t workers = std::min<size_t>(std::max(1, threads), std::max<size_t>(n, 1));
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i)
            out[i] = f(grid[i]);
        return out;
    }
    std::exception_ptr failure;
    std::mutex guard;
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (size_t i = w; i < n; i += workers)
                    out[i] = f(grid[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(guard);
                if (!failure)
                    failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

DensityCurve density_curve(const DensitySpec& s, std::vector<double> grid, int threads)
{
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw UsageError("density grid must be strictly increasing");
    DensityCurve c;
    c.spec = s;
    c.values = parallel_map(grid, threads, [&](double x) { return density_value(s, x); });
    c.grid = std::move(grid);
    c.quadrature_mass = density_moment(s, 0);
    c.tolerance = 1e-6;
    return c;
}

void to_json(nlohmann::json& j, const DensitySpec& s)
{
    j = nlohmann::json{{"family", std::string(density_kind_name(s.kind))}, {"alpha", s.alpha}};
    if (s.kind == DensityKind::laguerre || s.kind == DensityKind::jacobi)
        j["alpha1"] = s.alpha1;
    if (s.kind == DensityKind::jacobi)
        j["alpha2"] = s.alpha2;
}

DensitySpec density_spec_from_json(const nlohmann::json& j)
{
    DensitySpec s;
    s.kind = parse_density_kind(j.at("family").get<std::string>());
    s.alpha = j.at("alpha").get<double>();
    s.alpha1 = j.value("alpha1", 0.0);
    s.alpha2 = j.value("alpha2", 0.0);
    return s;
}

void write_density_csv(std::ostream& os, const DensityCurve& c, const nlohmann::json& extra)
{
    nlohmann::json head = extra.is_object() ? extra : nlohmann::json::object();
    head["density"] = c.spec;
    head["quadrature_mass"] = c.quadrature_mass;
    head["tolerance"] = c.tolerance;
    head["points"] = c.grid.size();
    os << "# " << head.dump() << "\n";
    os << "x,rho\n";
    for (size_t i = 0; i < c.grid.size(); ++i)
        os << format_double(c.grid[i]) << "," << format_double(c.values[i]) << "\n";
}

} // namespace htrmt
