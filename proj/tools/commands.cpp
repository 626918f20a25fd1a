#include "commands.hpp"

#include "htrmt/errors.hpp"
#include "htrmt/recurrences.hpp"
#include "htrmt/sampler.hpp"
#include "htrmt/serialize.hpp"
#include "htrmt/specfun.hpp"
#include "htrmt/verify.hpp"

#include <cmath>
#include <ostream>

namespace htrmt::cli {

namespace {

nlohmann::json header(const RunConfig& c)
{
    return nlohmann::json{{"config", to_json(c)}};
}

void write_header(std::ostream& out, const nlohmann::json& h)
{
    out << "# " << h.dump() << "\n";
}

bool needs_alpha1(Family f)
{
    return f == Family::laguerre || f == Family::jacobi || f == Family::jacobi_symmetric;
}

// Exact mode: all parameters given -> rationals; otherwise polynomials in the
// missing ones. Float mode needs every parameter.
EnsembleParams ensemble_params(const RunConfig& c)
{
    const Family f = parse_family(c.family);
    const bool use1 = needs_alpha1(f), use2 = f == Family::jacobi;
    if ((!use1 && c.alpha1) || (!use2 && c.alpha2))
        throw UsageError("family " + c.family + " takes no such exponent");
    EnsembleParams p;
    p.family = f;
    if (c.mode == "float") {
        if (!c.alpha || (use1 && !c.alpha1) || (use2 && !c.alpha2))
            throw UsageError("float mode needs every parameter of the family");
        p.alpha = parse_real(*c.alpha);
        if (use1)
            p.alpha1 = parse_real(*c.alpha1);
        if (use2)
            p.alpha2 = parse_real(*c.alpha2);
        return p;
    }
    if (c.mode != "exact")
        throw UsageError("mode must be exact or float");
    const bool complete = c.alpha && (!use1 || c.alpha1) && (!use2 || c.alpha2);
    auto exact = [&](const std::optional<std::string>& v, Param which) -> Scalar {
        if (complete)
            return Rational::parse(*v);
        if (v)
            return MultiPoly(Rational::parse(*v));
        return MultiPoly::var(which);
    };
    p.alpha = exact(c.alpha, Param::alpha);
    if (use1)
        p.alpha1 = exact(c.alpha1, Param::alpha1);
    if (use2)
        p.alpha2 = exact(c.alpha2, Param::alpha2);
    return p;
}

void check_format(const RunConfig& c)
{
    if (c.format != "csv" && c.format != "json")
        throw UsageError("format must be csv or json");
}

int cmd_moments(const RunConfig& c, std::ostream& out)
{
    check_format(c);
    const auto p = ensemble_params(c);
    auto m = moments0(p, c.order);
    if (c.correction) {
        const auto d = covariance_diagonal(p, c.order, m);
        m = moments1(p, c.order, m, d);
    }
    if (c.format == "json") {
        auto j = header(c);
        j["result"] = to_json(m);
        out << j.dump(2) << "\n";
        return exit_ok;
    }
    auto h = header(c);
    h["ring"] = ring_name(ring_of(p));
    write_header(out, h);
    out << (c.correction ? "p,m_p0,m_p1\n" : "p,m_p0\n");
    for (int k = 0; k <= c.order; ++k) {
        out << k << "," << to_string(m.m0[k]);
        if (c.correction)
            out << "," << to_string(m.m1->at(k));
        out << "\n";
    }
    return exit_ok;
}

int cmd_covariance(const RunConfig& c, std::ostream& out)
{
    check_format(c);
    const auto p = ensemble_params(c);
    const auto m = moments0(p, c.pmax + c.qmax + 2);
    if (c.diagonal) {
        const auto d = covariance_diagonal(p, c.pmax + c.qmax, m);
        if (c.format == "json") {
            auto j = header(c);
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& v : d)
                arr.push_back(to_json(v));
            j["result"] = {{"mu_tilde", arr}};
            out << j.dump(2) << "\n";
            return exit_ok;
        }
        write_header(out, header(c));
        out << "s,mu_tilde\n";
        for (size_t s = 0; s < d.size(); ++s)
            out << s << "," << to_string(d[s]) << "\n";
        return exit_ok;
    }
    const auto t = covariances(p, c.pmax, c.qmax, m);
    if (c.format == "json") {
        auto j = header(c);
        j["result"] = to_json(t);
        out << j.dump(2) << "\n";
        return exit_ok;
    }
    write_header(out, header(c));
    out << "p,q,mu\n";
    for (int a = 0; a <= c.pmax; ++a)
        for (int b = 0; b <= c.qmax; ++b)
            out << a << "," << b << "," << to_string(t.mu[a][b]) << "\n";
    return exit_ok;
}

double required(const std::optional<std::string>& v, const char* name)
{
    if (!v)
        throw UsageError(std::string("--") + name + " is required");
    return parse_real(*v);
}

DensitySpec density_spec(const RunConfig& c)
{
    DensitySpec s;
    s.kind = parse_density_kind(c.family);
    s.alpha = required(c.alpha, "alpha");
    if (s.kind == DensityKind::laguerre || s.kind == DensityKind::jacobi)
        s.alpha1 = required(c.alpha1, "alpha1");
    if (s.kind == DensityKind::jacobi)
        s.alpha2 = required(c.alpha2, "alpha2");
    return s;
}

std::vector<double> make_grid(double lo, double hi, int points, bool log_grid)
{
    if (points < 1)
        throw UsageError("points must be positive");
    if (!(hi > lo) && points > 1)
        throw UsageError("grid needs lo < hi");
    if (log_grid && !(lo > 0))
        throw UsageError("a logarithmic grid needs lo > 0");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : double(i) / (points - 1);
        g[i] = log_grid ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
    }
    g.front() = lo;
    if (points > 1)
        g.back() = hi;
    return g;
}

// default plotting range per density
void default_range(const DensitySpec& s, double& lo, double& hi)
{
    switch (s.kind) {
    case DensityKind::gaussian:
        hi = 6 * std::sqrt(1 + s.alpha);
        lo = -hi;
        return;
    case DensityKind::jacobi:
        lo = 1e-3;
        hi = 1 - 1e-3;
        return;
    case DensityKind::antisym:
        hi = 6 * std::sqrt(s.alpha);
        break;
    case DensityKind::laguerre: {
        BasicParams<double> p{Family::laguerre, s.alpha, s.alpha1, {}};
        hi = 6 * std::sqrt(moments0(p, 2).m0[2]);
        break;
    }
    case DensityKind::antisym_squared:
        hi = 6 * std::sqrt(s.alpha * (2 * s.alpha + 1));
        break;
    case DensityKind::dyson:
        hi = 6 * std::sqrt(2 * s.alpha * (1 + 3 * s.alpha));
        break;
    }
    lo = hi * 1e-3;
}

int cmd_density(const RunConfig& c, std::ostream& out, std::ostream& log)
{
    const auto s = density_spec(c);
    double lo = c.lo, hi = c.hi;
    if (lo == 0.0 && hi == 0.0)
        default_range(s, lo, hi);
    const auto grid = make_grid(lo, hi, c.points > 0 ? c.points : 401, c.log_grid);
    const auto curve = density_curve(s, grid, c.threads);
    auto h = header(c);
    int code = exit_ok;
    if (c.check_reflection) {
        if (s.kind != DensityKind::jacobi)
            throw UsageError("--check-reflection applies to the jacobi density");
        DensitySpec r = s;
        std::swap(r.alpha1, r.alpha2);
        double worst = 0;
        for (size_t i = 0; i < grid.size(); ++i) {
            const double v = density_value(r, 1 - grid[i]);
            worst = std::max(worst, std::abs(v - curve.values[i]) / std::max(std::abs(curve.values[i]), 1e-300));
        }
        const bool ok = worst < 1e-10;
        h["reflection_max_rel"] = worst;
        h["reflection_pass"] = ok;
        log << "reflection check " << (ok ? "passed" : "FAILED") << ": max relative difference " << worst << "\n";
        if (!ok)
            code = exit_verify;
    }
    write_density_csv(out, curve, h);
    return code;
}

TridiagModel tridiag_model(const RunConfig& c)
{
    TridiagModel m;
    m.kind = parse_model(c.model);
    m.alpha = required(c.alpha, "alpha");
    m.size = c.size;
    if (c.kappa) {
        if (m.kind != ModelKind::dyson)
            throw UsageError("--kappa applies to the dyson model");
        m.kappa = parse_real(*c.kappa);
    }
    validate(m);
    return m;
}

int cmd_sample(const RunConfig& c, std::ostream& out)
{
    const auto m = tridiag_model(c);
    if (c.side != "full" && c.side != "positive")
        throw UsageError("side must be full or positive");
    const auto side = c.side == "positive" ? HistogramSide::positive : HistogramSide::full;
    if (c.bins < 1)
        throw UsageError("bins must be positive");
    std::vector<double> edges;
    if (c.lo != 0.0 || c.hi != 0.0) {
        edges = make_grid(c.lo, c.hi, c.bins + 1, false);
    } else if (side == HistogramSide::positive) {
        const auto full = default_edges(m, 1);
        edges = make_grid(0.0, full.back(), c.bins + 1, false);
    } else {
        edges = default_edges(m, c.bins);
    }
    const auto h = run_trials(m, c.trials, edges, c.seed, side, c.threads);
    write_histogram_csv(out, h, m, c.seed, header(c));
    return exit_ok;
}

int cmd_dyson(const RunConfig& c, std::ostream& out)
{
    const double a = required(c.alpha, "alpha");
    const double lo = c.lo > 0 ? c.lo : 1e-12, hi = c.hi > 0 ? c.hi : 10.0;
    const auto grid = make_grid(lo, hi, c.points > 0 ? c.points : 121, c.lo == 0.0 && c.hi == 0.0 ? true : c.log_grid);
    const auto scaled = parallel_map(grid, c.threads, [&](double y) { return dyson_dos_scaled(a, std::log(y)); });
    auto h = header(c);
    h["limit_constant"] = 2 * trigamma(a);
    if (a == std::floor(a) && a >= 1 && a < 1e6) {
        double partial = 0;
        for (long l = 1; l < long(a); ++l)
            partial += 1.0 / (double(l) * double(l));
        h["dyson_constant"] = 2 * (M_PI * M_PI / 6 - partial);
    }
    write_header(out, h);
    out << "y,mu,y_abslogy3_mu\n";
    for (size_t i = 0; i < grid.size(); ++i) {
        const double y = grid[i], L = std::abs(std::log(y));
        out << format_double(y) << "," << format_double(scaled[i] / y) << "," << format_double(scaled[i] * L * L * L)
            << "\n";
    }
    return exit_ok;
}

int cmd_limits(const RunConfig& c, std::ostream& out)
{
    LimitReport r;
    if (c.family == "semicircle") {
        r = limit_semicircle(required(c.alpha, "alpha"), c.threads);
    } else if (c.family == "weak-disorder") {
        const double a = required(c.alpha, "alpha");
        r = limit_weak_disorder(a, c.kappa ? parse_real(*c.kappa) : a, c.threads);
    } else if (c.family == "confluence") {
        r = limit_jacobi_laguerre(required(c.alpha1, "alpha1"), required(c.alpha, "alpha"),
                                  required(c.alpha2, "alpha2"), c.threads);
    } else {
        throw UsageError("law must be semicircle, weak-disorder or confluence");
    }
    auto h = header(c);
    h["law"] = r.name;
    h["sup_abs"] = r.sup_abs;
    h["max_rel"] = r.max_rel;
    write_header(out, h);
    out << "x,value,reference\n";
    for (size_t i = 0; i < r.grid.size(); ++i)
        out << format_double(r.grid[i]) << "," << format_double(r.values[i]) << "," << format_double(r.reference[i])
            << "\n";
    return exit_ok;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& log)
{
    VerifyOptions opt;
    opt.quick = c.quick;
    opt.seed = c.seed;
    opt.threads = c.threads;
    std::vector<int> ids = c.criteria;
    if (ids.empty())
        for (int i = 1; i <= kCriteria; ++i)
            ids.push_back(i);
    bool all = true;
    nlohmann::json report = nlohmann::json::array();
    for (int id : ids) {
        const auto r = run_criterion(id, opt);
        log << summary_line(r) << std::endl;
        all = all && r.pass;
        report.push_back(to_json(r));
    }
    auto j = header(c);
    j["pass"] = all;
    j["criteria"] = report;
    out << j.dump(2) << "\n";
    return all ? exit_ok : exit_verify;
}

} // namespace

int run_command(const RunConfig& c, std::ostream& out, std::ostream& log)
{
    if (c.subcommand == "moments")
        return cmd_moments(c, out);
    if (c.subcommand == "covariance")
        return cmd_covariance(c, out);
    if (c.subcommand == "density")
        return cmd_density(c, out, log);
    if (c.subcommand == "sample")
        return cmd_sample(c, out);
    if (c.subcommand == "dyson")
        return cmd_dyson(c, out);
    if (c.subcommand == "limits")
        return cmd_limits(c, out);
    if (c.subcommand == "verify")
        return cmd_verify(c, out, log);
    throw UsageError("unknown subcommand '" + c.subcommand + "'");
}

} // namespace htrmt::cli
