#include "htrmt/errors.hpp"
#include "htrmt/specfun.hpp"

#include <cmath>

namespace htrmt {

namespace {

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = a + (b - a) * i / (n - 1);
    return g;
}

void summarize(LimitReport& r)
{
    r.sup_abs = 0.0;
    r.max_rel = 0.0;
    for (size_t i = 0; i < r.grid.size(); ++i) {
        const double d = std::abs(r.values[i] - r.reference[i]);
        r.sup_abs = std::max(r.sup_abs, d);
        if (r.reference[i] != 0.0)
            r.max_rel = std::max(r.max_rel, d / std::abs(r.reference[i]));
    }
}

} // namespace

LimitReport limit_semicircle(double alpha, int threads)
{
    if (!(alpha > 0.0))
        throw DomainError("limit_semicircle: alpha must be positive");
    LimitReport r;
    r.name = "semicircle";
    r.grid = linspace(-1.8, 1.8, 181);
    const double s = std::sqrt(alpha);
    r.values = parallel_map(r.grid, threads, [&](double y) { return s * density_gaussian(alpha, s * y); });
    for (double y : r.grid)
        r.reference.push_back(semicircle_law(y));
    summarize(r);
    return r;
}

LimitReport limit_weak_disorder(double alpha, double kappa, int threads)
{
    if (!(alpha > 0.0) || !(kappa > 0.0))
        throw DomainError("limit_weak_disorder: alpha and kappa must be positive");
    LimitReport r;
    r.name = "weak-disorder";
    const double end = 4.0 * alpha / kappa;
    r.grid = linspace(0.1 * end, 0.9 * end, 41);
    r.values = parallel_map(r.grid, threads, [&](double y) { return kappa * dyson_dos(alpha, kappa * y); });
    for (double y : r.grid)
        r.reference.push_back(weak_disorder_law(alpha, kappa, y));
    summarize(r);
    return r;
}

LimitReport limit_jacobi_laguerre(double alpha1, double alpha, double alpha2, int threads)
{
    LimitReport r;
    r.name = "jacobi-laguerre";
    r.grid = linspace(0.1, 5.0, 50);
    r.values = parallel_map(r.grid, threads,
                            [&](double x) { return density_jacobi(alpha1, alpha2, alpha, x / alpha2) / alpha2; });
    r.reference = parallel_map(r.grid, threads, [&](double x) { return density_laguerre(alpha1, alpha, x); });
    summarize(r);
    return r;
}

} // namespace htrmt
