#include "htrmt/errors.hpp"
#include "htrmt/specfun.hpp"
#include "numeric.hpp"

#include <cmath>

namespace htrmt {

namespace {

constexpr mpfr_prec_t kBits = 256;

void check_order(int order)
{
    if (order < 0 || order > 20)
        throw UsageError("series order must lie in [0, 20]");
}

} // namespace

std::vector<double> stieltjes_gaussian_series(double alpha, int order)
{
    check_order(order);
    if (!(alpha > 0.0))
        throw DomainError("stieltjes_gaussian_series: alpha must be positive");
    // S(u) = sum c_s u^s with c_s = (alpha)_{2s} / (s! 2^s) and u = 1/x^2;
    // W = 1/x + (2/alpha) sum_p p l_p x^{-2p-1} where log S = sum l_p u^p.
    const BigFloat a(alpha, kBits);
    std::vector<BigFloat> c(order + 1, BigFloat(kBits)), e(order + 1, BigFloat(kBits));
    c[0] = BigFloat(1.0, kBits);
    for (int s = 1; s <= order; ++s)
        c[s] = c[s - 1] * (a + (2.0 * s - 2.0)) * (a + (2.0 * s - 1.0)) / (2.0 * s);
    std::vector<double> out{1.0};
    for (int p = 1; p <= order; ++p) {
        BigFloat acc = c[p] * static_cast<double>(p);
        for (int k = 1; k < p; ++k)
            acc -= e[k] * c[p - k];
        e[p] = acc;
        out.push_back((acc * 2.0 / a).to_double());
    }
    return out;
}

std::vector<double> stieltjes_jacobi_series(double alpha1, double alpha2, double alpha, int order)
{
    check_order(order);
    const double cpar = 2.0 * alpha + alpha1 + alpha2 + 2.0;
    // coefficients of F(a+1, a+a1+2; c+1; z) and F(a, a+a1+1; c; z)
    std::vector<BigFloat> f(order + 1, BigFloat(kBits)), g(order + 1, BigFloat(kBits));
    f[0] = BigFloat(1.0, kBits);
    g[0] = BigFloat(1.0, kBits);
    const BigFloat a(alpha, kBits), a1(alpha1, kBits), c(cpar, kBits);
    for (int n = 1; n <= order; ++n) {
        const double m = n - 1.0;
        BigFloat df = c + (1.0 + m), dg = c + m;
        if (df.is_zero() || dg.is_zero())
            throw DomainError("stieltjes_jacobi_series: hypergeometric pole");
        f[n] = f[n - 1] * (a + (1.0 + m)) * (a + a1 + (2.0 + m)) / (df * n);
        g[n] = g[n - 1] * (a + m) * (a + a1 + (1.0 + m)) / (dg * n);
    }
    if (c.is_zero())
        throw DomainError("stieltjes_jacobi_series: hypergeometric pole");
    std::vector<BigFloat> q(order + 1, BigFloat(kBits));
    for (int n = 0; n <= order; ++n) {
        BigFloat acc = f[n];
        for (int k = 1; k <= n; ++k)
            acc -= g[k] * q[n - k];
        q[n] = acc;
    }
    BigFloat k = (a + a1 + 1.0) / c;
    std::vector<double> out{1.0};
    for (int p = 1; p <= order; ++p)
        out.push_back((k * q[p - 1]).to_double());
    return out;
}

double stieltjes_jacobi(double alpha1, double alpha2, double alpha, double x)
{
    if (!(x > 1.0))
        throw DomainError("stieltjes_jacobi: the series form needs x > 1");
    const double c = 2.0 * alpha + alpha1 + alpha2 + 2.0;
    const double z = 1.0 / x;
    ComplexVal num = gauss_2f1(alpha + 1.0, alpha + alpha1 + 2.0, c + 1.0, z);
    ComplexVal den = gauss_2f1(alpha, alpha + alpha1 + 1.0, c, z);
    return z + (alpha + alpha1 + 1.0) / c * z * z * (num / den).real();
}

double semicircle_law(double y)
{
    return std::abs(y) < 2.0 ? std::sqrt(4.0 - y * y) / (2.0 * M_PI) : 0.0;
}

double weak_disorder_law(double alpha, double kappa, double y)
{
    const double end = 4.0 * alpha / kappa;
    return (y > 0.0 && y < end) ? 1.0 / (M_PI * std::sqrt(y * (end - y))) : 0.0;
}

} // namespace htrmt
