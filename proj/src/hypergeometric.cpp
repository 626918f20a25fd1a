#include "htrmt/errors.hpp"
#include "htrmt/quadrature.hpp"
#include "htrmt/specfun.hpp"
#include "series.hpp"

#include <cmath>

namespace htrmt {

namespace {

using detail::BigComplex;
using detail::SeriesSum;

constexpr double kMaxLostDouble = 20.0;   // 10^6 cancellation
constexpr int kGuardBits = 64;

BigComplex big(ComplexVal z, mpfr_prec_t bits)
{
    return {BigFloat(z.real(), bits), BigFloat(z.imag(), bits)};
}

ComplexVal small(const BigComplex& z)
{
    return {z.re.to_double(), z.im.to_double()};
}

// Sums the series in double and re-sums in MPFR with enough bits whenever
// the cancellation detector fires.
ComplexVal adaptive_series(const std::vector<ComplexVal>& a, const std::vector<ComplexVal>& b, ComplexVal z)
{
    SeriesSum<ComplexVal> d = detail::hyp_series(a, b, z, 53);
    double lost = d.lost_bits();
    if (lost <= kMaxLostDouble && std::isfinite(std::abs(d.value)))
        return d.value;
    mpfr_prec_t bits = static_cast<mpfr_prec_t>(std::min(lost, 1e5)) + 53 + kGuardBits;
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<BigComplex> ab, bb;
        for (auto v : a)
            ab.push_back(big(v, bits));
        for (auto v : b)
            bb.push_back(big(v, bits));
        auto r = detail::hyp_series(ab, bb, big(z, bits), static_cast<int>(bits));
        lost = r.lost_bits();
        if (bits - lost >= kGuardBits)
            return small(r.value);
        bits = static_cast<mpfr_prec_t>(std::max<double>(2.0 * bits, lost + 53 + kGuardBits));
    }
    throw PrecisionError("hypergeometric series: cancellation beyond the precision budget");
}

} // namespace

ComplexVal gauss_2f1(ComplexVal a, ComplexVal b, ComplexVal c, ComplexVal z)
{
    if (!(std::abs(z) < 1.0))
        throw DomainError("gauss_2f1: |z| >= 1 is outside the series domain");
    return adaptive_series({a, b}, {c}, z);
}

ComplexVal kummer_1f1(ComplexVal a, ComplexVal b, ComplexVal z)
{
    if (z.imag() == 0.0 && z.real() < 0.0) {
        // Kummer transform turns the alternating series into a positive one
        return std::exp(z) * adaptive_series({b - a}, {b}, -z);
    }
    return adaptive_series({a}, {b}, z);
}

ComplexVal parabolic_cylinder_Dix(double alpha, double x)
{
    if (!(alpha > 0.0))
        throw DomainError("parabolic_cylinder_Dix: alpha <= 0 needs a reflection formula");
    const double xa = std::abs(x);
    QuadOptions opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-14;

    // Contour: down the imaginary axis to -ix, then parallel to the real axis.
    // First leg, int_0^|x| y^{a-1} exp(y^2/2 - |x| y) dy.
    double j1 = 0.0;
    if (xa > 0.0) {
        if (alpha < 1.0) {
            auto g = [&](double v) {
                const double y = std::pow(v, 1.0 / alpha);
                return std::exp(0.5 * y * y - xa * y) / alpha;
            };
            j1 = integrate(g, 0.0, std::pow(xa, alpha), opt).value;
        } else {
            auto g = [&](double y) {
                return y <= 0.0 ? (alpha == 1.0 ? 1.0 : 0.0)
                                : std::exp((alpha - 1.0) * std::log(y) + 0.5 * y * y - xa * y);
            };
            j1 = integrate(g, 0.0, xa, opt).value;
        }
    }
    // Second leg, int_0^inf (u - i|x|)^{a-1} exp(-u^2/2) du.
    auto leg2 = [&](double u) {
        return std::exp((alpha - 1.0) * std::log(ComplexVal(u, -xa)) - 0.5 * u * u);
    };
    double upper = 10.0;
    while (std::abs(leg2(upper)) > 1e-30)
        upper *= 1.25;
    ComplexVal j2;
    if (alpha < 1.0 && xa < 1.0) {
        const double cut = std::min(1.0, upper);
        auto g = [&](double v) {
            const double u = std::pow(v, 1.0 / alpha);
            // u^{a-1} du = dv / alpha
            return leg2(u) * std::pow(u, 1.0 - alpha) / alpha;
        };
        j2 = integrate<ComplexVal>(g, 0.0, std::pow(cut, alpha), opt).value +
             integrate<ComplexVal>(leg2, cut, upper, opt).value;
    } else {
        j2 = integrate<ComplexVal>(leg2, 0.0, upper, opt).value;
    }
    const ComplexVal rot = std::polar(1.0, -0.5 * M_PI * alpha);   // (-i)^alpha
    const ComplexVal integral = rot * j1 + std::exp(-0.5 * xa * xa) * j2;
    ComplexVal d = std::exp(0.25 * xa * xa - std::lgamma(alpha)) * integral;
    return x < 0.0 ? std::conj(d) : d;
}

} // namespace htrmt
