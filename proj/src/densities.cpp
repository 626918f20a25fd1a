#include "htrmt/errors.hpp"
#include "htrmt/specfun.hpp"
#include "series.hpp"

#include <array>
#include <cmath>

namespace htrmt {

namespace {

using detail::Ctx;
using detail::hyp_series;
using detail::log2mag;
using detail::num;

constexpr double kLn2 = 0.69314718055994530942;
constexpr int kGuardBits = 64;
constexpr double kEps = 1e-6;                // integer-alpha1 offset
constexpr mpfr_prec_t kEpsBits = 192;        // > 50 decimal digits
constexpr double kMaxLostDouble = 20.0;      // 10^6 cancellation

struct KOut {
    std::array<double, 2> v{};
    double lost = 0.0;
};

// Runs `kernel` in double, then in MPFR with growing precision until the
// reported cancellation leaves kGuardBits of accuracy.
template <class K> std::array<double, 2> run_adaptive(K&& kernel, double max_lost_double, mpfr_prec_t base_bits = 0)
{
    double lost = 0.0;
    if (base_bits == 0) {
        bool ok = false;
        try {
            KOut r = kernel(double{}, Ctx{53});
            ok = std::isfinite(r.v[0]) && std::isfinite(r.v[1]) && std::isfinite(r.lost);
            if (ok && r.lost <= max_lost_double)
                return r.v;
            lost = ok ? r.lost : 256.0;
        } catch (const ConvergenceError&) {
            lost = 256.0;
        }
        base_bits = 53;
    }
    mpfr_prec_t bits = std::max<mpfr_prec_t>(base_bits, static_cast<mpfr_prec_t>(lost) + 53 + kGuardBits);
    for (int attempt = 0; attempt < 10; ++attempt) {
        KOut r = kernel(BigFloat{}, Ctx{bits});
        if (std::isfinite(r.v[0]) && std::isfinite(r.v[1]) && bits - r.lost >= kGuardBits)
            return r.v;
        double need = std::isfinite(r.lost) ? r.lost + 53 + kGuardBits : 2.0 * bits;
        bits = static_cast<mpfr_prec_t>(std::max<double>(1.5 * bits, need));
        if (bits > 40000)
            break;
    }
    throw PrecisionError("density evaluation: cancellation beyond the precision budget");
}

template <class R> double l2(const R& x)
{
    return log2mag(x);
}

template <class R> double l2hyp(const R& a, const R& b)
{
    return detail::to_double(detail::log_hypot(a, b)) / kLn2;
}

// bits lost when terms of size 2^peak combine to 2^result
double cancellation(double peak, double result)
{
    if (peak == detail::kNegInf)
        return 0.0;
    if (result == detail::kNegInf)
        return 1e9;
    return std::max(0.0, peak - result);
}

bool near_integer(double v)
{
    return std::abs(v - std::nearbyint(v)) < 1e-7;
}

// ---------------------------------------------------------------- Gaussian

// A = sqrt(pi)/Gamma((1+a)/2) M((1-a)/2, 1/2, x^2/2),
// B = x sqrt(2 pi)/Gamma(a/2) M(1-a/2, 3/2, x^2/2), so that
// D_{-a}(ix) = 2^{-a/2} e^{-x^2/4} (A - iB).
template <class R> struct GaussParts {
    R a, b;
    double peak;   // log2 of the largest intermediate contribution
};

template <class R> GaussParts<R> gaussian_parts(double alpha, double x, const Ctx& c)
{
    using namespace detail;
    const int bits = working_bits<R>(c);
    R A = num<R>(alpha, c), X = num<R>(x, c);
    R z = X * X * 0.5;
    R pi = pi_like(A);
    auto m1 = hyp_series<R>({(1.0 - A) * 0.5}, {num<R>(0.5, c)}, z, bits);
    auto m2 = hyp_series<R>({1.0 - A * 0.5}, {num<R>(1.5, c)}, z, bits);
    R ca = sqrt(pi) * exp(-lgamma((A + 1.0) * 0.5, nullptr));
    R cb = X * sqrt(pi * 2.0) * exp(-lgamma(A * 0.5, nullptr));
    double peak = std::max(l2(ca) + m1.peak, l2(cb) + m2.peak);
    return {ca * m1.value, cb * m2.value, peak};
}

// ----------------------------------------------------------------- Laguerre

template <class R> KOut laguerre_kernel(double a1, double a, double x, const Ctx& c)
{
    using namespace detail;
    const int bits = working_bits<R>(c);
    R A1 = num<R>(a1, c), A = num<R>(a, c), X = num<R>(x, c);
    R pi = pi_like(A);
    auto f1 = hyp_series<R>({-A1 - A}, {-A1}, X, bits);
    auto f2 = hyp_series<R>({1.0 - A}, {A1 + 2.0}, X, bits);
    int s1 = 1, s2 = 1, s3 = 1;
    R lg_a1 = lgamma(A1 + 1.0, &s1);
    R lg_aa1 = lgamma(A + A1 + 1.0, &s2);
    R lg_2a1 = lgamma(A1 + 2.0, &s3);
    R lg_a = lgamma(A + 1.0, nullptr);
    R cu = exp(lg_a + lg_a1 - lg_aa1) * static_cast<double>(s1 * s2);
    R cv = -pi * A * exp((A1 + 1.0) * log(X) - lg_2a1) * static_cast<double>(s3);
    R cot = cos_pi(A1) / sin_pi(A1);
    R im = cv * f2.value;
    R re = cu * f1.value + cot * im;
    const double mag = l2hyp(re, im);
    const double peak = std::max({l2(cu) + f1.peak, l2(R(cot * cv)) + f2.peak, l2(cv) + f2.peak});
    R logrho = lg_a - lg_aa1 + A1 * log(X) + X - detail::log_hypot(re, im) * 2.0;
    return {{to_double(logrho), 0.0}, peak - mag};
}

double laguerre_at(double a1, double a, double x, mpfr_prec_t base_bits)
{
    auto k = [&](auto tag, const Ctx& c) { return laguerre_kernel<decltype(tag)>(a1, a, x, c); };
    if (x > 550.0 && base_bits == 0)
        base_bits = 53 + kGuardBits;
    return std::exp(run_adaptive(k, kMaxLostDouble, base_bits)[0]);
}

// ------------------------------------------------------------------- Jacobi

template <class R> KOut jacobi_kernel(double a1, double a2, double a, double x, const Ctx& c)
{
    using namespace detail;
    const int bits = working_bits<R>(c);
    R A1 = num<R>(a1, c), A2 = num<R>(a2, c), A = num<R>(a, c), X = num<R>(x, c);
    R pi = pi_like(A);
    R Y = 1.0 - X;
    R total = A + A1 + A2;
    auto fu = hyp_series<R>({A, -total - 1.0}, {-A1}, X, bits);
    auto fv = hyp_series<R>({1.0 - A, total + 2.0}, {A1 + 2.0}, X, bits);
    int s1 = 1, s2 = 1, s3 = 1;
    R lg_a = lgamma(A + 1.0, nullptr);
    R lg_t = lgamma(total + 2.0, nullptr);
    R lg_aa1 = lgamma(A + A1 + 1.0, &s2);
    R lg_aa2 = lgamma(A + A2 + 1.0, nullptr);
    R lg_a1 = lgamma(A1 + 1.0, &s1);
    R lg_2a1 = lgamma(A1 + 2.0, &s3);
    R cu = exp(lg_a + lg_a1 - lg_aa1) * static_cast<double>(s1 * s2);
    R cv = -pi * A * exp(lg_t - lg_aa2 - lg_2a1 + (A2 + 1.0) * log(Y) + (A1 + 1.0) * log(X)) *
           static_cast<double>(s3);
    R cot = cos_pi(A1) / sin_pi(A1);
    R im = cv * fv.value;
    R re = cu * fu.value + cot * im;
    const double mag = l2hyp(re, im);
    const double peak = std::max({l2(cu) + fu.peak, l2(R(cot * cv)) + fv.peak, l2(cv) + fv.peak});
    R logrho = lg_a + lg_t - lg_aa1 - lg_aa2 + A1 * log(X) + A2 * log(Y) - detail::log_hypot(re, im) * 2.0;
    return {{to_double(logrho), 0.0}, peak - mag};
}

double jacobi_at(double a1, double a2, double a, double x, mpfr_prec_t base_bits)
{
    auto k = [&](auto tag, const Ctx& c) { return jacobi_kernel<decltype(tag)>(a1, a2, a, x, c); };
    return std::exp(run_adaptive(k, kMaxLostDouble, base_bits)[0]);
}

// ------------------------------------------------------ anti-symmetric (sq.)

// Closed form of the alpha1 -> -1 limit of the confluent representation:
// |.|^2 = alpha^2 [(D - L F0)^2 + pi^2 F0^2] with F0 = M(1-a, 1, y),
// D = sum (2 H_n P_n - P'_n) y^n / n!^2 and L = 2 gamma + psi(a) + ln y.
// Returns log(y rho) when with_alpha, else log(y rho) + log(alpha).
template <class R> KOut antisym_kernel(double a, double log_y, bool with_alpha, const Ctx& c)
{
    using namespace detail;
    const int bits = working_bits<R>(c);
    R A = num<R>(a, c), LY = num<R>(log_y, c);
    R Y = exp(LY);
    R pi = pi_like(A);
    R L = euler_like(A) * 2.0 + digamma(A) + LY;
    R sh = 1.0 - A;
    R t = num<R>(1.0, c), dt = num<R>(0.0, c), h = num<R>(0.0, c);
    R f0 = t, d = dt;
    const double lL = std::max(l2(L), std::log2(M_PI));
    double peak_f = 0.0, peak_d = kNegInf;
    const double ash = std::abs(1.0 - a);
    for (long n = 0;; ++n) {
        if (n > 5000000)
            throw ConvergenceError("antisymmetric density series did not converge");
        const double dn = static_cast<double>(n);
        R fac = Y / ((dn + 1.0) * (dn + 1.0));
        R p = sh + dn;
        dt = (dt * p + t) * fac;
        t = t * p * fac;
        h += num<R>(1.0, c) / (dn + 1.0);
        R dterm = h * t * 2.0 - dt;
        f0 += t;
        d += dterm;
        const double lt = l2(t), ld = l2(dterm);
        peak_f = std::max({peak_f, lt, l2(f0)});
        peak_d = std::max({peak_d, ld, l2(d)});
        if (lt == kNegInf && l2(dt) == kNegInf)
            break;
        // tail control once the term ratio has turned below 1/2
        const double ratio = (ash + dn + 1.0) * to_double(Y) / ((dn + 2.0) * (dn + 2.0));
        if (dn + 1.0 > ash && ratio < 0.5) {
            const double scale = std::max(l2(f0) + lL, l2(d));
            if (std::max(lt + lL, ld) + 1.0 < scale - bits - 3)
                break;
        }
    }
    R re = d - L * f0;
    R im = pi * f0;
    const double mag = l2hyp(re, im);
    const double peak = std::max(peak_f + lL, peak_d);
    R out = Y - detail::log_hypot(re, im) * 2.0;
    if (with_alpha)
        out = out - log(A);
    return {{to_double(out), 0.0}, peak - mag};
}

double antisym_log_scaled(double a, double log_y, bool with_alpha, double max_lost)
{
    auto k = [&](auto tag, const Ctx& c) { return antisym_kernel<decltype(tag)>(a, log_y, with_alpha, c); };
    mpfr_prec_t base = log_y > 6.3 ? 53 + kGuardBits : 0;
    return run_adaptive(k, max_lost, base)[0];
}

void require_positive_alpha(double a, const char* who)
{
    if (!(a > 0.0) || !std::isfinite(a))
        throw DomainError(std::string(who) + ": alpha must be positive");
}

} // namespace

// ------------------------------------------------------------------- public

double density_gaussian(double alpha, double x)
{
    require_positive_alpha(alpha, "density_gaussian");
    if (!std::isfinite(x))
        return 0.0;
    const double xa = std::abs(x);
    auto k = [&](auto tag, const Ctx& c) {
        using R = decltype(tag);
        auto g = gaussian_parts<R>(alpha, xa, c);
        R A = num<R>(alpha, c), X = num<R>(xa, c);
        R logd = -A * kLn2 - X * X * 0.25 * 2.0 + detail::log_hypot(g.a, g.b) * 2.0;
        R out = -0.5 * std::log(2.0 * M_PI) - detail::lgamma(A + 1.0, nullptr) - logd;
        return KOut{{detail::to_double(out), 0.0}, g.peak - l2hyp(g.a, g.b)};
    };
    mpfr_prec_t base = xa * xa * 0.5 > 600.0 ? 53 + kGuardBits : 0;
    return std::exp(run_adaptive(k, kMaxLostDouble, base)[0]);
}

ComplexVal parabolic_cylinder_Dix_series(double alpha, double x)
{
    require_positive_alpha(alpha, "parabolic_cylinder_Dix_series");
    auto k = [&](auto tag, const Ctx& c) {
        using R = decltype(tag);
        auto g = gaussian_parts<R>(alpha, x, c);
        R A = num<R>(alpha, c), X = num<R>(x, c);
        R scale = detail::exp(-A * (0.5 * kLn2) - X * X * 0.25);
        R re = scale * g.a, im = -(scale * g.b);
        return KOut{{detail::to_double(re), detail::to_double(im)}, g.peak - l2hyp(g.a, g.b)};
    };
    auto v = run_adaptive(k, kMaxLostDouble, x * x * 0.5 > 600.0 ? 53 + kGuardBits : 0);
    return {v[0], v[1]};
}

ComplexVal gaussian_stieltjes(double alpha, double x)
{
    require_positive_alpha(alpha, "gaussian_stieltjes");
    auto k = [&](auto tag, const Ctx& c) {
        using R = decltype(tag);
        auto g0 = gaussian_parts<R>(alpha, x, c);
        auto g1 = gaussian_parts<R>(alpha + 1.0, x, c);
        // i 2^{-1/2} (A1 - i B1) / (A0 - i B0)
        R n = g0.a * g0.a + g0.b * g0.b;
        R p = g1.b * g0.a, q = g1.a * g0.b;
        R s = g1.a * g0.a, t = g1.b * g0.b;
        R re = (p - q) / (n * std::sqrt(2.0));
        R im = (s + t) / (n * std::sqrt(2.0));
        const double peak = std::max(g0.peak - l2hyp(g0.a, g0.b), 0.0) + (g1.peak - l2hyp(g1.a, g1.b));
        const double canc_re = cancellation(std::max(l2(p), l2(q)), l2(R(p - q)));
        const double canc_im = cancellation(std::max(l2(s), l2(t)), l2(R(s + t)));
        return KOut{{detail::to_double(re), detail::to_double(im)},
                    peak + std::max({canc_re, canc_im, 0.0})};
    };
    auto v = run_adaptive(k, kMaxLostDouble, x * x * 0.5 > 600.0 ? 53 + kGuardBits : 0);
    // the ratio continues from below the axis; report the upper boundary value
    return {v[0], -v[1]};
}

double density_laguerre(double alpha1, double alpha, double x)
{
    require_positive_alpha(alpha, "density_laguerre");
    if (!(alpha1 >= -1.0 - 1e-7))
        throw DomainError("density_laguerre: alpha1 < -1 gives a degenerate connection");
    if (!(x > 0.0) || !std::isfinite(x))
        return 0.0;
    if (near_integer(alpha1)) {
        const double k = std::nearbyint(alpha1);
        return 0.5 * (laguerre_at(k - kEps, alpha, x, kEpsBits) + laguerre_at(k + kEps, alpha, x, kEpsBits));
    }
    return laguerre_at(alpha1, alpha, x, 0);
}

double density_jacobi(double alpha1, double alpha2, double alpha, double x)
{
    require_positive_alpha(alpha, "density_jacobi");
    if (!(alpha1 > -1.0) || !(alpha2 > -1.0))
        throw DomainError("density_jacobi: alpha1, alpha2 must exceed -1");
    if (!(x > 0.0 && x < 1.0))
        return 0.0;
    // the series in x converge fastest on the near half; reflect otherwise
    if (x > 0.5)
        return density_jacobi(alpha2, alpha1, alpha, 1.0 - x);
    if (near_integer(alpha1)) {
        const double k = std::nearbyint(alpha1);
        return 0.5 * (jacobi_at(k - kEps, alpha2, alpha, x, kEpsBits) +
                      jacobi_at(k + kEps, alpha2, alpha, x, kEpsBits));
    }
    return jacobi_at(alpha1, alpha2, alpha, x, 0);
}

double antisym_squared_scaled(double alpha, double log_y)
{
    require_positive_alpha(alpha, "density_antisym");
    if (std::isnan(log_y))
        throw DomainError("density_antisym: log y is NaN");
    if (log_y == -INFINITY)
        return 0.0;
    return std::exp(antisym_log_scaled(alpha, log_y, true, kMaxLostDouble));
}

double density_antisym_squared(double alpha, double y)
{
    if (!(y > 0.0) || !std::isfinite(y))
        return 0.0;
    return antisym_squared_scaled(alpha, std::log(y)) / y;
}

double density_antisym(double alpha, double x)
{
    if (!(x > 0.0) || !std::isfinite(x))
        return 0.0;
    return 2.0 * antisym_squared_scaled(alpha, 2.0 * std::log(x)) / x;
}

double dyson_dos_scaled(double alpha, double log_y)
{
    require_positive_alpha(alpha, "dyson_dos");
    if (log_y == -INFINITY)
        return 0.0;
    // alpha * y * rho(y; alpha), differentiated in alpha
    auto g = [&](double a) { return std::exp(antisym_log_scaled(a, log_y, false, 8.0)); };
    const double h = std::min(1e-3 * std::max(1.0, alpha), 0.25 * alpha);
    if (!(alpha - h > 0.0) || h < 1e-12)
        throw PrecisionError("dyson_dos: finite-difference step underflow");
    auto central = [&](double s) { return (g(alpha + s) - g(alpha - s)) / (2.0 * s); };
    const double d1 = central(h), d2 = central(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

double dyson_dos(double alpha, double y)
{
    if (!(y > 0.0) || !std::isfinite(y))
        return 0.0;
    return dyson_dos_scaled(alpha, std::log(y)) / y;
}

} // namespace htrmt
