#pragma once

// Uniform helpers so kernels can be written once for double and BigFloat.

#include "htrmt/bigfloat.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace htrmt {
double digamma(double x);
}

namespace htrmt::detail {

struct Ctx {
    mpfr_prec_t bits = 53;
};

template <class R> R num(double v, const Ctx& c);
template <> inline double num<double>(double v, const Ctx&) { return v; }
template <> inline BigFloat num<BigFloat>(double v, const Ctx& c) { return BigFloat(v, c.bits); }

template <class R> int working_bits(const Ctx& c);
template <> inline int working_bits<double>(const Ctx&) { return 53; }
template <> inline int working_bits<BigFloat>(const Ctx& c) { return static_cast<int>(c.bits); }

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double log2mag(double x)
{
    return x == 0.0 ? kNegInf : std::log2(std::abs(x));
}

inline double log2mag(const BigFloat& x)
{
    if (x.is_zero())
        return kNegInf;
    long e = 0;
    double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
    return static_cast<double>(e) + std::log2(std::abs(m));
}

inline double to_double(double x) { return x; }
inline double to_double(const BigFloat& x) { return x.to_double(); }

inline double sin_pi(double x)
{
    double k = std::nearbyint(x);
    double s = std::sin(M_PI * (x - k));
    return std::fmod(std::abs(k), 2.0) == 1.0 ? -s : s;
}

inline double cos_pi(double x)
{
    double k = std::nearbyint(x);
    double c = std::cos(M_PI * (x - k));
    return std::fmod(std::abs(k), 2.0) == 1.0 ? -c : c;
}

inline double lgamma(double x, int* sign)
{
    int s = 1;
    double r = ::lgamma_r(x, &s);
    if (sign)
        *sign = s;
    return r;
}

inline double pi_like(double) { return M_PI; }
inline BigFloat pi_like(const BigFloat& x) { return const_pi(x.prec()); }
inline double euler_like(double) { return 0.57721566490153286061; }
inline BigFloat euler_like(const BigFloat& x) { return const_euler(x.prec()); }

using std::abs;
using std::exp;
using std::log;
using std::sqrt;
using std::pow;
using htrmt::abs;
using htrmt::exp;
using htrmt::log;
using htrmt::sqrt;
using htrmt::pow;
using htrmt::sin_pi;
using htrmt::cos_pi;
using htrmt::lgamma;
using htrmt::digamma;

// Minimal complex type over BigFloat; std::complex is unspecified for
// non-builtin types.
struct BigComplex {
    BigFloat re, im;
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b)
    {
        BigFloat d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend BigComplex operator*(const BigComplex& a, double s) { return {a.re * s, a.im * s}; }
    friend BigComplex operator/(const BigComplex& a, double s) { return {a.re / s, a.im / s}; }
    BigComplex& operator+=(const BigComplex& o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

inline double log2mag(const std::complex<double>& z)
{
    return z == 0.0 ? kNegInf : std::log2(std::abs(z));
}

inline double log2mag(const BigComplex& z)
{
    double a = log2mag(z.re), b = log2mag(z.im);
    double m = std::max(a, b);
    if (m == kNegInf)
        return m;
    return m + 0.5 * std::log2(1.0 + std::exp2(2.0 * (std::min(a, b) - m)));
}

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const BigFloat& x) { return x.is_zero(); }
inline bool is_zero(const std::complex<double>& z) { return z == 0.0; }
inline bool is_zero(const BigComplex& z) { return z.is_zero(); }

// log sqrt(a^2 + b^2) without overflow
template <class R> R log_hypot(const R& a, const R& b)
{
    R x = abs(a), y = abs(b);
    if (x < y)
        std::swap(x, y);
    if (is_zero(x))
        return log(x);
    R q = y / x;
    return log(x) + log(1.0 + q * q) * 0.5;
}

} // namespace htrmt::detail
