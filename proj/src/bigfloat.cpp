#include "htrmt/bigfloat.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace htrmt {

namespace {

constexpr mpfr_rnd_t R = MPFR_RNDN;

mpfr_prec_t wider(const BigFloat& a, const BigFloat& b)
{
    return std::max(a.prec(), b.prec());
}

} // namespace

BigFloat::BigFloat(mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double v, mpfr_prec_t bits)
{
    mpfr_init2(v_, std::max<mpfr_prec_t>(bits, 53));
    mpfr_set_d(v_, v, R);
}

BigFloat::BigFloat(const BigFloat& o)
{
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, R);
}

BigFloat::BigFloat(BigFloat&& o) noexcept
{
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o)
{
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, R);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept
{
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat()
{
    mpfr_clear(v_);
}

long BigFloat::exponent() const
{
    if (mpfr_zero_p(v_))
        return std::numeric_limits<long>::min() / 4;
    return mpfr_get_exp(v_);
}

std::string BigFloat::str(int digits) const
{
    std::vector<char> buf(static_cast<size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return std::string(buf.data());
}

BigFloat BigFloat::operator-() const
{
    BigFloat r(prec());
    mpfr_neg(r.v_, v_, R);
    return r;
}

#define HTRMT_COMPOUND(op, fn, fnd)                       \
    BigFloat& BigFloat::operator op(const BigFloat& o)    \
    {                                                     \
        if (o.prec() > prec())                            \
            mpfr_prec_round(v_, o.prec(), R);             \
        fn(v_, v_, o.v_, R);                              \
        return *this;                                     \
    }                                                     \
    BigFloat& BigFloat::operator op(double o)             \
    {                                                     \
        fnd(v_, v_, o, R);                                \
        return *this;                                     \
    }

HTRMT_COMPOUND(+=, mpfr_add, mpfr_add_d)
HTRMT_COMPOUND(-=, mpfr_sub, mpfr_sub_d)
HTRMT_COMPOUND(*=, mpfr_mul, mpfr_mul_d)
HTRMT_COMPOUND(/=, mpfr_div, mpfr_div_d)
#undef HTRMT_COMPOUND

#define HTRMT_BINARY(op, fn)                                  \
    BigFloat operator op(const BigFloat& a, const BigFloat& b) \
    {                                                         \
        BigFloat r(wider(a, b));                              \
        fn(r.v_, a.v_, b.v_, R);                              \
        return r;                                             \
    }

HTRMT_BINARY(+, mpfr_add)
HTRMT_BINARY(-, mpfr_sub)
HTRMT_BINARY(*, mpfr_mul)
HTRMT_BINARY(/, mpfr_div)
#undef HTRMT_BINARY

BigFloat operator-(double a, const BigFloat& b)
{
    BigFloat r(b.prec());
    mpfr_d_sub(r.v_, a, b.v_, R);
    return r;
}

BigFloat operator/(double a, const BigFloat& b)
{
    BigFloat r(b.prec());
    mpfr_d_div(r.v_, a, b.v_, R);
    return r;
}

#define HTRMT_UNARY(name, fn)                \
    BigFloat name(const BigFloat& x)         \
    {                                        \
        BigFloat r(x.prec());                \
        fn(r.get(), x.get(), R);             \
        return r;                            \
    }

HTRMT_UNARY(abs, mpfr_abs)
HTRMT_UNARY(sqrt, mpfr_sqrt)
HTRMT_UNARY(exp, mpfr_exp)
HTRMT_UNARY(log, mpfr_log)
HTRMT_UNARY(digamma, mpfr_digamma)
#undef HTRMT_UNARY

BigFloat pow(const BigFloat& x, const BigFloat& y)
{
    BigFloat r(wider(x, y));
    mpfr_pow(r.get(), x.get(), y.get(), R);
    return r;
}

BigFloat sin_pi(const BigFloat& x)
{
    // reduce to r = x - round(x) exactly, then sin(pi x) = (-1)^k sin(pi r)
    BigFloat k(x.prec()), r(x.prec());
    mpfr_rint(k.get(), x.get(), MPFR_RNDN);
    mpfr_sub(r.get(), x.get(), k.get(), R);
    BigFloat out = const_pi(x.prec()) * r;
    mpfr_sin(out.get(), out.get(), R);
    BigFloat half(x.prec());
    mpfr_div_2ui(half.get(), k.get(), 1, R);
    if (!mpfr_integer_p(half.get()))
        mpfr_neg(out.get(), out.get(), R);
    return out;
}

BigFloat cos_pi(const BigFloat& x)
{
    BigFloat k(x.prec()), r(x.prec());
    mpfr_rint(k.get(), x.get(), MPFR_RNDN);
    mpfr_sub(r.get(), x.get(), k.get(), R);
    BigFloat out = const_pi(x.prec()) * r;
    mpfr_cos(out.get(), out.get(), R);
    BigFloat half(x.prec());
    mpfr_div_2ui(half.get(), k.get(), 1, R);
    if (!mpfr_integer_p(half.get()))
        mpfr_neg(out.get(), out.get(), R);
    return out;
}

BigFloat lgamma(const BigFloat& x, int* sign)
{
    BigFloat r(x.prec());
    int s = 1;
    mpfr_lgamma(r.get(), &s, x.get(), R);
    if (sign)
        *sign = s;
    return r;
}

BigFloat const_pi(mpfr_prec_t bits)
{
    BigFloat r(bits);
    mpfr_const_pi(r.get(), R);
    return r;
}

BigFloat const_euler(mpfr_prec_t bits)
{
    BigFloat r(bits);
    mpfr_const_euler(r.get(), R);
    return r;
}

} // namespace htrmt
