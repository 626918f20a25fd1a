#include "htrmt/rational.hpp"

#include "htrmt/errors.hpp"

#include <cctype>

namespace htrmt {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole)
{
    std::string_view body = s;
    if (!body.empty() && (body[0] == '+' || body[0] == '-'))
        body.remove_prefix(1);
    if (!all_digits(body))
        throw UsageError("not a rational number: '" + std::string(whole) + "'");
    mpz_class z(std::string(body), 10);
    return (!s.empty() && s[0] == '-') ? mpz_class(-z) : z;
}

} // namespace

Rational::Rational(long num, long den)
{
    if (den == 0)
        throw DomainError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(const mpq_class& q) : v_(q)
{
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text)
{
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    if (s.empty())
        throw UsageError("empty rational literal");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(s.substr(0, slash), text);
        std::string_view ds = s.substr(slash + 1);
        if (!all_digits(ds))
            throw UsageError("not a rational number: '" + std::string(text) + "'");
        mpz_class den(std::string(ds), 10);
        if (den == 0)
            throw DomainError("rational with zero denominator: '" + std::string(text) + "'");
        mpq_class q(num, den);
        q.canonicalize();
        return Rational(q);
    }

    // decimal with optional exponent
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view es = s.substr(e + 1);
        mpz_class ez = parse_integer(es, text);
        if (!ez.fits_slong_p() || abs(ez) > 100000)
            throw UsageError("exponent out of range: '" + std::string(text) + "'");
        exp10 = ez.get_si();
        s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
            throw UsageError("not a rational number: '" + std::string(text) + "'");
        digits = std::string(ip) + std::string(fp);
        exp10 -= static_cast<long>(fp.size());
    } else {
        if (!all_digits(s))
            throw UsageError("not a rational number: '" + std::string(text) + "'");
        digits = std::string(s);
    }
    mpz_class mant(digits, 10);
    if (neg)
        mant = -mant;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    mpq_class q = exp10 >= 0 ? mpq_class(mant * p10) : mpq_class(mant, p10);
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const
{
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::pretty() const
{
    return is_integer() ? v_.get_num().get_str() : str();
}

Rational Rational::pow(unsigned k) const
{
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), k);
    return Rational(mpq_class(n, d));
}

Rational& Rational::operator+=(const Rational& o)
{
    v_ += o.v_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o)
{
    v_ -= o.v_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o)
{
    v_ *= o.v_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero())
        throw DomainError("rational division by zero");
    v_ /= o.v_;
    return *this;
}

} // namespace htrmt
