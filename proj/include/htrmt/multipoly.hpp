#pragma once

#include "htrmt/rational.hpp"

#include <array>
#include <map>
#include <string>

namespace htrmt {

enum class Param { alpha = 0, alpha1 = 1, alpha2 = 2 };

const char* param_name(Param p);

using Exponents = std::array<unsigned, 3>;

struct Point {
    Rational alpha, alpha1, alpha2;
};

// Sparse polynomial in (alpha, alpha1, alpha2) with rational coefficients.
// Zero coefficients are never stored, so equality is map equality.
class MultiPoly {
public:
    using Terms = std::map<Exponents, Rational>;

    MultiPoly() = default;
    MultiPoly(long c) : MultiPoly(Rational(c)) {}
    MultiPoly(const Rational& c);

    static MultiPoly var(Param p);
    static MultiPoly monomial(const Exponents& e, const Rational& c);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    unsigned total_degree() const;
    unsigned degree_in(Param p) const;
    Rational coeff(const Exponents& e) const;

    Rational eval(const Point& at) const;
    double eval(double a, double a1, double a2) const;
    MultiPoly derivative(Param p) const;
    MultiPoly substitute(Param p, const Rational& value) const;

    // Human-readable, e.g. "3 + 5*alpha + 2*alpha^2".
    std::string str() const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

private:
    void add_term(const Exponents& e, const Rational& c);
    Terms terms_;
};

Rational poly_eval(const MultiPoly& p, const Point& at);
MultiPoly poly_derivative(const MultiPoly& p, Param var);

} // namespace htrmt
