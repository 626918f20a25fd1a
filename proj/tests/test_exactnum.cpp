#include "test_support.hpp"

#include "htrmt/errors.hpp"
#include "htrmt/scalar.hpp"
#include "htrmt/serialize.hpp"

#include <cmath>
#include <random>

using namespace htrmt;

namespace {

Rational random_rational(std::mt19937_64& g)
{
    std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
    return Rational(num(g), den(g));
}

MultiPoly random_poly(std::mt19937_64& g)
{
    std::uniform_int_distribution<unsigned> nterms(0, 5), ex(0, 3);
    MultiPoly p;
    for (unsigned i = nterms(g); i > 0; --i)
        p += MultiPoly::monomial({ex(g), ex(g), ex(g)}, random_rational(g));
    return p;
}

const MultiPoly a = MultiPoly::var(Param::alpha);

} // namespace

TEST_CASE("rational arithmetic is exact")
{
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(6, -4).str() == "-3/2");
    CHECK(Rational(4, 2).str() == "2/1");
    CHECK(Rational(4, 2).pretty() == "2");
    CHECK(Rational(-1, 3).pow(3) == Rational(-1, 27));
    CHECK_THROWS_AS(Rational(1, 0), DomainError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);
}

TEST_CASE("rational parsing")
{
    CHECK(Rational::parse("3/9") == Rational(1, 3));
    CHECK(Rational::parse("-7/2") == Rational(-7, 2));
    CHECK(Rational::parse("0.5") == Rational(1, 2));
    CHECK(Rational::parse("-1.25") == Rational(-5, 4));
    CHECK(Rational::parse("3e-2") == Rational(3, 100));
    CHECK(Rational::parse("1.5E2") == Rational(150));
    CHECK(Rational::parse(" 12 ") == Rational(12));
    CHECK(Rational::parse(".25") == Rational(1, 4));
    CHECK_THROWS_AS(Rational::parse("1/0"), DomainError);
    CHECK_THROWS_AS(Rational::parse("abc"), UsageError);
    CHECK_THROWS_AS(Rational::parse("1/-2"), UsageError);
    CHECK_THROWS_AS(Rational::parse(""), UsageError);
    // big integers survive
    Rational big = Rational::parse("123456789012345678901234567891/2");
    CHECK(big.numerator() == "123456789012345678901234567891");
}

TEST_CASE("polynomial arithmetic")
{
    CHECK((MultiPoly(1) + a) * (MultiPoly(1) + a) == MultiPoly(1) + MultiPoly(2) * a + a * a);
    MultiPoly m4 = MultiPoly(3) + MultiPoly(5) * a + MultiPoly(2) * a * a;
    CHECK(m4.eval({Rational(1), 0, 0}) == Rational(10));
    CHECK(m4.eval({Rational(1, 2), 0, 0}) == Rational(6));
    CHECK(poly_eval(MultiPoly(1) + a, {Rational(2), 0, 0}) == Rational(3));
    CHECK(poly_eval(MultiPoly(), {Rational(7, 3), Rational(-1), Rational(5)}) == Rational(0));
    CHECK(m4.str() == "3 + 5*alpha + 2*alpha^2");
    CHECK(MultiPoly().str() == "0");
    CHECK((m4 - m4).terms().empty());
}

TEST_CASE("polynomial derivative")
{
    CHECK(poly_derivative(a * (MultiPoly(1) + a), Param::alpha) == MultiPoly(1) + MultiPoly(2) * a);
    CHECK(poly_derivative(MultiPoly(Rational(7, 3)), Param::alpha).is_zero());
    // alpha * m_2 of the antisymmetric Laguerre family: alpha^2 (2 alpha + 1)
    MultiPoly v2 = a * (MultiPoly(2) * a + MultiPoly(1));
    CHECK(poly_derivative(a * v2, Param::alpha) ==
          MultiPoly(2) * a * (MultiPoly(1) + MultiPoly(3) * a) * MultiPoly(1));
    MultiPoly x = MultiPoly::var(Param::alpha1), y = MultiPoly::var(Param::alpha2);
    CHECK(poly_derivative(x * x * y, Param::alpha1) == MultiPoly(2) * x * y);
    CHECK(poly_derivative(x * x * y, Param::alpha2) == x * x);
}

TEST_CASE("ring laws on random values")
{
    std::mt19937_64 g(20240611);
    for (int i = 0; i < 200; ++i) {
        Rational p = random_rational(g), q = random_rational(g), r = random_rational(g);
        CHECK((p + q) + r == p + (q + r));
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(p * q == q * p);
        CHECK(p + q == q + p);
        CHECK(p - p == Rational(0));
    }
    for (int i = 0; i < 100; ++i) {
        MultiPoly p = random_poly(g), q = random_poly(g), r = random_poly(g);
        CHECK((p + q) + r == p + (q + r));
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(p * q == q * p);
        CHECK((p - p).terms().empty());
        MultiPoly pq = p * q;
        for (const auto& [e, c] : pq.terms())
            CHECK(!c.is_zero());
    }
}

TEST_CASE("derivative agrees with finite differences")
{
    std::mt19937_64 g(77);
    for (int i = 0; i < 100; ++i) {
        MultiPoly p = random_poly(g);
        Point at{random_rational(g), random_rational(g), random_rational(g)};
        for (Param var : {Param::alpha, Param::alpha1, Param::alpha2}) {
            double x[3] = {at.alpha.to_double(), at.alpha1.to_double(), at.alpha2.to_double()};
            const int k = static_cast<int>(var);
            const double h = 1e-5 * std::max(1.0, std::abs(x[k]));
            double xp[3] = {x[0], x[1], x[2]}, xm[3] = {x[0], x[1], x[2]};
            xp[k] += h;
            xm[k] -= h;
            double fd = (p.eval(xp[0], xp[1], xp[2]) - p.eval(xm[0], xm[1], xm[2])) / (2 * h);
            double exact = poly_eval(poly_derivative(p, var), at).to_double();
            double scale = std::max(1.0, std::abs(exact));
            for (const auto& [e, c] : p.terms())
                scale = std::max(scale, std::abs(c.to_double()));
            CHECK(std::abs(fd - exact) <= 1e-8 * scale * 100);
        }
    }
}

TEST_CASE("scalar variants")
{
    Scalar x = Rational(1, 3), y = Rational(1, 6);
    CHECK(std::get<Rational>(ring_add(x, y)) == Rational(1, 2));
    Scalar pa = MultiPoly(1) + a;
    CHECK(std::get<MultiPoly>(ring_mul(pa, pa)) == MultiPoly(1) + MultiPoly(2) * a + a * a);
    CHECK(std::get<double>(ring_neg(Scalar(2.5))) == -2.5);
    CHECK_THROWS_AS(ring_add(x, Scalar(1.0)), UsageError);
    CHECK_THROWS_AS(ring_mul(pa, x), UsageError);
    CHECK(to_string(Scalar(0.1)) == "0.1");
    CHECK(to_string(x) == "1/3");
}

TEST_CASE("json round trip")
{
    std::mt19937_64 g(5);
    for (int i = 0; i < 50; ++i) {
        MultiPoly p = random_poly(g);
        json j = to_json(p);
        CHECK(multipoly_from_json(json::parse(j.dump())) == p);
        Rational r = random_rational(g);
        CHECK(rational_from_json(to_json(r)) == r);
    }
    json j = to_json(MultiPoly(3) + MultiPoly(Rational(5, 2)) * a);
    CHECK(j.dump() == R"([{"coeff":"3/1","exponents":[0,0,0]},{"coeff":"5/2","exponents":[1,0,0]}])");
    CHECK(std::get<double>(scalar_from_json(to_json(Scalar(0.1)))) == 0.1);
}
