#include "test_support.hpp"

#include "htrmt/errors.hpp"
#include "htrmt/recurrences.hpp"

#include <cmath>
#include <random>

using namespace htrmt;

namespace {

const MultiPoly A = MultiPoly::var(Param::alpha);
const MultiPoly A1 = MultiPoly::var(Param::alpha1);
const MultiPoly A2 = MultiPoly::var(Param::alpha2);

MultiPoly P(long c)
{
    return MultiPoly(c);
}

BasicParams<Rational> rparams(Family f, Rational a, std::optional<Rational> a1 = {},
                              std::optional<Rational> a2 = {})
{
    return {f, a, a1, a2};
}

Rational random_param(std::mt19937_64& g)
{
    // strictly inside (-1, 3)
    std::uniform_int_distribution<long> num(-9, 30);
    return Rational(num(g), 10) + Rational(1, 97);
}

template <class T>
BasicCovTable<T> full_table(const BasicParams<T>& p, int n)
{
    auto m = moments0(p, 2 * n);
    return covariances(p, n, n, m);
}

} // namespace

TEST_CASE("gaussian moments")
{
    auto p = symbolic_params(Family::gaussian);
    auto m = moments0(p, 8).m0;
    CHECK(m[0] == P(1));
    CHECK(m[2] == P(1) + A);
    CHECK(m[4] == P(3) + P(5) * A + P(2) * A * A);
    CHECK(m[6] == P(15) + P(32) * A + P(22) * A * A + P(5) * A * A * A);
    CHECK(m[8] == P(105) + P(260) * A + P(234) * A * A + P(93) * A * A * A + P(14) * A * A * A * A);
    for (int k = 1; k <= 7; k += 2)
        CHECK(m[k].is_zero());
    CHECK(moments0(p, 0).m0 == std::vector<MultiPoly>{P(1)});
}

TEST_CASE("gaussian covariances, diagonal and corrections")
{
    auto p = symbolic_params(Family::gaussian);
    const int n = 8;
    auto m0 = moments0(p, 2 * n + 4);
    auto& m = m0.m0;
    auto t = covariances(p, n, n, moments0(p, 2 * n));
    for (int q = 1; q <= n; ++q) {
        CHECK(t.mu[1][q] == P(q) * m[q - 1]);
        CHECK(t.mu[2][q] == P(q) * m[q]);
        CHECK(t.mu[3][q] == P(2) * (P(1) + A) * P(q) * m[q - 1] + P(q) * m[q + 1]);
        CHECK(t.mu[4][q] == (P(3) + P(2) * A) * P(q) * m[q] + P(q) * m[q + 2]);
        CHECK(t.mu[0][q].is_zero());
        CHECK(t.mu[q][0].is_zero());
    }
    auto d = covariance_diagonal(p, 6, m0);
    CHECK(d[0].is_zero());
    CHECK(d[2] == P(1));
    CHECK(d[4] == P(8) * (A + P(1)));
    CHECK(d[6] == P(3) * (A + P(1)) * (P(23) + P(16) * A));

    auto c = moments1(p, 6, m0, d).m1.value();
    CHECK(c[0].is_zero());
    CHECK(c[2] == -A);
    CHECK(c[4] == P(-5) * A * (A + P(1)));
    CHECK(c[6] == P(-2) * A * (P(16) + P(27) * A + P(11) * A * A));
    for (int k = 1; k <= 5; k += 2)
        CHECK(c[k].is_zero());
}

TEST_CASE("finite-N gaussian moments expand to the leading and correction terms")
{
    // m_2, m_4, m_6 at finite N with kappa = beta/2, evaluated at kappa = alpha/N
    auto finite = [](int k, const Rational& a, const Rational& N) {
        Rational kap = a / N, ik = Rational(1) / kap;
        if (k == 2)
            return kap * (N * N + N * (Rational(-1) + ik));
        if (k == 4)
            return kap * kap *
                   (Rational(2) * N.pow(3) + Rational(5) * N * N * (Rational(-1) + ik) +
                    N * (Rational(3) - Rational(5) * ik + Rational(3) * ik * ik));
        return kap.pow(3) * (Rational(5) * N.pow(4) + Rational(22) * N.pow(3) * (Rational(-1) + ik) +
                             N * N * (Rational(32) - Rational(54) * ik + Rational(32) * ik * ik) +
                             N * (Rational(-15) + Rational(32) * ik - Rational(32) * ik * ik + Rational(15) * ik.pow(3)));
    };
    auto p = symbolic_params(Family::gaussian);
    auto m0 = moments0(p, 6);
    auto d = covariance_diagonal(p, 6, m0);
    auto ms = moments1(p, 6, m0, d);
    const Rational N = Rational::parse("1000000000000");
    for (Rational a : {Rational(1, 3), Rational(2), Rational(7, 5)}) {
        for (int k : {2, 4, 6}) {
            Rational lead = ms.m0[k].eval({a, 0, 0}), corr = ms.m1->at(k).eval({a, 0, 0});
            Rational rest = finite(k, a, N) - lead * N - corr;
            CHECK(std::abs(rest.to_double()) < 1e-9);
        }
    }
}

TEST_CASE("laguerre moments and corrections")
{
    auto p = symbolic_params(Family::laguerre);
    auto m0 = moments0(p, 12);
    auto& m = m0.m0;
    MultiPoly c1 = P(1) + A1 + A;
    CHECK(m[1] == c1);
    CHECK(m[2] == c1 * (P(2) * A + P(2) + A1));
    CHECK(m[3] == c1 * (P(6) + P(11) * A + P(5) * A * A + P(5) * (P(1) + A) * A1 + A1 * A1));

    auto d = covariance_diagonal(p, 4, m0);
    auto c = moments1(p, 4, m0, d).m1.value();
    CHECK(c[0].is_zero());
    CHECK(c[1] == -A);
    CHECK(c[2] == -A * (P(4) + P(3) * A1 + P(4) * A));
    CHECK(c[3] == -A * ((P(17) + P(21) * A1 + P(6) * A1 * A1) + A * (P(33) + P(21) * A1) + P(16) * A * A));

    auto t = covariances(p, 3, 6, m0);
    for (int q = 1; q <= 6; ++q) {
        CHECK(t.mu[1][q] == P(q) * m[q]);
        CHECK(t.mu[2][q] == (P(2) + A1 + P(2) * A) * P(q) * m[q] + P(q) * m[q + 1]);
        CHECK(t.mu[3][q] == (P(3) + A1 + P(2) * A) * t.mu[2][q] + P(2) * A * (P(1) + A1 + A) * P(q) * m[q] +
                                P(q) * m[q + 2]);
    }
}

TEST_CASE("laguerre covariance diagonal at a numeric point")
{
    auto p = rparams(Family::laguerre, Rational(1), Rational(0));
    auto m0 = moments0(p, 8);
    auto d = covariance_diagonal(p, 8, m0);
    CHECK(d[0] == Rational(0));
    CHECK(d[1] == Rational(0));
    CHECK(d[2] == Rational(2));
    auto t = covariances(p, 4, 4, m0);
    CHECK(t.mu[1][1] == Rational(2));
}

TEST_CASE("density-of-states moments")
{
    auto w = dos_moments(3);
    CHECK(w[0] == P(1));
    CHECK(w[1] == P(2) * A);
    CHECK(w[2] == P(2) * A * (P(1) + P(3) * A));
    CHECK(w[3] == P(2) * A * (P(2) + P(9) * A + P(10) * A * A));
    auto v = moments0(symbolic_params(Family::antisym_squared), 3).m0;
    CHECK(v[1] == A);
    CHECK(v[2] == A * (P(2) * A + P(1)));
    CHECK(v[3] == A * (P(5) * A * A + P(6) * A + P(2)));
}

TEST_CASE("jacobi fixtures at random rational parameters")
{
    std::mt19937_64 g(1234);
    for (int i = 0; i < 20; ++i) {
        Rational a = random_param(g), a1 = random_param(g), a2 = random_param(g);
        auto p = rparams(Family::jacobi, a, a1, a2);
        auto m0 = moments0(p, 4);
        auto d = covariance_diagonal(p, 4, m0);
        auto c = moments1(p, 2, m0, d).m1.value();
        auto t = covariances(p, 1, 1, moments0(p, 2));
        Rational D = Rational(2) + Rational(2) * a + a1 + a2, E = D + Rational(1);
        Rational lead2 = (Rational(2) + a1) * (Rational(2) + a1 + a2) + a * (Rational(7) + Rational(3) * a1 + Rational(2) * a2) +
                         Rational(3) * a * a;
        CHECK(m0.m0[1] == (a1 + Rational(1) + a) / D);
        CHECK(m0.m0[2] == (Rational(1) + a + a1) * lead2 / (D * D * E));
        CHECK(c[1] == a * (a1 - a2) / (D * D));
        Rational Q1 = -(Rational(1) + a + a1) * D * E * (Rational(9) + Rational(7) * a + Rational(4) * a1 + Rational(2) * a2);
        Rational Q2 = lead2 * (Rational(13) + Rational(21) * a1 + Rational(2) * a2 + (Rational(6) * a1 - a2) * (a1 + a2) +
                               a * (Rational(23) + Rational(17) * a1 + Rational(3) * a2) + Rational(10) * a * a);
        CHECK(c[2] == a * (Q1 + Q2) / (D.pow(3) * E * E));
        CHECK(t.mu[1][1] == (Rational(1) + a + a1) * (Rational(1) + a + a2) * (Rational(2) + a + a1 + a2) / (D.pow(3) * E));
    }
    auto origin = moments0(rparams(Family::jacobi, 0, Rational(0), Rational(0)), 1);
    CHECK(origin.m0[1] == Rational(1, 2));
}

TEST_CASE("jacobi singular parameters are reported with their index")
{
    auto p = rparams(Family::jacobi, Rational(-1, 2), Rational(-1, 2), Rational(-1, 2));
    try {
        moments0(p, 3);
        FAIL("expected a singular-parameter error");
    } catch (const SingularParameterError& e) {
        CHECK(e.index() == 1);
    }
    CHECK_THROWS_AS(jacobi_moments_alt(3, p), SingularParameterError);
    BasicParams<double> pd{Family::jacobi, -0.5, -0.5, -0.5};
    CHECK_THROWS_AS(moments0(pd, 3), SingularParameterError);
}

TEST_CASE("usage errors")
{
    CHECK_THROWS_AS(moments0(rparams(Family::gaussian, 1, Rational(1)), 4), UsageError);
    CHECK_THROWS_AS(moments0(rparams(Family::gaussian, -1), 4), UsageError);
    CHECK_THROWS_AS(moments0(rparams(Family::laguerre, 1), 4), UsageError);
    CHECK_THROWS_AS(moments0(rparams(Family::laguerre, 1, Rational(-2)), 4), UsageError);
    CHECK_THROWS_AS(symbolic_params(Family::jacobi), UsageError);
    BasicParams<MultiPoly> pj{Family::jacobi, A, A1, A2};
    CHECK_THROWS_AS(moments0(pj, 2), UsageError);
    auto p = rparams(Family::laguerre, 1, Rational(0));
    CHECK_THROWS_AS(covariances(p, 3, 3, moments0(p, 5)), UsageError);
    CHECK_THROWS_AS(moments0(p, -1), UsageError);
    auto ps = rparams(Family::jacobi_symmetric, 1, Rational(1));
    CHECK_THROWS_AS(covariances(ps, 2, 2, moments0(ps, 4)), UsageError);
    EnsembleParams mixed{Family::laguerre, Scalar(Rational(1)), Scalar(1.0), std::nullopt};
    CHECK_THROWS_AS(moments0(mixed, 2), UsageError);
}

TEST_CASE("covariance symmetry and anti-diagonal sums")
{
    const int n = 8;
    auto check_table = [&](const auto& t) {
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q)
                CHECK(t.mu[p][q] == t.mu[q][p]);
        for (int s = 0; s <= n; ++s) {
            auto sum = t.mu[0][0];
            for (int p = 1; p < s; ++p)
                sum += t.mu[p][s - p];
            CHECK(sum == t.mu_diag[s]);
        }
    };
    check_table(full_table(symbolic_params(Family::gaussian), n));
    check_table(full_table(symbolic_params(Family::laguerre), n));
    check_table(full_table(symbolic_params(Family::antisym_squared), n));
    std::mt19937_64 g(99);
    for (int i = 0; i < 5; ++i) {
        check_table(full_table(rparams(Family::laguerre, random_param(g), random_param(g)), n));
        check_table(full_table(rparams(Family::jacobi, random_param(g), random_param(g), random_param(g)), n));
    }
}

TEST_CASE("gaussian parity")
{
    auto p = symbolic_params(Family::gaussian);
    auto m0 = moments0(p, 16);
    auto d = covariance_diagonal(p, 16, m0);
    auto ms = moments1(p, 16, m0, d);
    auto t = covariances(p, 8, 8, m0);
    for (int k = 1; k <= 15; k += 2) {
        CHECK(ms.m0[k].is_zero());
        CHECK(ms.m1->at(k).is_zero());
        CHECK(d[k].is_zero());
    }
    for (int a = 0; a <= 8; ++a)
        for (int b = 0; b <= 8; ++b)
            if ((a + b) % 2 == 1)
                CHECK(t.mu[a][b].is_zero());
}

TEST_CASE("reduced gaussian recurrence and divisibility")
{
    auto m = moments0(symbolic_params(Family::gaussian), 20).m0;
    auto alt = gaussian_moments_alt(20);
    REQUIRE(alt.size() == m.size());
    for (size_t k = 0; k < m.size(); ++k)
        CHECK(alt[k] == m[k]);
    auto red = gaussian_reduced_moments(10, A);
    CHECK(red[1] == P(1));
    CHECK(red[2] == P(3) + P(2) * A);
    for (int n = 1; n <= 10; ++n) {
        CHECK((P(1) + A) * red[n] == m[2 * n]);
        CHECK(m[2 * n].eval({Rational(-1), 0, 0}) == Rational(0));
    }
    CHECK(gaussian_moments_alt(0) == std::vector<MultiPoly>{P(1)});
    auto four = gaussian_moments_alt(4);
    CHECK(four[4] == (P(1) + A) * (P(3) + P(2) * A));
}

TEST_CASE("laguerre at alpha1 = -1 is the antisymmetric family")
{
    auto lag = symbolic_params(Family::laguerre);
    auto anti = symbolic_params(Family::antisym_squared);
    auto ml = moments0(lag, 10);
    auto ma = moments0(anti, 10);
    auto dl = covariance_diagonal(lag, 10, ml);
    auto da = covariance_diagonal(anti, 10, ma);
    auto cl = moments1(lag, 10, ml, dl).m1.value();
    auto ca = moments1(anti, 10, ma, da).m1.value();
    for (int k = 0; k <= 10; ++k) {
        CHECK(ml.m0[k].substitute(Param::alpha1, Rational(-1)) == ma.m0[k]);
        CHECK(dl[k].substitute(Param::alpha1, Rational(-1)) == da[k]);
        CHECK(cl[k].substitute(Param::alpha1, Rational(-1)) == ca[k]);
    }
    auto r = moments0(rparams(Family::laguerre, 2, Rational(-1)), 3).m0;
    CHECK(r[1] == Rational(2));
    CHECK(r[2] == Rational(10));
    CHECK(r[3] == Rational(68));
}

TEST_CASE("float runs agree with exact runs")
{
    std::mt19937_64 g(7);
    auto rel = [](double x, const Rational& e) {
        double ex = e.to_double();
        return std::abs(x - ex) / std::max(1e-300, std::abs(ex));
    };
    for (Family f : {Family::gaussian, Family::laguerre, Family::jacobi, Family::antisym_squared}) {
        for (int i = 0; i < 3; ++i) {
            Rational a = random_param(g) + Rational(1), a1 = random_param(g), a2 = random_param(g);
            BasicParams<Rational> pr{f, a, {}, {}};
            if (f == Family::laguerre || f == Family::jacobi)
                pr.alpha1 = a1;
            if (f == Family::jacobi)
                pr.alpha2 = a2;
            BasicParams<double> pd{f, a.to_double(), {}, {}};
            if (pr.alpha1)
                pd.alpha1 = pr.alpha1->to_double();
            if (pr.alpha2)
                pd.alpha2 = pr.alpha2->to_double();
            auto er = moments0(pr, 12);
            auto ed = moments0(pd, 12);
            auto dr = covariance_diagonal(pr, 12, er);
            auto dd = covariance_diagonal(pd, 12, ed);
            auto cr = moments1(pr, 12, er, dr).m1.value();
            auto cd = moments1(pd, 12, ed, dd).m1.value();
            for (int k = 0; k <= 12; ++k) {
                if (!er.m0[k].is_zero())
                    CHECK(rel(ed.m0[k], er.m0[k]) < 1e-10);
                if (!dr[k].is_zero())
                    CHECK(rel(dd[k], dr[k]) < 1e-10);
                if (!cr[k].is_zero())
                    CHECK(rel(cd[k], cr[k]) < 1e-10);
            }
        }
    }
}

TEST_CASE("rearranged jacobi recurrences")
{
    std::mt19937_64 g(31);
    auto z = jacobi_moments_alt(10, rparams(Family::jacobi, 0, Rational(0), Rational(0)));
    auto z0 = moments0(rparams(Family::jacobi, 0, Rational(0), Rational(0)), 10).m0;
    CHECK(z == z0);
    for (int i = 0; i < 10; ++i) {
        auto p = rparams(Family::jacobi, random_param(g), random_param(g), random_param(g));
        CHECK(jacobi_moments_alt(10, p) == moments0(p, 10).m0);
        auto s = rparams(Family::jacobi_symmetric, random_param(g), random_param(g));
        CHECK(jacobi_moments_alt(10, s) == moments0(s, 10).m0);
    }
    Rational a(3, 7);
    auto s0 = moments0(rparams(Family::jacobi_symmetric, a, Rational(0)), 2).m0;
    CHECK(s0[2] == (Rational(1) + a) / (Rational(3) + Rational(2) * a));
}

TEST_CASE("symmetric jacobi is the jacobi family on (-1, 1)")
{
    std::mt19937_64 g(8);
    for (int i = 0; i < 5; ++i) {
        Rational a = random_param(g), e = random_param(g);
        auto mj = moments0(rparams(Family::jacobi, a, e, e), 8).m0;
        auto ms = moments0(rparams(Family::jacobi_symmetric, a, e), 8).m0;
        for (int k = 0; k <= 8; ++k) {
            // E[(2x - 1)^k]
            Rational sum(0), binom(1);
            for (int j = 0; j <= k; ++j) {
                Rational term = binom * Rational(2).pow(j) * mj[j];
                sum += ((k - j) % 2 == 0) ? term : -term;
                binom = binom * Rational(k - j) / Rational(j + 1);
            }
            CHECK(sum == ms[k]);
        }
    }
}

TEST_CASE("symmetric jacobi scales to the gaussian moments")
{
    Rational alpha(3, 2);
    auto mg = moments0(rparams(Family::gaussian, alpha), 8).m0;
    double prev_err[5] = {1, 1, 1, 1, 1};
    for (long big : {1000L, 100000L}) {
        Rational a(big);
        auto ms = moments0(rparams(Family::jacobi_symmetric, alpha, a), 8).m0;
        for (int k = 1; k <= 4; ++k) {
            double ratio = ((Rational(2) * a).pow(k) * ms[2 * k] / mg[2 * k]).to_double();
            double err = std::abs(ratio - 1.0);
            CHECK(err < 50.0 / double(big));
            CHECK(err < prev_err[k]);
            prev_err[k] = err;
        }
    }
}

TEST_CASE("scalar front end dispatches on the ring")
{
    EnsembleParams p{Family::laguerre, Scalar(Rational(2)), Scalar(Rational(-1)), std::nullopt};
    auto m = moments0(p, 3);
    CHECK(std::get<Rational>(m.m0[3]) == Rational(68));
    auto d = covariance_diagonal(p, 3, m);
    auto c = moments1(p, 3, m, d);
    CHECK(std::get<Rational>(c.m1->at(1)) == Rational(-2));
    auto t = covariances(p, 1, 2, m);
    CHECK(std::get<Rational>(t.mu[1][2]) == Rational(2) * std::get<Rational>(m.m0[2]));
    EnsembleParams pf{Family::gaussian, Scalar(1.0), std::nullopt, std::nullopt};
    CHECK(std::get<double>(moments0(pf, 4).m0[4]) == 10.0);
}
