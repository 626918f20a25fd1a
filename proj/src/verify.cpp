#include "htrmt/verify.hpp"

#include "htrmt/errors.hpp"
#include "htrmt/recurrences.hpp"
#include "htrmt/sampler.hpp"
#include "htrmt/specfun.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace htrmt {

namespace {

using Clock = std::chrono::steady_clock;

class Checks {
public:
    explicit Checks(std::vector<CheckResult>& out) : out_(out) {}

    void exact(const std::string& name, bool ok, const std::string& detail = {})
    {
        out_.push_back({name, ok, ok ? 1.0 : 0.0, 1.0, 0.0, detail});
    }

    // |measured - target| <= tol * max(|target|, floor)
    void relative(const std::string& name, double measured, double target, double tol, double floor = 0.0,
                  const std::string& detail = {})
    {
        const double scale = std::max(std::abs(target), floor);
        const double err = std::abs(measured - target) / (scale > 0 ? scale : 1.0);
        out_.push_back({name, std::isfinite(measured) && err <= tol, measured, target, tol, detail});
    }

    void below(const std::string& name, double measured, double bound, const std::string& detail = {})
    {
        out_.push_back({name, std::isfinite(measured) && measured < bound, measured, 0.0, bound, detail});
    }

private:
    std::vector<CheckResult>& out_;
};

const MultiPoly A = MultiPoly::var(Param::alpha);
const MultiPoly A1 = MultiPoly::var(Param::alpha1);
const MultiPoly A2 = MultiPoly::var(Param::alpha2);

MultiPoly P(long c)
{
    return MultiPoly(c);
}

std::string fmt(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---- 1: exact polynomial fixtures ------------------------------------------

void exact_fixtures(Checks& c)
{
    auto g = symbolic_params(Family::gaussian);
    auto gm0 = moments0(g, 16);
    const auto& m = gm0.m0;
    c.exact("gaussian m2", m[2] == P(1) + A);
    c.exact("gaussian m4", m[4] == P(3) + P(5) * A + P(2) * A * A);
    c.exact("gaussian m6", m[6] == P(15) + P(32) * A + P(22) * A * A + P(5) * A * A * A);
    c.exact("gaussian m8",
            m[8] == P(105) + P(260) * A + P(234) * A * A + P(93) * A * A * A + P(14) * A * A * A * A);

    const int n = 8;
    auto t = covariances(g, 4, n, moments0(g, 2 * n));
    bool r1 = true, r2 = true, r3 = true, r4 = true;
    for (int q = 1; q <= n; ++q) {
        r1 = r1 && t.mu[1][q] == P(q) * m[q - 1];
        r2 = r2 && t.mu[2][q] == P(q) * m[q];
        r3 = r3 && t.mu[3][q] == P(2) * (P(1) + A) * P(q) * m[q - 1] + P(q) * m[q + 1];
        r4 = r4 && t.mu[4][q] == (P(3) + P(2) * A) * P(q) * m[q] + P(q) * m[q + 2];
    }
    c.exact("gaussian covariance row 1, q <= 8", r1);
    c.exact("gaussian covariance row 2, q <= 8", r2);
    c.exact("gaussian covariance row 3, q <= 8", r3);
    c.exact("gaussian covariance row 4, q <= 8", r4);

    auto d = covariance_diagonal(g, 6, gm0);
    c.exact("gaussian mu~2", d[2] == P(1));
    c.exact("gaussian mu~4", d[4] == P(8) * (A + P(1)));
    c.exact("gaussian mu~6", d[6] == P(3) * (A + P(1)) * (P(23) + P(16) * A));
    auto corr = moments1(g, 6, gm0, d).m1.value();
    c.exact("gaussian m2,1", corr[2] == -A);
    c.exact("gaussian m4,1", corr[4] == P(-5) * A * (A + P(1)));
    c.exact("gaussian m6,1", corr[6] == P(-2) * A * (P(16) + P(27) * A + P(11) * A * A));

    auto l = symbolic_params(Family::laguerre);
    auto lm0 = moments0(l, 12);
    const auto& lm = lm0.m0;
    const MultiPoly c1 = P(1) + A1 + A;
    c.exact("laguerre m1", lm[1] == c1);
    c.exact("laguerre m2", lm[2] == c1 * (P(2) * A + P(2) + A1));
    c.exact("laguerre m3", lm[3] == c1 * (P(6) + P(11) * A + P(5) * A * A + P(5) * (P(1) + A) * A1 + A1 * A1));

    auto lt = covariances(l, 3, n, lm0);
    bool l1 = true, l2 = true, l3 = true;
    for (int q = 1; q <= n; ++q) {
        l1 = l1 && lt.mu[1][q] == P(q) * lm[q];
        l2 = l2 && lt.mu[2][q] == (P(2) + A1 + P(2) * A) * P(q) * lm[q] + P(q) * lm[q + 1];
        l3 = l3 && lt.mu[3][q] == (P(3) + A1 + P(2) * A) * lt.mu[2][q] + P(2) * A * (P(1) + A1 + A) * P(q) * lm[q] +
                                      P(q) * lm[q + 2];
    }
    c.exact("laguerre covariance row 1, q <= 8", l1);
    c.exact("laguerre covariance row 2, q <= 8", l2);
    c.exact("laguerre covariance row 3, q <= 8", l3,
            "middle coefficient 2 alpha (1 + alpha1 + alpha); the printed 2 alpha (1 + alpha1 + 2 alpha) breaks "
            "mu(3,q) = mu(q,3)");

    auto ld = covariance_diagonal(l, 4, lm0);
    auto lc = moments1(l, 4, lm0, ld).m1.value();
    c.exact("laguerre m1,1", lc[1] == -A);
    c.exact("laguerre m2,1", lc[2] == -A * (P(4) + P(3) * A1 + P(4) * A));
    c.exact("laguerre m3,1",
            lc[3] == -A * ((P(17) + P(21) * A1 + P(6) * A1 * A1) + A * (P(33) + P(21) * A1) + P(16) * A * A));

    auto w = dos_moments(3);
    c.exact("dos w1", w[1] == P(2) * A);
    c.exact("dos w2", w[2] == P(2) * A * (P(1) + P(3) * A));
    c.exact("dos w3", w[3] == P(2) * A * (P(2) + P(9) * A + P(10) * A * A));
}

// ---- 2: Jacobi fixtures at random rational points --------------------------

Rational random_param(std::mt19937_64& g)
{
    std::uniform_int_distribution<long> num(-9, 30);
    return Rational(num(g), 10) + Rational(1, 97);
}

void jacobi_fixtures(Checks& c)
{
    std::mt19937_64 g(1234);
    int ok1 = 0, ok2 = 0, ok11 = 0, okmu = 0;
    const int points = 20;
    for (int i = 0; i < points; ++i) {
        const Rational a = random_param(g), a1 = random_param(g), a2 = random_param(g);
        BasicParams<Rational> p{Family::jacobi, a, a1, a2};
        auto m0 = moments0(p, 4);
        auto d = covariance_diagonal(p, 4, m0);
        auto corr = moments1(p, 2, m0, d).m1.value();
        auto t = covariances(p, 1, 1, moments0(p, 2));
        const Rational D = Rational(2) + Rational(2) * a + a1 + a2, E = D + Rational(1);
        const Rational lead2 = (Rational(2) + a1) * (Rational(2) + a1 + a2) +
                               a * (Rational(7) + Rational(3) * a1 + Rational(2) * a2) + Rational(3) * a * a;
        ok1 += m0.m0[1] == (a1 + Rational(1) + a) / D && corr[1] == -a * (a2 - a1) / (D * D);
        ok2 += m0.m0[2] == (Rational(1) + a + a1) * lead2 / (D * D * E);
        const Rational Q1 = -(Rational(1) + a + a1) * D * E * (Rational(9) + Rational(7) * a + Rational(4) * a1 + Rational(2) * a2);
        const Rational Q2 = lead2 * (Rational(13) + Rational(21) * a1 + Rational(2) * a2 + (Rational(6) * a1 - a2) * (a1 + a2) +
                                     a * (Rational(23) + Rational(17) * a1 + Rational(3) * a2) + Rational(10) * a * a);
        ok11 += corr[2] == a * (Q1 + Q2) / (D.pow(3) * E * E);
        okmu += t.mu[1][1] ==
                (Rational(1) + a + a1) * (Rational(1) + a + a2) * (Rational(2) + a + a1 + a2) / (D.pow(3) * E);
    }
    auto tally = [&](const std::string& name, int ok) {
        c.exact(name, ok == points, std::to_string(ok) + "/" + std::to_string(points) + " parameter triples");
    };
    tally("jacobi m1,0 and m1,1", ok1);
    tally("jacobi m2,0", ok2);
    tally("jacobi m2,1", ok11);
    tally("jacobi mu(1,1)", okmu);
}

// ---- 3: resolvent series against the recurrences ---------------------------

std::vector<double> exact_moments(Family f, Rational a, Rational a1, Rational a2, int order)
{
    BasicParams<Rational> p{f, a, {}, {}};
    if (f == Family::laguerre || f == Family::jacobi)
        p.alpha1 = a1;
    if (f == Family::jacobi)
        p.alpha2 = a2;
    auto m = moments0(p, order).m0;
    std::vector<double> out;
    for (const auto& v : m)
        out.push_back(v.to_double());
    return out;
}

void series_triangle(Checks& c)
{
    const int order = 8;
    for (Rational a : {Rational(1, 4), Rational(1), Rational(13, 10), Rational(7, 2), Rational(12)}) {
        const auto s = stieltjes_gaussian_series(a.to_double(), order);
        const auto m = exact_moments(Family::gaussian, a, 0, 0, 2 * order);
        double worst = 0;
        for (int p = 0; p <= order; ++p)
            worst = std::max(worst, std::abs(s[p] - m[2 * p]) / std::abs(m[2 * p]));
        c.below("gaussian resolvent series, alpha=" + a.pretty(), worst, 1e-10, "max relative error, orders <= 8");
    }
    const Rational sets[5][3] = {{Rational(3, 10), Rational(7, 10), Rational(1, 2)},
                                 {Rational(-2, 5), Rational(2), Rational(3, 2)},
                                 {Rational(0), Rational(0), Rational(1)},
                                 {Rational(5, 2), Rational(-1, 2), Rational(1, 5)},
                                 {Rational(1), Rational(4), Rational(6)}};
    for (const auto& s3 : sets) {
        const auto s = stieltjes_jacobi_series(s3[0].to_double(), s3[1].to_double(), s3[2].to_double(), order);
        const auto m = exact_moments(Family::jacobi, s3[2], s3[0], s3[1], order);
        double worst = 0;
        for (int p = 0; p <= order; ++p)
            worst = std::max(worst, std::abs(s[p] - m[p]) / std::abs(m[p]));
        c.below("jacobi resolvent series, (alpha1, alpha2, alpha)=(" + s3[0].pretty() + ", " + s3[1].pretty() +
                    ", " + s3[2].pretty() + ")",
                worst, 1e-10, "max relative error, orders <= 8");
    }
}

// ---- 4: quadrature moments of the densities --------------------------------

void density_moments(Checks& c)
{
    struct Case {
        DensityKind kind;
        Family family;
        Rational a, a1, a2;
    };
    const Case cases[] = {
        {DensityKind::gaussian, Family::gaussian, Rational(1, 2), 0, 0},
        {DensityKind::gaussian, Family::gaussian, Rational(13, 10), 0, 0},
        {DensityKind::gaussian, Family::gaussian, Rational(3), 0, 0},
        {DensityKind::laguerre, Family::laguerre, Rational(1), Rational(1, 2), 0},
        {DensityKind::laguerre, Family::laguerre, Rational(2), Rational(-1, 2), 0},
        {DensityKind::laguerre, Family::laguerre, Rational(7, 10), Rational(2), 0},
        {DensityKind::jacobi, Family::jacobi, Rational(1), Rational(1, 2), Rational(3, 2)},
        {DensityKind::jacobi, Family::jacobi, Rational(2), Rational(-1, 2), Rational(3, 10)},
        {DensityKind::jacobi, Family::jacobi, Rational(1, 2), Rational(2), Rational(1)},
        {DensityKind::antisym_squared, Family::antisym_squared, Rational(1, 2), 0, 0},
        {DensityKind::antisym_squared, Family::antisym_squared, Rational(3, 2), 0, 0},
        {DensityKind::antisym_squared, Family::antisym_squared, Rational(3), 0, 0},
    };
    for (const auto& k : cases) {
        DensitySpec s{k.kind, k.a.to_double(), k.a1.to_double(), k.a2.to_double()};
        const auto m = exact_moments(k.family, k.a, k.a1, k.a2, 4);
        double worst = 0;
        for (int p = 0; p <= 4; ++p) {
            const double q = density_moment(s, p);
            // odd Gaussian moments vanish; compare them on the unit scale
            worst = std::max(worst, std::abs(q - m[p]) / std::max(std::abs(m[p]), 1.0));
        }
        std::string name = std::string(density_kind_name(k.kind)) + " alpha=" + k.a.pretty();
        if (k.kind == DensityKind::laguerre || k.kind == DensityKind::jacobi)
            name += " alpha1=" + k.a1.pretty();
        if (k.kind == DensityKind::jacobi)
            name += " alpha2=" + k.a2.pretty();
        c.below(name, worst, 1e-5, "max relative error of moments p <= 4");
    }
}

// ---- 5: simulated histogram of the beta ensemble ---------------------------

void figure_histograms(Checks& c, const VerifyOptions& opt)
{
    const long size = opt.quick ? 1000 : 5000;
    const long trials = opt.quick ? 100 : 500;
    const double bound = opt.quick ? 0.08 : 0.03;
    const int bins = 60;
    for (double a : {0.5, 1.5, 2.5, 3.5}) {
        std::vector<double> edges(bins + 1);
        const double top = 6 * std::sqrt(a);
        for (int i = 0; i <= bins; ++i)
            edges[i] = top * i / bins;
        TridiagModel m{ModelKind::antisym_beta, size, a};
        const auto h = run_trials(m, trials, edges, opt.seed, HistogramSide::positive, opt.threads);
        const auto emp = h.bin_mass();
        DensitySpec s{DensityKind::antisym_squared, a};
        const auto exact = parallel_map(std::vector<double>(edges.begin(), edges.end() - 1), opt.threads,
                                        [&](double lo) {
                                            const double hi = lo + top / bins;
                                            return density_mass(s, lo * lo, hi * hi);
                                        });
        double l1 = 0, inside = 0;
        for (int i = 0; i < bins; ++i) {
            l1 += std::abs(emp[i] - exact[i]);
            inside += exact[i];
        }
        l1 += std::abs(h.out_of_range_mass() - (1 - inside));
        c.below("alpha=" + fmt(a) + " N=" + std::to_string(size) + " trials=" + std::to_string(trials), l1, bound,
                "L1 distance of 60-bin histogram on [0, 6 sqrt(alpha)] plus the out-of-range cell");
    }
}

// ---- 6: alpha ensemble moments ---------------------------------------------

void alpha_ensemble(Checks& c, const VerifyOptions& opt)
{
    const long dim = 2001, trials = 300;
    auto v = moments0(symbolic_params(Family::antisym_squared), 3).m0;
    auto w = dos_moments(3);
    for (double a : {0.5, 1.5, 3.0}) {
        TridiagModel m{ModelKind::antisym_alpha, dim, a};
        const auto e = empirical_moments(m, 3, trials, opt.seed, opt.threads);
        for (int l = 1; l <= 3; ++l) {
            const double wl = w[l].eval(a, 0, 0), vl = v[l].eval(a, 0, 0);
            c.below("alpha=" + fmt(a) + " w" + std::to_string(l), std::abs(e.w[l] - wl) / e.w_err[l], 3.0,
                    "|estimate - exact| in standard errors; estimate " + fmt(e.w[l]) + ", exact " + fmt(wl));
            c.below("alpha=" + fmt(a) + " v" + std::to_string(l), std::abs(e.v[l] - vl) / e.v_err[l], 3.0,
                    "|estimate - exact| in standard errors; estimate " + fmt(e.v[l]) + ", exact " + fmt(vl));
        }
        c.exact("alpha=" + fmt(a) + " odd traces vanish", e.odd_trace_max == 0.0);
    }
}

// ---- 7: small-y behaviour of the chain's density of states ------------------

void dyson_singularity(Checks& c)
{
    const double y = 1e-8, L = std::log(y);
    for (double a : {1.0, 1.5, 2.0}) {
        const double lhs = dyson_dos_scaled(a, L) * std::pow(-L, 3);
        const double target = 2 * trigamma(a);
        c.relative("alpha=" + fmt(a) + " y |ln y|^3 mu(y) at y=1e-8", lhs, target, 0.15, 0.0,
                   "ratio " + fmt(lhs / target));
    }
    for (int n = 1; n <= 6; ++n) {
        double partial = 0;
        for (int l = 1; l < n; ++l)
            partial += 1.0 / (double(l) * l);
        const double dyson = 2 * (M_PI * M_PI / 6 - partial);
        c.relative("alpha=" + std::to_string(n) + " 2 psi'(alpha) equals Dyson's constant", 2 * trigamma(n), dyson,
                   1e-12);
    }
}

// ---- 8: limit laws ---------------------------------------------------------

void limit_laws(Checks& c, const VerifyOptions& opt)
{
    const auto sc = limit_semicircle(400.0, opt.threads);
    c.below("semicircle, alpha=400", sc.sup_abs, 0.05, "sup-norm over " + std::to_string(sc.grid.size()) + " points");
    for (auto [a1, a] : {std::pair{0.5, 1.0}, std::pair{-0.5, 2.0}, std::pair{2.0, 0.7}}) {
        const auto r = limit_jacobi_laguerre(a1, a, 1e4, opt.threads);
        c.below("jacobi to laguerre, alpha1=" + fmt(a1) + " alpha=" + fmt(a) + " alpha2=1e4", r.sup_abs, 1e-3,
                "sup-norm on [0.1, 5]");
    }
    const auto wd = limit_weak_disorder(200.0, 200.0, opt.threads);
    c.below("weak disorder, alpha=kappa=200", wd.max_rel, 0.05, "max relative error on the interior support");
}

// ---- 9: property suites ----------------------------------------------------

template <class T>
bool table_consistent(const BasicParams<T>& p, int n)
{
    auto t = covariances(p, n, n, moments0(p, 2 * n));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            if (!(t.mu[i][j] == t.mu[j][i]))
                return false;
    for (int s = 0; s <= n; ++s) {
        auto sum = t.mu[0][0];
        for (int i = 1; i < s; ++i)
            sum += t.mu[i][s - i];
        if (!(sum == t.mu_diag[s]))
            return false;
    }
    return true;
}

void properties(Checks& c, const VerifyOptions& opt)
{
    const int n = 8;
    bool sym = table_consistent(symbolic_params(Family::gaussian), n) &&
               table_consistent(symbolic_params(Family::laguerre), n) &&
               table_consistent(symbolic_params(Family::antisym_squared), n);
    std::mt19937_64 g(99);
    for (int i = 0; i < 5; ++i) {
        sym = sym && table_consistent(BasicParams<Rational>{Family::laguerre, random_param(g), random_param(g), {}}, n);
        sym = sym && table_consistent(
                         BasicParams<Rational>{Family::jacobi, random_param(g), random_param(g), random_param(g)}, n);
    }
    c.exact("covariance symmetry and anti-diagonal sums", sym, "8x8 tables, symbolic and 10 rational points");

    auto gp = symbolic_params(Family::gaussian);
    auto gm = moments0(gp, 16);
    auto gd = covariance_diagonal(gp, 16, gm);
    auto gc = moments1(gp, 16, gm, gd);
    auto gt = covariances(gp, 8, 8, gm);
    bool parity = true;
    for (int k = 1; k <= 15; k += 2)
        parity = parity && gm.m0[k].is_zero() && gc.m1->at(k).is_zero() && gd[k].is_zero();
    for (int a = 0; a <= 8; ++a)
        for (int b = 0; b <= 8; ++b)
            if ((a + b) % 2)
                parity = parity && gt.mu[a][b].is_zero();
    c.exact("gaussian parity vanishing", parity);

    auto m20 = moments0(gp, 20).m0;
    c.exact("gaussian recurrence equals its rearranged form", gaussian_moments_alt(20) == m20, "orders <= 20");
    auto red = gaussian_reduced_moments(10, A);
    bool divisible = true;
    for (int k = 1; k <= 10; ++k)
        divisible = divisible && (P(1) + A) * red[k] == m20[2 * k];
    c.exact("(1 + alpha) divides the gaussian moments", divisible, "m_2 .. m_20");

    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> par(-0.9, 3.0), pos(0.2, 3.0), xs(0.02, 0.98);
    double worst = 0;
    for (int trial = 0; trial < 5; ++trial) {
        double a1 = par(rng), a2 = par(rng), al = pos(rng);
        if (std::abs(a1 - std::nearbyint(a1)) < 0.05)
            a1 += 0.1;
        const double a = al, b = -(al + a1 + a2 + 1.0), cc = -a1;
        for (int k = 0; k < 10; ++k) {
            const double x = xs(rng);
            const double u = gauss_2f1(a, b, cc, x).real();
            const double du = a * b / cc * gauss_2f1(a + 1, b + 1, cc + 1, x).real();
            const double f = gauss_2f1(a - cc + 1, b - cc + 1, 2 - cc, x).real();
            const double df = (a - cc + 1) * (b - cc + 1) / (2 - cc) * gauss_2f1(a - cc + 2, b - cc + 2, 3 - cc, x).real();
            const double v = std::pow(x, 1 - cc) * f;
            const double dv = (1 - cc) * std::pow(x, -cc) * f + std::pow(x, 1 - cc) * df;
            const double lhs = du * v - dv * u;
            const double rhs = (cc - 1) * std::pow(x, -cc) * std::pow(1 - x, cc - a - b - 1);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
    }
    c.below("Wronskian of the Frobenius pair", worst, 1e-8, "max relative error, 5 parameter triples x 10 points");

    // random samples of every model, dimension <= 500
    std::mt19937_64 pick(opt.seed);
    std::uniform_int_distribution<long> dims(2, 500);
    std::uniform_real_distribution<double> alphas(0.2, 4.0);
    double pairing = 0;
    int sturm_ok = 0;
    const int samples = 100;
    for (int t = 0; t < samples; ++t) {
        const auto kind = ModelKind(t % 3);
        const long d = dims(pick);
        TridiagModel m{kind, kind == ModelKind::dyson ? (d + 1) / 2 : d, alphas(pick), 1.0 + alphas(pick)};
        const auto b = build_tridiag(m, trial_stream(opt.seed, std::uint64_t(t)));
        const auto ev = spectrum(b);
        double R = 0;
        for (double e : b)
            R = std::max(R, 2 * e);
        for (size_t i = 0; i < ev.size(); ++i)
            pairing = std::max(pairing, std::abs(ev[i] + ev[ev.size() - 1 - i]) / std::max(1.0, R));
        const auto edges = default_edges(m, 41);
        const auto s = sturm_histogram(b, edges);
        const auto e = bin_values(ev, edges);
        sturm_ok += s.counts == e.counts && s.below == e.below && s.above == e.above;
    }
    c.below("spectrum pairs +-x", pairing, 1e-12, "max |lambda_k + lambda_{n+1-k}| / max(1, radius), 100 samples");
    c.exact("Sturm counts equal eigenvalue binning", sturm_ok == samples,
            std::to_string(sturm_ok) + "/" + std::to_string(samples) + " samples");

    TridiagModel m{ModelKind::antisym_alpha, 401, 1.5};
    const auto edges = default_edges(m, 30);
    const auto h1 = run_trials(m, 20, edges, opt.seed, HistogramSide::full, 1);
    const auto h2 = run_trials(m, 20, edges, opt.seed, HistogramSide::full, std::max(2, opt.threads));
    c.exact("same seed gives identical histograms", h1.counts == h2.counts && h1.below == h2.below &&
                                                        h1.above == h2.above,
            "1 thread vs several");
    Rng golden(42);
    c.exact("seed 42 first gamma draw", sample_gamma(2.5, golden) == 3.4226563522700424);
}

struct Criterion {
    const char* title;
    double budget;
    double quick_budget;
};

const Criterion kTable[kCriteria] = {
    {"exact polynomial fixtures", 1, 1},
    {"jacobi fixtures at random rational parameters", 1, 1},
    {"resolvent series versus recurrences", 10, 10},
    {"density moments versus recurrences", 60, 60},
    {"simulated beta-ensemble histograms", 600, 30},
    {"alpha-ensemble moments", 120, 120},
    {"small-y law of the chain density of states", 30, 30},
    {"limit laws", 120, 120},
    {"property suites", 120, 120},
};

} // namespace

CriterionReport run_criterion(int id, const VerifyOptions& opt)
{
    if (id < 1 || id > kCriteria)
        throw UsageError("criterion must be in 1.." + std::to_string(kCriteria));
    CriterionReport r;
    r.id = id;
    r.title = kTable[id - 1].title;
    r.quick = opt.quick;
    r.budget_seconds = opt.quick ? kTable[id - 1].quick_budget : kTable[id - 1].budget;
    Checks c(r.checks);
    const auto start = Clock::now();
    try {
        switch (id) {
        case 1: exact_fixtures(c); break;
        case 2: jacobi_fixtures(c); break;
        case 3: series_triangle(c); break;
        case 4: density_moments(c); break;
        case 5: figure_histograms(c, opt); break;
        case 6: alpha_ensemble(c, opt); break;
        case 7: dyson_singularity(c); break;
        case 8: limit_laws(c, opt); break;
        case 9: properties(c, opt); break;
        }
    } catch (const std::exception& e) {
        c.exact("completed without error", false, e.what());
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    c.below("runtime seconds", r.seconds, r.budget_seconds);
    r.pass = std::all_of(r.checks.begin(), r.checks.end(), [](const CheckResult& k) { return k.pass; });
    return r;
}

std::vector<CriterionReport> run_criteria(const std::vector<int>& ids, const VerifyOptions& opt)
{
    std::vector<CriterionReport> out;
    for (int id : ids)
        out.push_back(run_criterion(id, opt));
    return out;
}

std::string summary_line(const CriterionReport& r)
{
    const auto passed = std::count_if(r.checks.begin(), r.checks.end(), [](const CheckResult& k) { return k.pass; });
    char buf[256];
    std::snprintf(buf, sizeof buf, "criterion %d %s %s%s (%ld/%zu checks, %.2f s)", r.id, r.pass ? "PASS" : "FAIL",
                  r.title.c_str(), r.quick ? " [quick]" : "", long(passed), r.checks.size(), r.seconds);
    return buf;
}

nlohmann::json to_json(const CriterionReport& r)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& k : r.checks)
        checks.push_back({{"name", k.name},
                          {"pass", k.pass},
                          {"measured", k.measured},
                          {"target", k.target},
                          {"tolerance", k.tolerance},
                          {"detail", k.detail}});
    return {{"criterion", r.id},   {"title", r.title},     {"pass", r.pass},
            {"quick", r.quick},    {"seconds", r.seconds}, {"budget_seconds", r.budget_seconds},
            {"checks", checks}};
}

} // namespace htrmt
