#include "test_support.hpp"

#include "htrmt/errors.hpp"
#include "htrmt/recurrences.hpp"
#include "htrmt/sampler.hpp"
#include "htrmt/specfun.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

using namespace htrmt;

#ifndef HTRMT_FIXTURE_DIR
#define HTRMT_FIXTURE_DIR "tests/fixtures"
#endif

namespace {

std::vector<double> dense_spectrum(const std::vector<double>& b)
{
    const long n = long(b.size()) + 1;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (long i = 0; i + 1 < n; ++i)
        J(i, i + 1) = J(i + 1, i) = b[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(ev.begin(), ev.end());
    return ev;
}

double scale_of(const std::vector<double>& b)
{
    double r = 0;
    for (double e : b)
        r = std::max(r, e);
    return 2 * r;
}

} // namespace

TEST_CASE("generator is deterministic and uniform draws are interior")
{
    Rng a(7, 3), b(7, 3), c(7, 4);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next();
        CHECK(x == b.next());
        differs |= x != c.next();
    }
    CHECK(differs);
    Rng u(1);
    int outside = 0;
    for (int i = 0; i < 100000; ++i) {
        const double v = u.uniform();
        outside += !(v > 0.0 && v < 1.0);
    }
    CHECK(outside == 0);
}

TEST_CASE("gamma variates")
{
    for (double shape : {0.003, 0.3, 1.0, 2.5, 40.0}) {
        Rng rng(11, std::uint64_t(shape * 1000));
        const int n = 200000;
        double s = 0, s2 = 0;
        for (int i = 0; i < n; ++i) {
            const double g = sample_gamma(shape, rng);
            s += g;
            s2 += g * g;
        }
        const double mean = s / n, var = s2 / n - mean * mean;
        INFO("shape=" << shape);
        CHECK(std::abs(mean - shape) < 5 * std::sqrt(shape / n));
        CHECK(std::abs(var - shape) < 0.1 * shape + 1e-3);
    }
    {
        // one million draws: mean at shape 1/4 and variance at shape 2 within 3 sigma
        Rng rng(42, 1);
        const int n = 1000000;
        double s = 0;
        for (int i = 0; i < n; ++i)
            s += sample_gamma(0.25, rng);
        CHECK(std::abs(s / n - 0.25) < 3 * std::sqrt(0.25 / n));
        double t = 0, t2 = 0;
        for (int i = 0; i < n; ++i) {
            const double g = sample_gamma(2.0, rng);
            t += g;
            t2 += g * g;
        }
        const double mean = t / n, var = t2 / n - mean * mean;
        // fourth central moment of gamma(2) is 3k^2 + 6k = 24
        CHECK(std::abs(var - 2.0) < 3 * std::sqrt((24.0 - 4.0) / n));
    }
    // the log sampler: E log G = psi(a), Var log G = psi'(a)
    for (double shape : {1e-4, 0.05, 3.0}) {
        Rng rng(5);
        const int n = 100000;
        double s = 0;
        for (int i = 0; i < n; ++i)
            s += sample_log_gamma(shape, rng);
        INFO("shape=" << shape);
        CHECK(std::abs(s / n - digamma(shape)) < 5 * std::sqrt(trigamma(shape) / n));
    }
    Rng rng(1);
    CHECK_THROWS_AS(sample_gamma(0.0, rng), UsageError);
    CHECK_THROWS_AS(sample_gamma(-1.0, rng), UsageError);
}

TEST_CASE("golden first draw for seed 42")
{
    std::ifstream in(HTRMT_FIXTURE_DIR "/gamma_seed42.json");
    REQUIRE(in.good());
    const auto fx = nlohmann::json::parse(in);
    Rng rng(fx.at("seed").get<std::uint64_t>());
    const double draw = sample_gamma(fx.at("shape").get<double>(), rng);
    CHECK(draw == fx.at("first_draw").get<double>());
}

TEST_CASE("model construction")
{
    // with the pair-count normalisation, n = 5 and alpha = 1 give beta = 1
    TridiagModel five{ModelKind::antisym_beta, 5, 1.0};
    CHECK(model_beta(five) == 1.0);
    CHECK(superdiag_shapes(five) == std::vector<double>{1.0, 0.75, 0.5, 0.25});
    CHECK(superdiag_shapes(TridiagModel{ModelKind::antisym_alpha, 5, 3.0}) == std::vector<double>(4, 3.0));
    TridiagModel beta{ModelKind::antisym_beta, 11, 1.5};
    auto shapes = superdiag_shapes(beta);
    REQUIRE(shapes.size() == 10);
    CHECK(model_beta(beta) == doctest::Approx(2 * 1.5 / 5));
    for (long j = 1; j <= 10; ++j)
        CHECK(shapes[j - 1] == doctest::Approx(0.6 * (11 - j) / 4));
    TridiagModel dyson{ModelKind::dyson, 6, 2.0, 3.0};
    CHECK(dimension(dyson) == 11);
    CHECK(build_tridiag(dyson, 1).size() == 10);
    CHECK_THROWS_AS(validate(TridiagModel{ModelKind::antisym_alpha, 1, 1.0}), UsageError);
    CHECK_THROWS_AS(validate(TridiagModel{ModelKind::dyson, 3, 1.0, 0.0}), UsageError);
    CHECK_THROWS_AS(parse_model("gue"), UsageError);
    // same seed, same matrix
    CHECK(build_tridiag(beta, 9) == build_tridiag(beta, 9));
}

TEST_CASE("small spectra in closed form")
{
    auto two = spectrum({1.7});
    CHECK(two[0] == doctest::Approx(-1.7).epsilon(1e-15));
    CHECK(two[1] == doctest::Approx(1.7).epsilon(1e-15));
    auto three = spectrum({1.0, 1.0});
    CHECK(three[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::abs(three[1]) < 1e-15);
    CHECK(three[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    // the zero mode of an odd matrix lands between 0- and 0+
    const auto b = build_tridiag(TridiagModel{ModelKind::antisym_alpha, 11, 1.0}, 4);
    const auto h = sturm_histogram(b, {-1e6, -1e-9, 1e-9, 1e6});
    CHECK(h.counts[1] >= 1);
    CHECK(h.counts[0] + h.counts[1] + h.counts[2] + h.below + h.above == 11);

    const auto e = default_edges(TridiagModel{ModelKind::antisym_alpha, 11, 1.0}, 8);
    CHECK(e.size() == 10);
    CHECK(e[4] < 0.0);
    CHECK(e[5] > 0.0);
}

TEST_CASE("a single trial equals binning one spectrum")
{
    TridiagModel m{ModelKind::antisym_beta, 151, 2.0};
    const auto edges = default_edges(m, 21);
    const auto h = run_trials(m, 1, edges, 99);
    Rng rng(99, trial_stream(99, 0));
    const auto d = bin_values(spectrum(build_tridiag(m, rng)), edges);
    for (size_t i = 0; i < d.counts.size(); ++i)
        CHECK(h.counts[i] == std::uint64_t(d.counts[i]));
    CHECK(h.below == std::uint64_t(d.below));
    CHECK(h.above == std::uint64_t(d.above));
}

TEST_CASE("bisection spectrum matches a dense eigensolver")
{
    std::uint64_t seed = 100;
    for (auto kind : {ModelKind::antisym_beta, ModelKind::antisym_alpha, ModelKind::dyson}) {
        for (long n : {2L, 9L, 50L, 201L}) {
            TridiagModel m{kind, n, 1.7, 0.8};
            const auto b = build_tridiag(m, ++seed);
            const auto ev = spectrum(b);
            const auto ref = dense_spectrum(b);
            const double R = scale_of(b);
            REQUIRE(ev.size() == ref.size());
            double worst = 0;
            for (size_t i = 0; i < ev.size(); ++i)
                worst = std::max(worst, std::abs(ev[i] - ref[i]));
            INFO(model_name(kind) << " n=" << n);
            CHECK(worst < 1e-10 * R);
            CHECK(std::is_sorted(ev.begin(), ev.end()));
        }
    }
}

TEST_CASE("spectrum pairs as +-x with a zero mode for odd size")
{
    for (long n : {40L, 41L, 301L}) {
        const auto b = build_tridiag(TridiagModel{ModelKind::antisym_alpha, n, 0.9}, std::uint64_t(n));
        const auto ev = spectrum(b);
        const double R = scale_of(b);
        for (size_t i = 0; i < ev.size(); ++i)
            CHECK(std::abs(ev[i] + ev[ev.size() - 1 - i]) < 1e-12 * std::max(1.0, R));
        if (n % 2)
            CHECK(std::abs(ev[n / 2]) < 1e-12 * std::max(1.0, R));
        CHECK(zero_modes(b) == n % 2);
    }
}

TEST_CASE("Sturm counts agree with binning the eigenvalues")
{
    for (auto kind : {ModelKind::antisym_beta, ModelKind::antisym_alpha, ModelKind::dyson}) {
        TridiagModel m{kind, 120, 2.2, 1.3};
        const auto b = build_tridiag(m, 77);
        const auto ev = spectrum(b);
        const auto edges = default_edges(m, 23);
        const auto s = sturm_histogram(b, edges);
        const auto d = bin_values(ev, edges);
        CHECK(s.counts == d.counts);
        CHECK(s.below == d.below);
        CHECK(s.above == d.above);
        long total = s.below + s.above;
        for (long c : s.counts)
            total += c;
        CHECK(total == dimension(m));

        std::vector<double> pe;
        for (int i = 0; i <= 15; ++i)
            pe.push_back(0.4 * i);
        std::vector<double> positive;
        for (double x : ev)
            if (x > 1e-9)
                positive.push_back(x);
        const auto p = positive_histogram(b, pe);
        const auto q = bin_values(positive, pe);
        CHECK(p.counts == q.counts);
        CHECK(p.above == q.above);
    }
}

TEST_CASE("vanishing entries split the matrix")
{
    // blocks of sizes 2, 3, 1, 2
    std::vector<double> b = {1.0, 0.0, 2.0, 0.5, 0.0, 0.0, 3.0};
    CHECK(zero_modes(b) == 2);
    const auto ev = spectrum(b);
    long zeros = 0;
    for (double x : ev)
        zeros += std::abs(x) < 1e-12;
    CHECK(zeros == 2);
    std::vector<double> pe = {0.0, 0.7, 1.3, 2.2, 2.8};
    std::vector<double> positive;
    for (double x : ev)
        if (x > 1e-12)
            positive.push_back(x);
    CHECK(positive_histogram(b, pe).counts == bin_values(positive, pe).counts);

    // tiny shapes at the far end of a large beta-ensemble matrix underflow to exact zeros
    TridiagModel m{ModelKind::antisym_beta, 2000, 0.5};
    const auto big = build_tridiag(m, 3);
    long exact_zero = 0;
    for (double e : big) {
        REQUIRE(std::isfinite(e));
        exact_zero += e == 0.0;
    }
    CHECK(exact_zero > 0);
    const auto h = positive_histogram(big, std::vector<double>{0.0, 1.0, 2.0, 4.0});
    long total = h.above;
    for (long c : h.counts)
        total += c;
    CHECK(total == (2000 - zero_modes(big)) / 2);
}

TEST_CASE("trial runs are deterministic across thread counts")
{
    TridiagModel m{ModelKind::antisym_alpha, 301, 1.2};
    const auto edges = default_edges(m, 30);
    const auto a = run_trials(m, 40, edges, 5, HistogramSide::full, 1);
    const auto b = run_trials(m, 40, edges, 5, HistogramSide::full, 3);
    CHECK(a.counts == b.counts);
    CHECK(a.below == b.below);
    CHECK(a.total() == 40u * 301u);
    const auto c = run_trials(m, 40, edges, 6, HistogramSide::full, 1);
    CHECK(a.counts != c.counts);
    std::vector<double> pe = {0, 1, 2, 3, 4, 5};
    const auto p = run_trials(m, 10, pe, 5, HistogramSide::positive, 2);
    CHECK(p.total() == 10u * 150u);
}

TEST_CASE("edge-started moments reproduce the recurrence")
{
    const double a = 1.5;
    TridiagModel m{ModelKind::antisym_alpha, 41, a};
    const auto e = empirical_moments(m, 4, 4000, 21, 2);
    BasicParams<double> p{Family::antisym_squared, a, {}, {}};
    const auto exact = moments0(p, 4).m0;
    CHECK(e.odd_trace_max == 0.0);
    CHECK(e.v[0] == 1.0);
    for (int l = 1; l <= 4; ++l) {
        INFO("l=" << l << " v=" << e.v[l] << " +- " << e.v_err[l] << " exact=" << exact[l]);
        CHECK(e.v_err[l] > 0);
        CHECK(std::abs(e.v[l] - exact[l]) < 4 * e.v_err[l]);
    }
    CHECK_THROWS_AS(empirical_moments(m, 13, 2, 1), UsageError);
}

TEST_CASE("trace moments equal spectral power sums")
{
    TridiagModel m{ModelKind::dyson, 30, 0.7, 2.0};
    const auto one = empirical_moments(m, 3, 1, 8, 1);
    Rng rng(8, trial_stream(8, 0));
    const auto b = build_tridiag(m, rng);
    const auto ev = spectrum(b);
    for (int l = 0; l <= 3; ++l) {
        double s = 0;
        for (double x : ev)
            s += std::pow(x, 2 * l);
        CHECK(one.w[l] == doctest::Approx(s / ev.size()).epsilon(1e-10));
    }
}

TEST_CASE("disordered chain at unit kappa matches the alpha ensemble")
{
    const double a = 1.3;
    TridiagModel dy{ModelKind::dyson, 1001, a, 1.0};
    TridiagModel as{ModelKind::antisym_alpha, 2001, a};
    const auto edges = default_edges(as, 40);
    const auto h1 = run_trials(dy, 200, edges, 31, HistogramSide::full, 2);
    const auto h2 = run_trials(as, 200, edges, 32, HistogramSide::full, 2);
    const auto p = h1.bin_mass(), q = h2.bin_mass();
    double l1 = 0;
    for (size_t i = 0; i < p.size(); ++i)
        l1 += std::abs(p[i] - q[i]);
    INFO("L1 = " << l1);
    CHECK(l1 < 0.02);
}

TEST_CASE("histogram CSV header round trip")
{
    TridiagModel m{ModelKind::dyson, 20, 2.5, 1.5};
    const auto h = run_trials(m, 3, default_edges(m, 8), 4);
    std::ostringstream os;
    write_histogram_csv(os, h, m, 4);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    REQUIRE(line.rfind("# ", 0) == 0);
    const auto head = nlohmann::json::parse(line.substr(2));
    const auto back = model_from_json(head);
    CHECK(back.kind == m.kind);
    CHECK(back.size == m.size);
    CHECK(back.alpha == m.alpha);
    CHECK(back.kappa == m.kappa);
    CHECK(head.at("seed").get<std::uint64_t>() == 4u);
    std::getline(is, line);
    CHECK(line == "bin_left,bin_right,count,density_estimate");
    int rows = 0;
    while (std::getline(is, line))
        ++rows;
    CHECK(rows == 9);
}
