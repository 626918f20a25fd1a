#include "test_support.hpp"

#include "commands.hpp"
#include "run_config.hpp"

#include "htrmt/errors.hpp"
#include "htrmt/sampler.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace htrmt;
using namespace htrmt::cli;

namespace {

std::string run(const RunConfig& c, int expect = exit_ok)
{
    std::ostringstream out, log;
    CHECK(run_command(c, out, log) == expect);
    return out.str();
}

std::string first_line(const std::string& s)
{
    return s.substr(0, s.find('\n'));
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig base(const std::string& sub)
{
    RunConfig c;
    c.subcommand = sub;
    return c;
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string l;
    while (std::getline(is, l))
        out.push_back(l);
    return out;
}

} // namespace

TEST_CASE("every artifact header reconstructs its configuration")
{
    std::vector<RunConfig> configs;
    auto m = base("moments");
    m.family = "laguerre";
    m.alpha = "3/2";
    m.alpha1 = "-1/3";
    m.order = 4;
    m.correction = true;
    configs.push_back(m);
    auto cov = base("covariance");
    cov.family = "gaussian";
    cov.mode = "float";
    cov.alpha = "0.75";
    configs.push_back(cov);
    auto d = base("density");
    d.family = "jacobi";
    d.alpha = "0.5";
    d.alpha1 = "0.25";
    d.alpha2 = "1";
    d.points = 9;
    d.check_reflection = true;
    configs.push_back(d);
    auto s = base("sample");
    s.model = "dyson";
    s.alpha = "1";
    s.kappa = "2";
    s.size = 50;
    s.trials = 3;
    s.side = "positive";
    configs.push_back(s);
    auto y = base("dyson");
    y.alpha = "1.5";
    y.points = 4;
    configs.push_back(y);
    auto l = base("limits");
    l.family = "weak-disorder";
    l.alpha = "50";
    l.kappa = "40";
    configs.push_back(l);
    for (auto c : configs) {
        c.threads = 2;
        const auto text = run(c);
        auto back = run_config_from_header(first_line(text));
        INFO(c.subcommand);
        CHECK(back.threads == 1);
        back.threads = c.threads;
        CHECK(back == c);
    }
    auto v = base("verify");
    v.criteria = {2};
    const auto report = nlohmann::json::parse(run(v));
    CHECK(report.at("pass").get<bool>());
    CHECK(run_config_from_json(report.at("config")) == v);
    CHECK_THROWS_AS(run_config_from_header("x,rho"), UsageError);
}

TEST_CASE("exact moment tables")
{
    auto c = base("moments");
    c.family = "gaussian";
    c.order = 8;
    const auto rows = lines(run(c));
    REQUIRE(rows.size() == 11);
    CHECK(rows[1] == "p,m_p0");
    CHECK(rows[4] == "2,1 + alpha");
    CHECK(rows[6] == "4,3 + 5*alpha + 2*alpha^2");
    CHECK(rows[8] == "6,15 + 32*alpha + 22*alpha^2 + 5*alpha^3");
    CHECK(rows[10] == "8,105 + 260*alpha + 234*alpha^2 + 93*alpha^3 + 14*alpha^4");

    c.order = 0;
    const auto single = lines(run(c));
    REQUIRE(single.size() == 3);
    CHECK(single[2] == "0,1");

    auto l = base("moments");
    l.family = "laguerre";
    l.alpha1 = "-1";
    l.alpha = "2";
    l.order = 3;
    const auto text = run(l);
    CHECK(text == slurp(HTRMT_FIXTURE_DIR "/moments_laguerre_antisym.csv"));
    CHECK(text == run(l));
}

TEST_CASE("covariance tables")
{
    auto c = base("covariance");
    c.family = "gaussian";
    c.pmax = 4;
    c.qmax = 4;
    const auto rows = lines(run(c));
    // (2, 4) = 4 m_4 and the boundary row is zero
    CHECK(std::find(rows.begin(), rows.end(), "2,4,12 + 20*alpha + 8*alpha^2") != rows.end());
    for (int q = 0; q <= 4; ++q)
        CHECK(std::find(rows.begin(), rows.end(), "0," + std::to_string(q) + ",0") != rows.end());
    c.diagonal = true;
    const auto diag = lines(run(c));
    CHECK(diag[1] == "s,mu_tilde");
    CHECK(diag[4] == "2,1");
    CHECK(diag[6] == "4,8 + 8*alpha");
    CHECK(diag[8] == "6,69 + 117*alpha + 48*alpha^2");
}

TEST_CASE("parameter errors")
{
    std::ostringstream out, log;
    auto c = base("moments");
    c.family = "jacobi";
    c.alpha = c.alpha1 = c.alpha2 = "-1/2";
    c.order = 3;
    CHECK_THROWS_AS(run_command(c, out, log), SingularParameterError);
    c.mode = "float";
    c.alpha2.reset();
    CHECK_THROWS_AS(run_command(c, out, log), UsageError);
    auto g = base("moments");
    g.family = "gaussian";
    g.alpha1 = "1";
    CHECK_THROWS_AS(run_command(g, out, log), UsageError);
    auto r = base("density");
    r.family = "gaussian";
    r.alpha = "1";
    r.check_reflection = true;
    CHECK_THROWS_AS(run_command(r, out, log), UsageError);
    CHECK_THROWS_AS(run_command(base("plot"), out, log), UsageError);
    CHECK(parse_real("3/4") == 0.75);
    CHECK(parse_real("1.3") == 1.3);
    CHECK_THROWS_AS(parse_real("1.3x"), UsageError);
}

TEST_CASE("density artifact")
{
    auto c = base("density");
    c.family = "gaussian";
    c.alpha = "1";
    c.lo = -6;
    c.hi = 6;
    c.points = 600;
    const auto text = run(c);
    const auto head = nlohmann::json::parse(first_line(text).substr(2));
    CHECK(std::abs(head.at("quadrature_mass").get<double>() - 1.0) < 1e-6);
    CHECK(lines(text).size() == 602);
}

TEST_CASE("sample artifacts")
{
    auto c = base("sample");
    c.model = "antisym-alpha";
    c.alpha = "2.5";
    c.size = 5000;
    c.trials = 500;
    c.seed = 7;
    CHECK(run(c) == slurp(HTRMT_FIXTURE_DIR "/sample_antisym_alpha_seed7.csv"));

    // one trial equals binning the spectrum of the first trial's matrix
    auto one = base("sample");
    one.model = "antisym-beta";
    one.alpha = "1.5";
    one.size = 201;
    one.trials = 1;
    one.seed = 3;
    one.bins = 15;
    const auto rows = lines(run(one));
    TridiagModel m{ModelKind::antisym_beta, 201, 1.5};
    Rng rng(3, trial_stream(3, 0));
    const auto edges = default_edges(m, 15);
    const auto d = bin_values(spectrum(build_tridiag(m, rng)), edges);
    REQUIRE(rows.size() == d.counts.size() + 2);
    for (size_t i = 0; i < d.counts.size(); ++i) {
        std::istringstream is(rows[i + 2]);
        std::string left, right, count;
        std::getline(is, left, ',');
        std::getline(is, right, ',');
        std::getline(is, count, ',');
        CHECK(std::stol(count) == d.counts[i]);
    }

    auto dy = base("sample");
    dy.model = "dyson";
    dy.alpha = "1";
    dy.kappa = "1";
    dy.size = 30;
    dy.trials = 2;
    const auto head = nlohmann::json::parse(first_line(run(dy)).substr(2));
    CHECK(head.at("kappa").get<double>() == 1.0);
    CHECK(head.at("model").get<std::string>() == "dyson");
}

TEST_CASE("thread default comes from the environment")
{
    ::setenv("HTRMT_THREADS", "3", 1);
    CHECK(default_threads() == 3);
    ::setenv("HTRMT_THREADS", "zero", 1);
    CHECK(default_threads() == 1);
    ::unsetenv("HTRMT_THREADS");
    CHECK(default_threads() == 1);
}
