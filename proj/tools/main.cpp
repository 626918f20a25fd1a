#include "commands.hpp"
#include "run_config.hpp"

#include "htrmt/errors.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace htrmt::cli;

namespace {

void add_params(CLI::App* sub, RunConfig& c, bool a1, bool a2, bool kappa)
{
    sub->add_option("--alpha", c.alpha, "alpha (decimal or p/q)");
    if (a1)
        sub->add_option("--alpha1", c.alpha1, "first exponent");
    if (a2)
        sub->add_option("--alpha2", c.alpha2, "second exponent");
    if (kappa)
        sub->add_option("--kappa", c.kappa, "disorder scale");
}

void add_grid(CLI::App* sub, RunConfig& c)
{
    sub->add_option("--lo", c.lo, "grid start");
    sub->add_option("--hi", c.hi, "grid end");
    sub->add_option("--points", c.points, "grid points")->check(CLI::PositiveNumber);
    sub->add_flag("--log-grid", c.log_grid, "geometric spacing");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"moments, densities and simulations of high-temperature beta ensembles"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig c;
    c.threads = default_threads();
    app.add_option("-o,--output", c.output, "write the artifact here instead of stdout");
    app.add_option("--threads", c.threads, "worker threads (default $HTRMT_THREADS or 1)")
        ->check(CLI::PositiveNumber);

    const std::vector<std::string> families = {"gaussian", "laguerre", "jacobi", "jacobi-symmetric",
                                               "antisym-squared"};
    for (const char* name : {"moments", "covariance"}) {
        auto* sub = app.add_subcommand(name, std::string(name) == "moments" ? "moment table" : "covariance table");
        sub->add_option("--family", c.family)->required()->check(CLI::IsMember(families));
        add_params(sub, c, true, true, false);
        sub->add_option("--mode", c.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
        sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        if (std::string(name) == "moments") {
            sub->add_option("--order", c.order)->check(CLI::NonNegativeNumber);
            sub->add_flag("--correction", c.correction, "include the 1/N correction m_{p,1}");
        } else {
            sub->add_option("--pmax", c.pmax)->check(CLI::NonNegativeNumber);
            sub->add_option("--qmax", c.qmax)->check(CLI::NonNegativeNumber);
            sub->add_flag("--diagonal", c.diagonal, "emit the anti-diagonal sums instead");
        }
    }

    auto* density = app.add_subcommand("density", "limiting density on a grid");
    density->add_option("--family", c.family)
        ->required()
        ->check(CLI::IsMember({"gaussian", "laguerre", "jacobi", "antisym", "antisym-squared", "dyson"}));
    add_params(density, c, true, true, false);
    add_grid(density, c);
    density->add_flag("--check-reflection", c.check_reflection, "jacobi: compare with the reflected density");

    auto* sample = app.add_subcommand("sample", "Monte Carlo eigenvalue histogram");
    sample->add_option("--model", c.model)
        ->required()
        ->check(CLI::IsMember({"antisym-beta", "antisym-alpha", "dyson"}));
    add_params(sample, c, false, false, true);
    sample->add_option("--size", c.size, "matrix size (chain length N for dyson)");
    sample->add_option("--trials", c.trials)->check(CLI::PositiveNumber);
    sample->add_option("--seed", c.seed);
    sample->add_option("--bins", c.bins)->check(CLI::PositiveNumber);
    sample->add_option("--side", c.side, "full or positive")->check(CLI::IsMember({"full", "positive"}));
    sample->add_option("--lo", c.lo, "first edge");
    sample->add_option("--hi", c.hi, "last edge");

    auto* dyson = app.add_subcommand("dyson", "chain density of states and its small-y law");
    add_params(dyson, c, false, false, false);
    add_grid(dyson, c);

    auto* limits = app.add_subcommand("limits", "compare a scaled density with its limit law");
    limits->add_option("--law", c.family)
        ->required()
        ->check(CLI::IsMember({"semicircle", "weak-disorder", "confluence"}));
    add_params(limits, c, true, true, true);

    auto* verify = app.add_subcommand("verify", "run the cross-validation suite");
    verify->add_option("--criteria", c.criteria, "subset of criteria")->check(CLI::Range(1, 9));
    verify->add_flag("--quick", c.quick, "reduced Monte Carlo sizes");
    verify->add_option("--seed", c.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }
    c.subcommand = app.get_subcommands().front()->get_name();

    try {
        if (c.output.empty())
            return run_command(c, std::cout, std::cerr);
        std::ofstream file(c.output);
        if (!file)
            throw htrmt::UsageError("cannot open " + c.output);
        const int code = run_command(c, file, std::cerr);
        file.flush();
        if (!file)
            throw htrmt::Error("failed writing " + c.output);
        return code;
    } catch (const htrmt::SingularParameterError& e) {
        std::cerr << "singular parameters: " << e.what() << " (index " << e.index() << ")\n";
        return exit_singular;
    } catch (const htrmt::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const htrmt::DomainError& e) {
        std::cerr << "parameter out of range: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
}
