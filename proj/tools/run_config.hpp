#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace htrmt::cli {

// Everything that determines a run's output. threads and output only affect
// how the run executes and are left out of the serialised header.
struct RunConfig {
    std::string subcommand;
    std::string family;   // moments, covariance, density, limits (law name)
    std::string model;    // sample
    // parameters exactly as typed: "p/q" rationals or decimals
    std::optional<std::string> alpha, alpha1, alpha2, kappa;
    std::string mode = "exact";   // exact | float
    std::string format = "csv";   // csv | json
    bool correction = false;
    bool diagonal = false;
    bool check_reflection = false;
    int order = 8;
    int pmax = 4;
    int qmax = 4;
    double lo = 0.0, hi = 0.0;
    int points = 0;
    bool log_grid = false;
    int bins = 61;
    long size = 1000;
    long trials = 100;
    std::uint64_t seed = 20240611;
    std::string side = "full";   // full | positive
    bool quick = false;
    std::vector<int> criteria;

    std::string output;
    int threads = 1;

    bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& c);
RunConfig run_config_from_json(const nlohmann::json& j);

// Reads the "# {json}" first line of an artifact and returns its "config".
RunConfig run_config_from_header(const std::string& first_line);

// HTRMT_THREADS if set and positive, else 1.
int default_threads();

double parse_real(const std::string& text);

} // namespace htrmt::cli
