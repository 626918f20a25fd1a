#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace htrmt {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct CriterionReport {
    int id = 0;
    std::string title;
    bool pass = false;
    bool quick = false;
    double seconds = 0.0;
    double budget_seconds = 0.0;
    std::vector<CheckResult> checks;
};

struct VerifyOptions {
    bool quick = false;
    std::uint64_t seed = 20240611;   // Monte Carlo checks only
    int threads = 1;
};

constexpr int kCriteria = 9;

CriterionReport run_criterion(int id, const VerifyOptions& opt);
std::vector<CriterionReport> run_criteria(const std::vector<int>& ids, const VerifyOptions& opt);

// "criterion N PASS|FAIL title (k/m checks, t s)"
std::string summary_line(const CriterionReport& r);
nlohmann::json to_json(const CriterionReport& r);

} // namespace htrmt
