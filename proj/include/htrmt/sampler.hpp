#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace htrmt {

// Counter-based generator: output n of stream (key) is a fixed bijective mix
// of key and n, so any trial's stream can be reproduced in isolation.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);
    std::uint64_t next();
    double uniform();   // in (0, 1)
    double normal();
    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t mix64(std::uint64_t x);
// Stream key of trial t under a master seed.
std::uint64_t trial_stream(std::uint64_t master_seed, std::uint64_t trial);

double sample_gamma(double shape, Rng& rng);
// log of a gamma(shape, 1) variate, usable when the variate itself underflows
double sample_log_gamma(double shape, Rng& rng);

enum class ModelKind { antisym_beta, antisym_alpha, dyson };

std::string_view model_name(ModelKind k);
ModelKind parse_model(std::string_view s);

struct TridiagModel {
    ModelKind kind = ModelKind::antisym_alpha;
    long size = 0;        // matrix dimension; for the Dyson chain, N with dimension 2N - 1
    double alpha = 1.0;
    double kappa = 1.0;   // Dyson chain only: gamma scale 1/kappa
};

long dimension(const TridiagModel& m);
// beta used by the beta-ensemble model: 2 alpha / floor(n/2)
double model_beta(const TridiagModel& m);
// gamma shape of each superdiagonal entry (squared)
std::vector<double> superdiag_shapes(const TridiagModel& m);
void validate(const TridiagModel& m);

std::vector<double> build_tridiag(const TridiagModel& m, Rng& rng);
std::vector<double> build_tridiag(const TridiagModel& m, std::uint64_t seed);

// Eigenvalues of the real symmetric tridiagonal matrix with zero diagonal and
// off-diagonal b (the anti-symmetric matrix times -i), ascending. Throws
// ConvergenceError if an eigenvalue is not bracketed to 1e-12 times the
// Gershgorin radius within 200 bisection steps.
std::vector<double> spectrum(const std::vector<double>& b);
// Number of eigenvalues below t for each shift.
std::vector<long> sturm_counts(const std::vector<double>& b, const std::vector<double>& shifts);
// Number of exact zero modes: one per odd-sized block left by vanishing entries.
long zero_modes(const std::vector<double>& b);

struct BinCounts {
    std::vector<long> counts;
    long below = 0;
    long above = 0;
};

BinCounts sturm_histogram(const std::vector<double>& b, const std::vector<double>& edges);
// Histogram of the positive members x_j of the pairs +-x_j; edges start at 0.
BinCounts positive_histogram(const std::vector<double>& b, const std::vector<double>& edges);
BinCounts bin_values(const std::vector<double>& values, const std::vector<double>& edges);

enum class HistogramSide { full, positive };

struct Histogram {
    std::vector<double> edges;
    std::vector<std::uint64_t> counts;
    std::uint64_t below = 0;
    std::uint64_t above = 0;
    long trials = 0;
    HistogramSide side = HistogramSide::full;

    std::uint64_t total() const;
    // counts / (total * width)
    std::vector<double> density() const;
    std::vector<double> bin_mass() const;
    double out_of_range_mass() const;
};

Histogram run_trials(const TridiagModel& m, long trials, const std::vector<double>& edges, std::uint64_t seed,
                     HistogramSide side = HistogramSide::full, int threads = 1);

// Symmetric range mean +- 6 sqrt(second moment) of the limiting density. An
// even bin count is raised by one so that 0 is a bin centre.
std::vector<double> default_edges(const TridiagModel& m, int bins);

struct EmpiricalMoments {
    // squared-variable moments: v[l] from ((J^l)^2)_{11}, w[l] from tr(J^{2l}) / dim
    std::vector<double> v, v_err, w, w_err;
    // largest |tr(J^{2l+1})| seen over all trials
    double odd_trace_max = 0.0;
    long trials = 0;
};

EmpiricalMoments empirical_moments(const TridiagModel& m, int pmax, long trials, std::uint64_t seed,
                                   int threads = 1);

void to_json(nlohmann::json& j, const TridiagModel& m);
TridiagModel model_from_json(const nlohmann::json& j);

// CSV bin_left,bin_right,count,density_estimate behind a "# {json}" header.
void write_histogram_csv(std::ostream& os, const Histogram& h, const TridiagModel& m, std::uint64_t seed,
                         const nlohmann::json& extra = {});

} // namespace htrmt
