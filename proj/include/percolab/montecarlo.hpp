#pragma once

// Monte Carlo experiments under the product measure.
//
// Every site v of trial t gets a uniform U_v in [0,1) from a counter-based
// hash of (master_seed, t, v); the configuration at level p is {v : U_v < p}.
// Configurations at different p are therefore nested pathwise, and results
// never depend on the number of worker threads.

#include "percolab/engine.hpp"
#include "percolab/topology.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace percolab {

inline constexpr double kDefaultConfidence = 0.95;
/// Normal quantile for the default 95% Wilson interval.
inline constexpr double kWilsonZ95 = 1.959964;
inline constexpr double kDefaultPcResolution = 1.0 / 1048576.0; // 2^-20
inline constexpr const char* kGeneratorName = "splitmix64-counter";

/// Worker threads from PERCOLAB_THREADS (unset or 0: hardware concurrency).
unsigned worker_count();

class CouplingField {
public:
    CouplingField(std::uint64_t master_seed, std::uint64_t trial) noexcept;

    double uniform(SiteIndex site) const noexcept;
    Configuration config(const GraphShape& shape, double p) const;

private:
    std::uint64_t key_;
};

Configuration sample_config(const GraphShape& shape, double p, std::uint64_t seed);

/// How a grid value a is turned into an occupation probability.
enum class PForm {
    direct,  ///< p = a
    sharp,   ///< p = a (log n)^{1/ell} / n^{1+1/ell}
    gradual, ///< p = a / (n^{1+1/(ell+1)} m^{1/(ell+1)})
};

std::string pform_label(PForm f);
/// ParameterError unless the result lies in [0,1].
double p_of(PForm form, double a, const GraphShape& shape);

struct TrialBatch {
    GraphShape shape;
    double p = 0.0;
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 0;
};

struct Interval {
    double low = 0.0;
    double high = 1.0;
};

/// Two-sided normal quantile for the given confidence level.
double z_for_confidence(double confidence);
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence = kDefaultConfidence);

struct EstimateResult {
    double p = 0.0;
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double estimate = 0.0; ///< successes / trials
    double ci_low = 0.0;
    double ci_high = 1.0;
    double confidence = kDefaultConfidence;
    double mean_final_density = 0.0;
    std::uint64_t master_seed = 0;
    std::string generator = kGeneratorName;
};

EstimateResult estimate_span(const TrialBatch& batch, double confidence = kDefaultConfidence);

/// Infimum p at which the coupled configuration of one trial spans, to within
/// `resolution`; the returned value is on the spanning side. Returns 1 when
/// only the fully occupied configuration spans.
double pathwise_pc(const GraphShape& shape, std::uint64_t master_seed, std::uint64_t trial,
                   double resolution = kDefaultPcResolution);

struct PcEstimate {
    double alpha = 0.5;
    double quantile = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    double confidence = kDefaultConfidence;
    std::uint64_t trials = 0;
    std::uint64_t master_seed = 0;
    std::vector<double> samples; ///< pathwise critical values in trial order
};

/// Empirical alpha-quantile of pathwise_pc over trials 0..trials-1, with a
/// percentile-bootstrap interval.
PcEstimate estimate_pc(const GraphShape& shape, double alpha, std::uint64_t trials, std::uint64_t master_seed,
                       double resolution = kDefaultPcResolution, double confidence = kDefaultConfidence,
                       int bootstrap_resamples = 1000);

/// Type-1 empirical quantile of a sample (sorted internally).
double empirical_quantile(std::vector<double> sample, double alpha);

struct SweepRow {
    double a = 0.0;
    EstimateResult result;
};

/// One estimate per grid point, all sharing the seed (so the trials are coupled across a).
std::vector<SweepRow> sweep_transition(const GraphShape& shape, PForm form, const std::vector<double>& a_grid,
                                       std::uint64_t trials, std::uint64_t master_seed,
                                       double confidence = kDefaultConfidence);

struct DensitySummary {
    double p = 0.0;
    std::uint64_t trials = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double median = 0.0;
    double max = 0.0;
    double span_fraction = 0.0;
    std::uint64_t master_seed = 0;
    std::vector<double> samples;
};

DensitySummary estimate_density(const GraphShape& shape, double p, std::uint64_t trials, std::uint64_t master_seed);

} // namespace percolab
