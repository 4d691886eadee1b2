#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcgc/distributions.hpp"
#include "lcgc/selection.hpp"
#include "lcgc/simulation.hpp"

namespace lcgc {

enum class Procedure { normal, proposed, stepwise_normal, stepwise_proposed };

std::string to_string(Procedure procedure);
std::optional<Procedure> procedure_from_string(const std::string& name);

struct ExperimentConfig {
    SimModelSpec model;
    std::string model_name = "custom";  ///< "a".."d" or "custom" (reporting only)
    std::vector<int> sample_sizes;
    int trials = 2000;
    Procedure procedure = Procedure::proposed;
    bool known_lags = true;
    LagConfig true_lags{2, 2, 2, 1};
    std::uint64_t seed = 0;
    double fwer = 0.05;
    int max_lag_search = 6;
    int threads = 0;  ///< 0 = hardware concurrency

    void validate() const;
};

struct StatRecord {
    int trial;
    int T;
    std::string procedure;
    double f_value;
};

struct RateEntry {
    int T;
    std::string procedure;
    std::string metric;
    double rate;
    double stderr_;
};

/// Per-(T, procedure) summary of one Monte Carlo cell.
struct CellSummary {
    int T = 0;
    std::string procedure;
    int trials = 0;
    int failures = 0;
    double rejection_rate = 0.0;
    double ks_distance = 0.0;
    double seconds = 0.0;
};

struct ExperimentResult {
    std::vector<StatRecord> statistics;
    std::vector<RateEntry> rates;
    std::vector<CellSummary> cells;
};

/// sqrt(r (1 - r) / trials).
double rate_stderr(double rate, int trials);

/// Kolmogorov-Smirnov distance between the sample and the F(d1, d2) CDF.
double ks_distance(std::vector<double> sample, FParams params);

/// Sampling-distribution runs: per T, generate `trials` series, run the
/// configured test at the true (or BIC-searched) lags, record every F
/// statistic, the rejection rate at the 0.95 F quantile, and the KS
/// distance. Per-trial failures are recorded; more than 1% of trials
/// failing aborts.
ExperimentResult run_sampling_distribution(const ExperimentConfig& config);

/// Decision-accuracy runs: per T, run the configured stepwise procedure and
/// report interaction-decision accuracy against the model's ground truth,
/// plus raw detection rates for both terms.
ExperimentResult run_accuracy(const ExperimentConfig& config);

/// Power-curve runs: per T, run BOTH stepwise procedures on the same
/// generated series and report the interaction detection rate ("power") for
/// each.
ExperimentResult run_power_curve(const ExperimentConfig& config);

}  // namespace lcgc
