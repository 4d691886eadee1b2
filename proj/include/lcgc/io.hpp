#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lcgc/harness.hpp"
#include "lcgc/timeseries.hpp"

namespace lcgc {

/// Shortest decimal with 17 significant digits; round-trips the exact double.
std::string format_double(double value);

/// Reads a `t,x,y` CSV (the t column is optional). Throws CsvError with the
/// offending line number on malformed input.
TimeSeriesPair read_series_csv(std::istream& in);

/// Writes header `t,x,y` and one row per sample, t starting at 1.
void write_series_csv(std::ostream& out, const TimeSeriesPair& pair);

/// `key = value` lines; '#' starts a comment; blank lines ignored.
/// Duplicate keys are an error.
std::map<std::string, std::string> parse_flat_config(std::istream& in);

/// Parsed contents of an experiment config file.
struct ExperimentFile {
    std::string model;        ///< a|b|c|d
    std::string procedure;    ///< normal|proposed|stepwise_normal|stepwise_proposed|power
    std::vector<int> sample_sizes;
    int trials = 0;
    std::uint64_t seed = 0;
    std::optional<int> delay;
    double fwer = 0.05;
    int max_lag_search = 6;
};

/// Validates the closed key set {model, procedure, sample_sizes, trials,
/// seed, delay, fwer, max_lag_search}; unknown keys raise ConfigError listing
/// them, as do missing required keys.
ExperimentFile parse_experiment_file(std::istream& in);

/// Resolves the file into a runnable config (preset lookup, delay override).
ExperimentConfig resolve_experiment(const ExperimentFile& file, int threads);

/// The resolved config in config-file syntax (one `key = value` per line).
std::string render_resolved_config(const ExperimentFile& file);

void write_statistics_csv(std::ostream& out, const std::vector<StatRecord>& statistics);

/// stderr column is left blank when a cell has fewer than 2 trials.
void write_rates_csv(std::ostream& out, const std::vector<RateEntry>& rates, int trials);

}  // namespace lcgc
