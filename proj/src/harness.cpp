#include "lcgc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace lcgc {

std::string to_string(Procedure procedure) {
    switch (procedure) {
        case Procedure::normal: return "normal";
        case Procedure::proposed: return "proposed";
        case Procedure::stepwise_normal: return "stepwise_normal";
        case Procedure::stepwise_proposed: return "stepwise_proposed";
    }
    return "unknown";
}

std::optional<Procedure> procedure_from_string(const std::string& name) {
    if (name == "normal") return Procedure::normal;
    if (name == "proposed") return Procedure::proposed;
    if (name == "stepwise_normal") return Procedure::stepwise_normal;
    if (name == "stepwise_proposed") return Procedure::stepwise_proposed;
    return std::nullopt;
}

void ExperimentConfig::validate() const {
    model.validate();
    if (trials < 1) {
        throw InvalidArgumentError("trials must be >= 1");
    }
    if (sample_sizes.empty()) {
        throw InvalidArgumentError("at least one sample size is required");
    }
    const int min_T = true_lags.l_max() + true_lags.l_a + true_lags.l_c + 3;
    for (int T : sample_sizes) {
        if (T < min_T) {
            throw InvalidArgumentError("sample size " + std::to_string(T) +
                                       " is below the minimum fit size " + std::to_string(min_T));
        }
    }
}

double rate_stderr(double rate, int trials) {
    return std::sqrt(rate * (1.0 - rate) / trials);
}

double ks_distance(std::vector<double> sample, FParams params) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double c = f_cdf(std::max(sample[i], 0.0), params);
        d = std::max(d, std::max((i + 1) / n - c, c - i / n));
    }
    return d;
}

namespace {

/// Runs fn(i) for i = 0..n-1 across `threads` workers. Each index writes only
/// its own output slot, so results are identical for any thread count.
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads < 1) threads = 1;
    }
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

struct TrialOutcome {
    bool failed = false;
    std::string error;
    double f_value = std::numeric_limits<double>::quiet_NaN();
    bool rejected = false;
    bool interaction = false;
    bool noise = false;
    bool aborted = false;
};

void check_failure_budget(const std::vector<TrialOutcome>& outcomes, int T,
                          const std::string& procedure) {
    int failures = 0;
    std::string first_error;
    for (const auto& o : outcomes) {
        if (o.failed) {
            if (failures == 0) first_error = o.error;
            ++failures;
        }
    }
    if (failures * 100 > static_cast<int>(outcomes.size())) {
        throw Error("more than 1% of trials failed (T = " + std::to_string(T) + ", procedure = " +
                    procedure + ", failures = " + std::to_string(failures) + "/" +
                    std::to_string(outcomes.size()) + "; first error: " + first_error + ")");
    }
}

/// Lags actually used by a sampling-distribution trial.
LagConfig effective_lags(const ExperimentConfig& config, const TimeSeriesPair& pair,
                         Procedure procedure) {
    LagConfig lags = config.true_lags;
    if (config.known_lags) return lags;
    const BaseTerms base{lags.l_a, std::nullopt, std::nullopt};
    if (procedure == Procedure::proposed) {
        const ResidualSeries xi = residual_series(pair.y(), lags.l_b);
        if (auto s = search_lag(pair, &xi, Term::noise_corr, base, config.max_lag_search); s.lag) {
            lags.l_eta = *s.lag;
        }
        if (auto s = search_lag(pair, &xi, Term::interaction, base, config.max_lag_search); s.lag) {
            lags.l_c = *s.lag;
        }
    } else {
        if (auto s = search_lag(pair, nullptr, Term::interaction, base, config.max_lag_search);
            s.lag) {
            lags.l_c = *s.lag;
        }
    }
    return lags;
}

}  // namespace

ExperimentResult run_sampling_distribution(const ExperimentConfig& config) {
    config.validate();
    if (config.procedure != Procedure::normal && config.procedure != Procedure::proposed) {
        throw InvalidArgumentError("sampling-distribution runs need procedure normal or proposed");
    }
    const std::string proc_name = to_string(config.procedure);

    ExperimentResult result;
    for (std::size_t cell = 0; cell < config.sample_sizes.size(); ++cell) {
        const int T = config.sample_sizes[cell];
        const auto started = std::chrono::steady_clock::now();

        SimModelSpec spec = config.model;
        spec.T = T;

        std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(config.trials));
        parallel_for(config.trials, config.threads, [&](int trial) {
            auto& out = outcomes[static_cast<std::size_t>(trial)];
            try {
                const std::uint64_t trial_seed = Rng::derive_seed(
                    config.seed, cell * static_cast<std::size_t>(config.trials) + trial);
                const TimeSeriesPair pair = generate(spec, trial_seed);
                const LagConfig lags = effective_lags(config, pair, config.procedure);
                const CausalityTestResult r =
                    config.procedure == Procedure::normal
                        ? normal_gc_test(pair, lags.l_a, lags.l_c)
                        : proposed_gc_test(pair, lags);
                out.f_value = r.f_value;
                // each trial is judged at its own dof (they vary when lags
                // are searched)
                out.rejected = r.f_value > f_quantile(0.95, FParams{r.d1, r.d2});
            } catch (const Error& e) {
                out.failed = true;
                out.error = e.what();
            }
        });
        check_failure_budget(outcomes, T, proc_name);

        // Reference dof for the KS comparison: the known-lags models.
        const LagConfig lags = config.true_lags;
        const int p_extra = config.procedure == Procedure::proposed ? 1 : 0;
        const int l_max = config.procedure == Procedure::proposed
                              ? lags.l_max()
                              : std::max(lags.l_a, lags.l_c);
        const FParams params{lags.l_c, T - l_max - (lags.l_a + lags.l_c + p_extra)};

        std::vector<double> stats;
        stats.reserve(outcomes.size());
        int rejections = 0;
        int failures = 0;
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            const auto& o = outcomes[i];
            if (o.failed) {
                ++failures;
                continue;
            }
            stats.push_back(o.f_value);
            if (o.rejected) ++rejections;
            result.statistics.push_back(
                StatRecord{static_cast<int>(i), T, proc_name, o.f_value});
        }
        const int n_ok = static_cast<int>(stats.size());
        const double rate = n_ok > 0 ? static_cast<double>(rejections) / n_ok : 0.0;

        CellSummary summary;
        summary.T = T;
        summary.procedure = proc_name;
        summary.trials = n_ok;
        summary.failures = failures;
        summary.rejection_rate = rate;
        summary.ks_distance = n_ok > 0 ? ks_distance(stats, params) : 0.0;
        summary.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        result.cells.push_back(summary);

        result.rates.push_back(RateEntry{T, proc_name, "rejection", rate, rate_stderr(rate, n_ok)});
        result.rates.push_back(
            RateEntry{T, proc_name, "ks_distance", summary.ks_distance, 0.0});
    }
    return result;
}

namespace {

TrialOutcome run_stepwise_trial(const TimeSeriesPair& pair, const ExperimentConfig& config,
                                Procedure procedure) {
    TrialOutcome out;
    const StepwiseDecision d =
        procedure == Procedure::stepwise_proposed
            ? stepwise_decide(pair, config.true_lags.l_a, config.true_lags.l_b, config.fwer,
                              config.max_lag_search)
            : stepwise_decide_normal(pair, config.true_lags.l_a, config.fwer,
                                     config.max_lag_search);
    out.interaction = d.interaction_detected;
    out.noise = d.noise_corr_detected;
    out.aborted = d.aborted_for_collinearity;
    return out;
}

}  // namespace

ExperimentResult run_accuracy(const ExperimentConfig& config) {
    config.validate();
    if (config.procedure != Procedure::stepwise_normal &&
        config.procedure != Procedure::stepwise_proposed) {
        throw InvalidArgumentError("accuracy runs need a stepwise procedure");
    }
    const std::string proc_name = to_string(config.procedure);
    const bool truth_interaction = config.model.c1 != 0.0 || config.model.c2 != 0.0;
    const bool truth_noise = config.model.noise.rho != 0.0;

    ExperimentResult result;
    for (std::size_t cell = 0; cell < config.sample_sizes.size(); ++cell) {
        const int T = config.sample_sizes[cell];
        const auto started = std::chrono::steady_clock::now();

        SimModelSpec spec = config.model;
        spec.T = T;

        std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(config.trials));
        parallel_for(config.trials, config.threads, [&](int trial) {
            auto& out = outcomes[static_cast<std::size_t>(trial)];
            try {
                const std::uint64_t trial_seed = Rng::derive_seed(
                    config.seed, cell * static_cast<std::size_t>(config.trials) + trial);
                const TimeSeriesPair pair = generate(spec, trial_seed);
                out = run_stepwise_trial(pair, config, config.procedure);
            } catch (const Error& e) {
                out.failed = true;
                out.error = e.what();
            }
        });
        check_failure_budget(outcomes, T, proc_name);

        int ok = 0, inter_correct = 0, inter_detected = 0, noise_correct = 0, noise_detected = 0;
        int failures = 0;
        for (const auto& o : outcomes) {
            if (o.failed) {
                ++failures;
                continue;
            }
            ++ok;
            if (o.interaction == truth_interaction) ++inter_correct;
            if (o.interaction) ++inter_detected;
            if (o.noise == truth_noise) ++noise_correct;
            if (o.noise) ++noise_detected;
        }
        auto push_rate = [&](const std::string& metric, int count) {
            const double rate = ok > 0 ? static_cast<double>(count) / ok : 0.0;
            result.rates.push_back(RateEntry{T, proc_name, metric, rate, rate_stderr(rate, ok)});
        };
        push_rate("interaction_accuracy", inter_correct);
        push_rate("interaction_detected", inter_detected);
        push_rate("noise_corr_accuracy", noise_correct);
        push_rate("noise_corr_detected", noise_detected);

        CellSummary summary;
        summary.T = T;
        summary.procedure = proc_name;
        summary.trials = ok;
        summary.failures = failures;
        summary.rejection_rate = ok > 0 ? static_cast<double>(inter_detected) / ok : 0.0;
        summary.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        result.cells.push_back(summary);
    }
    return result;
}

ExperimentResult run_power_curve(const ExperimentConfig& config) {
    config.validate();

    ExperimentResult result;
    for (std::size_t cell = 0; cell < config.sample_sizes.size(); ++cell) {
        const int T = config.sample_sizes[cell];
        const auto started = std::chrono::steady_clock::now();

        SimModelSpec spec = config.model;
        spec.T = T;

        std::vector<TrialOutcome> proposed(static_cast<std::size_t>(config.trials));
        std::vector<TrialOutcome> normal(static_cast<std::size_t>(config.trials));
        parallel_for(config.trials, config.threads, [&](int trial) {
            const std::uint64_t trial_seed = Rng::derive_seed(
                config.seed, cell * static_cast<std::size_t>(config.trials) + trial);
            try {
                const TimeSeriesPair pair = generate(spec, trial_seed);
                proposed[static_cast<std::size_t>(trial)] =
                    run_stepwise_trial(pair, config, Procedure::stepwise_proposed);
                normal[static_cast<std::size_t>(trial)] =
                    run_stepwise_trial(pair, config, Procedure::stepwise_normal);
            } catch (const Error& e) {
                proposed[static_cast<std::size_t>(trial)].failed = true;
                proposed[static_cast<std::size_t>(trial)].error = e.what();
                normal[static_cast<std::size_t>(trial)].failed = true;
                normal[static_cast<std::size_t>(trial)].error = e.what();
            }
        });
        check_failure_budget(proposed, T, "power");

        for (const auto* outcomes : {&proposed, &normal}) {
            const bool is_proposed = outcomes == &proposed;
            const std::string name =
                to_string(is_proposed ? Procedure::stepwise_proposed : Procedure::stepwise_normal);
            int ok = 0, detected = 0;
            for (const auto& o : *outcomes) {
                if (o.failed) continue;
                ++ok;
                if (o.interaction) ++detected;
            }
            const double rate = ok > 0 ? static_cast<double>(detected) / ok : 0.0;
            result.rates.push_back(RateEntry{T, name, "power", rate, rate_stderr(rate, ok)});

            CellSummary summary;
            summary.T = T;
            summary.procedure = name;
            summary.trials = ok;
            summary.failures = config.trials - ok;
            summary.rejection_rate = rate;
            summary.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
            result.cells.push_back(summary);
        }
    }
    return result;
}

}  // namespace lcgc
