// Acceptance suite: end-to-end statistical criteria at desk scale
// (2,000 Monte Carlo trials unless noted). Each criterion prints one
// PASS/FAIL line; the exit code is the number of failed criteria.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lcgc/causality.hpp"
#include "lcgc/distributions.hpp"
#include "lcgc/harness.hpp"
#include "lcgc/io.hpp"
#include "lcgc/regression.hpp"
#include "lcgc/selection.hpp"
#include "lcgc/simulation.hpp"
#include "test_util.hpp"

using namespace lcgc;

namespace {

constexpr int kTrials = 2000;
constexpr std::uint64_t kSeed = 20260810;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            detail += detail.empty() ? what : ("; " + what);
        }
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

ExperimentConfig base_config(char model, Procedure procedure, std::vector<int> sizes,
                             std::uint64_t seed) {
    ExperimentConfig c;
    c.model = preset(model);
    c.model_name = std::string(1, model);
    c.sample_sizes = std::move(sizes);
    c.trials = kTrials;
    c.procedure = procedure;
    c.seed = seed;
    return c;
}

// 1. Null calibration of the proposed test: model (b), true lags,
//    T in {300, 1000, 3000}; rejection at the 0.95 F-quantile in
//    [0.03, 0.07] and KS distance < 0.05 at every T.
Check criterion_1() {
    Check check;
    const auto result =
        run_sampling_distribution(base_config('b', Procedure::proposed, {300, 1000, 3000}, kSeed));
    for (const auto& cell : result.cells) {
        check.require(cell.rejection_rate >= 0.03 && cell.rejection_rate <= 0.07,
                      "T=" + std::to_string(cell.T) + " rejection " + fmt(cell.rejection_rate) +
                          " outside [0.03, 0.07]");
        check.require(cell.ks_distance < 0.05, "T=" + std::to_string(cell.T) + " KS " +
                                                   fmt(cell.ks_distance) + " >= 0.05");
    }
    return check;
}

// 2. Spurious detection by normal GC under a delayed common input:
//    model (b) at T=100 rejects with rate > 0.15; the equal-time variant
//    (delay = 0) stays in [0.03, 0.07].
Check criterion_2() {
    Check check;
    {
        const auto result =
            run_sampling_distribution(base_config('b', Procedure::normal, {100}, kSeed + 1));
        const double rate = result.cells[0].rejection_rate;
        check.require(rate > 0.15, "delayed rejection " + fmt(rate) + " <= 0.15");
        check.detail += "delayed=" + fmt(rate);
    }
    {
        ExperimentConfig config = base_config('b', Procedure::normal, {100}, kSeed + 2);
        config.model.noise.delay = 0;
        const auto result = run_sampling_distribution(config);
        const double rate = result.cells[0].rejection_rate;
        check.require(rate >= 0.03 && rate <= 0.07,
                      "equal-time rejection " + fmt(rate) + " outside [0.03, 0.07]");
        check.detail += " equal_time=" + fmt(rate);
    }
    return check;
}

// 3. Detection power of the proposed test on model (d): rejection strictly
//    increasing across T in {100, 300, 1000} within 2 MC stderr, and > 0.9
//    at T = 1000.
Check criterion_3() {
    Check check;
    const auto result =
        run_sampling_distribution(base_config('d', Procedure::proposed, {100, 300, 1000}, kSeed + 3));
    std::vector<double> rates, ses;
    for (const auto& cell : result.cells) {
        rates.push_back(cell.rejection_rate);
        ses.push_back(rate_stderr(cell.rejection_rate, cell.trials));
    }
    for (std::size_t i = 1; i < rates.size(); ++i) {
        const double slack = 2.0 * std::sqrt(ses[i] * ses[i] + ses[i - 1] * ses[i - 1]);
        check.require(rates[i] > rates[i - 1] - slack,
                      "rate not increasing: " + fmt(rates[i - 1]) + " -> " + fmt(rates[i]));
    }
    check.require(rates.back() > 0.9, "rate at T=1000 is " + fmt(rates.back()) + " <= 0.9");
    check.detail += "rates " + fmt(rates[0]) + ", " + fmt(rates[1]) + ", " + fmt(rates[2]);
    return check;
}

// 4. Stepwise accuracy at T = 1000: the proposed procedure decides the
//    interaction correctly with rate >= 0.9 on all four models; the normal
//    procedure falsely detects an interaction on model (b) with rate >= 0.9.
Check criterion_4() {
    Check check;
    for (char model : {'a', 'b', 'c', 'd'}) {
        const auto result = run_accuracy(
            base_config(model, Procedure::stepwise_proposed, {1000}, kSeed + 10 + model));
        double accuracy = 0.0;
        for (const auto& rate : result.rates) {
            if (rate.metric == "interaction_accuracy") accuracy = rate.rate;
        }
        check.require(accuracy >= 0.9, std::string("proposed accuracy on (") + model + ") " +
                                           fmt(accuracy) + " < 0.9");
        check.detail += std::string(check.detail.empty() ? "" : " ") + model + "=" + fmt(accuracy);
    }
    const auto result =
        run_accuracy(base_config('b', Procedure::stepwise_normal, {1000}, kSeed + 20));
    double false_detection = 0.0;
    for (const auto& rate : result.rates) {
        if (rate.metric == "interaction_detected") false_detection = rate.rate;
    }
    check.require(false_detection >= 0.9,
                  "normal spurious detection on (b) " + fmt(false_detection) + " < 0.9");
    check.detail += " normal_b_spurious=" + fmt(false_detection);
    return check;
}

// 5. Power ordering on model (c) over T in {75, 150, 300, 600, 1000}:
//    power(proposed) <= power(normal) + 2 stderr at every T, and
//    power(proposed) >= 0.95 at T = 1000.
Check criterion_5() {
    Check check;
    const auto result = run_power_curve(
        base_config('c', Procedure::stepwise_proposed, {75, 150, 300, 600, 1000}, kSeed + 30));
    std::map<int, double> power_proposed, power_normal, se_proposed, se_normal;
    for (const auto& rate : result.rates) {
        if (rate.procedure == "stepwise_proposed") {
            power_proposed[rate.T] = rate.rate;
            se_proposed[rate.T] = rate.stderr_;
        } else {
            power_normal[rate.T] = rate.rate;
            se_normal[rate.T] = rate.stderr_;
        }
    }
    for (const auto& [T, p] : power_proposed) {
        const double n = power_normal.at(T);
        const double se =
            std::sqrt(se_proposed.at(T) * se_proposed.at(T) + se_normal.at(T) * se_normal.at(T));
        check.require(p <= n + 2.0 * se, "T=" + std::to_string(T) + " proposed " + fmt(p) +
                                             " > normal " + fmt(n) + " + 2se");
        check.detail += "T" + std::to_string(T) + ":" + fmt(p) + "/" + fmt(n) + " ";
    }
    check.require(power_proposed.at(1000) >= 0.95,
                  "proposed power at T=1000 " + fmt(power_proposed.at(1000)) + " < 0.95");
    return check;
}

// 6. Structural non-negativity: the proposed F statistic is >= 0 on 10,000
//    randomized instances (random stationary specs, random lags).
Check criterion_6() {
    Check check;
    testutil::TestRng rng(616);
    int done = 0, attempts = 0, violations = 0;
    while (done < 10000 && attempts < 40000) {
        ++attempts;
        SimModelSpec spec;
        const double pa1 = rng.uniform(-0.95, 0.95), pa2 = rng.uniform(-0.95, 0.95);
        spec.a1 = pa1 * (1.0 - pa2);
        spec.a2 = pa2;
        const double pb1 = rng.uniform(-0.95, 0.95), pb2 = rng.uniform(-0.95, 0.95);
        spec.b1 = pb1 * (1.0 - pb2);
        spec.b2 = pb2;
        spec.c1 = rng.uniform(-0.4, 0.4);
        spec.c2 = rng.uniform(-0.4, 0.4);
        spec.noise = NoiseSpec{rng.uniform(0.1, 3.0), rng.uniform(0.1, 3.0),
                               rng.uniform(-0.95, 0.95), static_cast<int>(rng.uniform(0.0, 4.0))};
        spec.T = 50 + static_cast<int>(rng.uniform(0.0, 400.0));
        spec.burn_in = 200;
        const LagConfig lags{1 + static_cast<int>(rng.uniform(0.0, 4.0)),
                             1 + static_cast<int>(rng.uniform(0.0, 4.0)),
                             1 + static_cast<int>(rng.uniform(0.0, 4.0)),
                             1 + static_cast<int>(rng.uniform(0.0, 4.0))};
        try {
            const TimeSeriesPair pair = generate(spec, Rng::derive_seed(kSeed + 40, attempts));
            const CausalityTestResult r = proposed_gc_test(pair, lags);
            if (!(r.f_value >= 0.0)) ++violations;
            ++done;
        } catch (const Error&) {
            // multicollinear or degenerate draw; not a violation
        }
    }
    check.require(done >= 10000, "only " + std::to_string(done) + " valid instances");
    check.require(violations == 0, std::to_string(violations) + " negative F values");
    check.detail = std::to_string(done) + " instances, " + std::to_string(violations) +
                   " violations";
    return check;
}

// 7. Oracle equivalence: least squares vs normal equations (1e-8, 500
//    instances); F/chi-square CDFs vs quadrature (1e-6); F(2, d) closed form
//    (1e-10).
Check criterion_7() {
    Check check;
    testutil::TestRng rng(717);
    int bad_fit = 0;
    for (int k = 0; k < 500; ++k) {
        const int n = 6 + static_cast<int>(rng.uniform(0, 30));
        const int p = 1 + static_cast<int>(rng.uniform(0, 5));
        Eigen::MatrixXd X(n, p);
        Eigen::VectorXd y(n);
        std::vector<std::vector<double>> rows(static_cast<std::size_t>(n),
                                              std::vector<double>(static_cast<std::size_t>(p)));
        std::vector<double> yv(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < p; ++j) {
                X(i, j) = rng.normal();
                rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = X(i, j);
            }
            y(i) = rng.normal();
            yv[static_cast<std::size_t>(i)] = y(i);
        }
        const auto oracle = testutil::normal_equations_fit(rows, yv);
        const RegressionFit fit = fit_least_squares(X, y);
        for (int j = 0; j < p; ++j) {
            const double diff = std::fabs(fit.coefficients(j) - oracle[static_cast<std::size_t>(j)]);
            if (diff > 1e-8 * std::max(1.0, std::fabs(oracle[static_cast<std::size_t>(j)]))) {
                ++bad_fit;
            }
        }
    }
    check.require(bad_fit == 0, std::to_string(bad_fit) + " coefficient mismatches vs oracle");

    int bad_cdf = 0;
    const double grid[] = {0.05, 0.25, 0.75, 1.5, 3.0, 6.0, 12.0};
    for (const auto params : {FParams{1, 5}, FParams{2, 10}, FParams{3, 40}, FParams{6, 6}}) {
        for (double x : grid) {
            if (std::fabs(f_cdf(x, params) -
                          testutil::f_cdf_quadrature(x, params.d1, params.d2)) >= 1e-6) {
                ++bad_cdf;
            }
        }
    }
    for (int dof : {1, 2, 4, 11}) {
        for (double x : grid) {
            if (std::fabs(chi2_cdf(x, dof) - testutil::chi2_cdf_quadrature(x, dof)) >= 1e-6) {
                ++bad_cdf;
            }
        }
    }
    check.require(bad_cdf == 0, std::to_string(bad_cdf) + " CDF mismatches vs quadrature");

    int bad_closed = 0;
    for (int d2 : {1, 2, 4, 10, 50}) {
        for (double x : grid) {
            const double closed = 1.0 - std::pow(1.0 + 2.0 * x / d2, -0.5 * d2);
            if (std::fabs(f_cdf(x, {2, d2}) - closed) > 1e-10) ++bad_closed;
        }
    }
    check.require(bad_closed == 0, std::to_string(bad_closed) + " closed-form mismatches");
    return check;
}

// 8. Noise-construction fidelity: empirical (eps, xi) covariance within 3 MC
//    stderr of the preset targets at 1e5 samples, all presets, delay in {0,1}.
Check criterion_8() {
    Check check;
    const int n = 100000;
    for (char model : {'a', 'b', 'c', 'd'}) {
        for (int delay : {0, 1}) {
            NoiseSpec noise = preset(model).noise;
            noise.delay = delay;
            Rng rng(Rng::derive_seed(kSeed + 50, static_cast<std::uint64_t>(model) * 10 + delay));
            const NoiseDraws nd = draw_noise(noise, n, rng);

            double var_e = 0.0, var_x = 0.0, cov = 0.0;
            int cov_n = 0;
            for (int t = 0; t < n; ++t) {
                var_e += nd.eps[t] * nd.eps[t];
                var_x += nd.xi[t] * nd.xi[t];
                if (t >= delay) {
                    cov += nd.eps[t] * nd.xi[t - delay];
                    ++cov_n;
                }
            }
            var_e /= n;
            var_x /= n;
            cov /= cov_n;

            const double sxx = noise.sigma_x * noise.sigma_x;
            const double syy = noise.sigma_y * noise.sigma_y;
            const double sxy = noise.rho * noise.sigma_x * noise.sigma_y;
            const std::string tag = std::string("(") + model + ",delay=" + std::to_string(delay) + ")";
            check.require(std::fabs(var_e - sxx) < 3.0 * sxx * std::sqrt(2.0 / n),
                          tag + " var(eps) off");
            check.require(std::fabs(var_x - syy) < 3.0 * syy * std::sqrt(2.0 / n),
                          tag + " var(xi) off");
            check.require(std::fabs(cov - sxy) <
                              3.0 * std::sqrt((sxx * syy + sxy * sxy) / cov_n),
                          tag + " cov off");
        }
    }
    return check;
}

// 9. Reproducibility: re-running from the rendered (manifest-style) config
//    yields byte-identical statistics.csv, independent of thread count.
Check criterion_9() {
    Check check;
    const std::string config_text =
        "model = b\nprocedure = proposed\nsample_sizes = 200,400\ntrials = 200\nseed = 99\n";
    auto run_once = [&](const std::string& text, int threads) {
        std::istringstream in(text);
        const ExperimentFile file = parse_experiment_file(in);
        const ExperimentConfig config = resolve_experiment(file, threads);
        const ExperimentResult result = run_sampling_distribution(config);
        std::ostringstream stats;
        write_statistics_csv(stats, result.statistics);
        std::ostringstream rates;
        write_rates_csv(rates, result.rates, config.trials);
        return std::pair<std::string, std::string>(stats.str(), rates.str());
    };
    const auto first = run_once(config_text, 1);

    // round-trip through the rendered config, different thread count
    std::istringstream in(config_text);
    const std::string rendered = render_resolved_config(parse_experiment_file(in));
    const auto second = run_once(rendered, 2);

    check.require(first.first == second.first, "statistics.csv differs across re-runs");
    check.require(first.second == second.second, "rates.csv differs across re-runs");
    check.detail = std::to_string(first.first.size()) + " bytes compared";
    return check;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"proposed-test null calibration, model (b)", criterion_1},
        {"normal-GC spurious detection under delayed common input", criterion_2},
        {"proposed-test power growth, model (d)", criterion_3},
        {"stepwise interaction accuracy at T=1000", criterion_4},
        {"power ordering and saturation, model (c)", criterion_5},
        {"non-negativity of the proposed F statistic", criterion_6},
        {"oracle equivalence (least squares, CDFs)", criterion_7},
        {"noise-construction fidelity", criterion_8},
        {"byte-identical reproducibility", criterion_9},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int number = static_cast<int>(i) + 1;
        if (only != 0 && only != number) continue;
        const Check check = criteria[i].second();
        std::printf("[%s] criterion %d: %s%s%s\n", check.ok ? "PASS" : "FAIL", number,
                    criteria[i].first.c_str(), check.detail.empty() ? "" : " -- ",
                    check.detail.c_str());
        std::fflush(stdout);
        if (!check.ok) ++failed;
    }
    if (only == 0) {
        std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    }
    return failed;
}
