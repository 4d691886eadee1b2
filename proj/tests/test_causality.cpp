#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lcgc/causality.hpp"
#include "lcgc/distributions.hpp"
#include "lcgc/simulation.hpp"
#include "test_util.hpp"

using namespace lcgc;

namespace {

/// F statistic computed from scratch: lag matrices built by hand, both models
/// solved through the plain normal-equations oracle.
double oracle_normal_gc_f(const std::vector<double>& x, const std::vector<double>& y, int l_a,
                          int l_c) {
    const int T = static_cast<int>(x.size());
    const int l_max = std::max(l_a, l_c);
    std::vector<std::vector<double>> null_rows, alt_rows;
    std::vector<double> resp;
    for (int t = l_max + 1; t <= T; ++t) {
        std::vector<double> n_row, a_row;
        for (int i = 1; i <= l_a; ++i) n_row.push_back(x[static_cast<std::size_t>(t - i - 1)]);
        a_row = n_row;
        for (int i = 1; i <= l_c; ++i) a_row.push_back(y[static_cast<std::size_t>(t - i - 1)]);
        null_rows.push_back(n_row);
        alt_rows.push_back(a_row);
        resp.push_back(x[static_cast<std::size_t>(t - 1)]);
    }
    auto rss_of = [&](const std::vector<std::vector<double>>& rows) {
        const auto beta = testutil::normal_equations_fit(rows, resp);
        double rss = 0.0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            double fitv = 0.0;
            for (std::size_t j = 0; j < beta.size(); ++j) fitv += rows[r][j] * beta[j];
            rss += (resp[r] - fitv) * (resp[r] - fitv);
        }
        return rss;
    };
    const double rss0 = rss_of(null_rows);
    const double rss1 = rss_of(alt_rows);
    const int n = static_cast<int>(resp.size());
    const int d1 = l_c;
    const int d2 = n - (l_a + l_c);
    return ((rss0 - rss1) / d1) / (rss1 / d2);
}

TimeSeriesPair white_noise_pair(int T, std::uint64_t seed) {
    testutil::TestRng rng(seed);
    std::vector<double> x(static_cast<std::size_t>(T)), y(static_cast<std::size_t>(T));
    for (auto& v : x) v = rng.normal();
    for (auto& v : y) v = rng.normal();
    return TimeSeriesPair(std::move(x), std::move(y));
}

}  // namespace

TEST_CASE("normal_gc_test matches the full-formula oracle on white noise") {
    const TimeSeriesPair pair = white_noise_pair(400, 42);
    const CausalityTestResult r = normal_gc_test(pair, 1, 1);
    const double oracle = oracle_normal_gc_f(pair.x(), pair.y(), 1, 1);
    CHECK(r.f_value == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(r.d1 == 1);
    CHECK(r.d2 == r.n_used - 2);

    const CausalityTestResult r2 = normal_gc_test(pair, 2, 3);
    CHECK(r2.f_value == doctest::Approx(oracle_normal_gc_f(pair.x(), pair.y(), 2, 3)).epsilon(1e-10));
}

TEST_CASE("result fields are internally consistent") {
    const TimeSeriesPair pair = generate(preset('d'), 7);
    for (const auto& r : {normal_gc_test(pair, 2, 2),
                          proposed_gc_test(pair, LagConfig{2, 2, 2, 1}),
                          noise_corr_test(pair, 2, 2, 1),
                          noise_corr_test(pair, 2, 2, 1, 2)}) {
        CHECK(r.f_value >= 0.0);
        CHECK(r.p_value >= 0.0);
        CHECK(r.p_value <= 1.0);
        const double reconstructed = ((r.rss_null - r.rss_alt) / r.d1) / (r.rss_alt / r.d2);
        CHECK(r.f_value == doctest::Approx(reconstructed).epsilon(1e-10));
        CHECK(r.p_value == 1.0 - f_cdf(r.f_value, FParams{r.d1, r.d2}));
    }
}

TEST_CASE("proposed test dof follow the shared window") {
    const TimeSeriesPair pair = generate(preset('b'), 11);
    const LagConfig lags{2, 2, 2, 1};
    const CausalityTestResult r = proposed_gc_test(pair, lags);
    const int T = pair.length();
    CHECK(r.n_used == T - lags.l_max());
    CHECK(r.d1 == lags.l_c);
    CHECK(r.d2 == r.n_used - (lags.l_a + lags.l_c + 1));
}

TEST_CASE("proposed F is non-negative on randomized inputs") {
    testutil::TestRng rng(314);
    int checked = 0;
    for (int k = 0; k < 400; ++k) {
        SimModelSpec spec;
        // stationary AR(2) blocks via partial-correlation draws
        const double pa1 = rng.uniform(-0.95, 0.95), pa2 = rng.uniform(-0.95, 0.95);
        spec.a1 = pa1 * (1.0 - pa2);
        spec.a2 = pa2;
        const double pb1 = rng.uniform(-0.95, 0.95), pb2 = rng.uniform(-0.95, 0.95);
        spec.b1 = pb1 * (1.0 - pb2);
        spec.b2 = pb2;
        spec.c1 = rng.uniform(-0.3, 0.3);
        spec.c2 = rng.uniform(-0.3, 0.3);
        spec.noise = NoiseSpec{rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0),
                               rng.uniform(-0.9, 0.9), static_cast<int>(rng.uniform(0, 3))};
        spec.T = 60 + static_cast<int>(rng.uniform(0, 300));
        const LagConfig lags{1 + static_cast<int>(rng.uniform(0, 3)),
                             1 + static_cast<int>(rng.uniform(0, 3)),
                             1 + static_cast<int>(rng.uniform(0, 3)),
                             1 + static_cast<int>(rng.uniform(0, 3))};
        try {
            const TimeSeriesPair pair = generate(spec, 1000 + k);
            const CausalityTestResult r = proposed_gc_test(pair, lags);
            CHECK(r.f_value >= 0.0);
            ++checked;
        } catch (const Error&) {
            // occasional multicollinearity or degenerate draw; counted below
        }
    }
    CHECK(checked > 300);
}

TEST_CASE("scale invariance of the F statistics") {
    const TimeSeriesPair pair = generate(preset('d'), 99);
    std::vector<double> xs = pair.x();
    std::vector<double> ys = pair.y();
    for (auto& v : xs) v *= 3.7;
    for (auto& v : ys) v *= 0.25;
    const TimeSeriesPair scaled(std::move(xs), std::move(ys));

    const double f1 = normal_gc_test(pair, 2, 2).f_value;
    const double f2 = normal_gc_test(scaled, 2, 2).f_value;
    CHECK(f1 == doctest::Approx(f2).epsilon(1e-8));

    const LagConfig lags{2, 2, 2, 1};
    CHECK(proposed_gc_test(pair, lags).f_value ==
          doctest::Approx(proposed_gc_test(scaled, lags).f_value).epsilon(1e-8));
    CHECK(noise_corr_test(pair, 2, 2, 1).f_value ==
          doctest::Approx(noise_corr_test(scaled, 2, 2, 1).f_value).epsilon(1e-8));
}

TEST_CASE("noise_corr_test detects the correlated noise of model (b)") {
    int rejected = 0;
    const int trials = 200;
    SimModelSpec spec = preset('b');
    spec.T = 1000;
    for (int k = 0; k < trials; ++k) {
        const TimeSeriesPair pair = generate(spec, Rng::derive_seed(606, k));
        if (noise_corr_test(pair, 2, 2, 1).p_value < 0.05) ++rejected;
    }
    CHECK(static_cast<double>(rejected) / trials > 0.95);
}

TEST_CASE("noise_corr_test is calibrated on model (a)") {
    int rejected = 0;
    const int trials = 2000;
    SimModelSpec spec = preset('a');
    spec.T = 400;
    for (int k = 0; k < trials; ++k) {
        const TimeSeriesPair pair = generate(spec, Rng::derive_seed(607, k));
        if (noise_corr_test(pair, 2, 2, 1).p_value < 0.05) ++rejected;
    }
    const double rate = static_cast<double>(rejected) / trials;
    CHECK(rate > 0.035);
    CHECK(rate < 0.065);
}

TEST_CASE("both tests hold the 0.05 level on model (a) with true lags") {
    const int trials = 2000;
    SimModelSpec spec = preset('a');
    spec.T = 300;
    int rej_normal = 0, rej_proposed = 0;
    for (int k = 0; k < trials; ++k) {
        const TimeSeriesPair pair = generate(spec, Rng::derive_seed(608, k));
        if (normal_gc_test(pair, 2, 2).p_value < 0.05) ++rej_normal;
        if (proposed_gc_test(pair, LagConfig{2, 2, 2, 1}).p_value < 0.05) ++rej_proposed;
    }
    CHECK(std::fabs(rej_normal / static_cast<double>(trials) - 0.05) <= 0.015);
    CHECK(std::fabs(rej_proposed / static_cast<double>(trials) - 0.05) <= 0.015);
}

TEST_CASE("perfectly correlated noise sends the noise test F to extremes") {
    SimModelSpec spec = preset('b');
    spec.noise.rho = 1.0;
    spec.T = 500;
    const TimeSeriesPair pair = generate(spec, 3);
    const CausalityTestResult r = noise_corr_test(pair, 2, 2, 1);
    CHECK(r.f_value > 1e3);
    CHECK(r.p_value < 1e-10);
}

TEST_CASE("partial_gc_measure hand-checked values") {
    PartialGcInputs in;
    in.S << 2.0, 0.0, 0.0, 1.0;
    in.Sigma = Eigen::Matrix3d::Identity();
    CHECK(partial_gc_measure(in) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    // consistent restriction: R1 == R2 -> 0
    in.S << 2.0, 0.5, 0.5, 1.0;
    in.Sigma << 2.0, 0.0, 0.5, 0.0, 1.0, 0.0, 0.5, 0.0, 1.0;
    CHECK(partial_gc_measure(in) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    // the measure may legitimately be negative
    in.S << 1.0, 0.0, 0.0, 1.0;
    in.Sigma << 2.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0;
    CHECK(partial_gc_measure(in) == doctest::Approx(std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("partial_gc_measure degenerate inputs") {
    PartialGcInputs in;
    in.S << 1.0, 0.0, 0.0, 0.0;  // S22 = 0
    in.Sigma = Eigen::Matrix3d::Identity();
    CHECK_THROWS_AS(partial_gc_measure(in), DegenerateError);

    in.S << 1.0, 1.0, 1.0, 1.0;  // R1 = 0
    CHECK_THROWS_AS(partial_gc_measure(in), DegenerateError);
}

TEST_CASE("lag validation errors") {
    const TimeSeriesPair pair = generate(preset('a'), 5);
    CHECK_THROWS_AS(normal_gc_test(pair, 0, 1), InvalidArgumentError);
    CHECK_THROWS_AS(noise_corr_test(pair, 1, 1, 0), InvalidArgumentError);
    CHECK_THROWS_AS(proposed_gc_test(pair, LagConfig{1, 1, 0, 1}), InvalidArgumentError);
}
