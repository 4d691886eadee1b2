#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "lcgc/timeseries.hpp"
#include "test_util.hpp"

using namespace lcgc;

TEST_CASE("TimeSeriesPair validates its invariants") {
    CHECK_NOTHROW((TimeSeriesPair{{1.0}, {2.0}}));
    CHECK_THROWS_AS((TimeSeriesPair{{1.0, 2.0}, {1.0}}), InvalidArgumentError);
    CHECK_THROWS_AS((TimeSeriesPair{{}, {}}), InvalidArgumentError);
    CHECK_THROWS_AS((TimeSeriesPair{{std::nan("")}, {1.0}}), InvalidArgumentError);
    CHECK_THROWS_AS((TimeSeriesPair{{1.0}, {std::numeric_limits<double>::infinity()}}),
                    InvalidArgumentError);

    const TimeSeriesPair pair({1.0, 2.0, 3.0}, {4.0, 5.0, 6.0});
    CHECK(pair.length() == 3);
    CHECK(pair.x_at(1) == 1.0);
    CHECK(pair.y_at(3) == 6.0);
}

TEST_CASE("LagConfig l_max and validation") {
    const LagConfig lags{2, 2, 2, 1};
    CHECK(lags.l_max() == 3);
    CHECK((LagConfig{1, 1, 1, 1}).l_max() == 2);
    CHECK((LagConfig{5, 1, 2, 1}).l_max() == 5);
    CHECK_THROWS_AS((LagConfig{0, 1, 1, 1}).validate(), InvalidArgumentError);
    CHECK_THROWS_AS((LagConfig{1, 1, 1, 0}).validate(), InvalidArgumentError);
}

TEST_CASE("reparameterize: uncorrelated case") {
    const auto rep = reparameterize(NoiseSpec{1.0, 1.0, 0.0, 1});
    CHECK(rep.tau == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.eta == 0.0);
}

TEST_CASE("reparameterize: closed form on sigma_y = sqrt(0.7), rho = 0.4") {
    const double sigma_y = std::sqrt(0.7);
    const auto rep = reparameterize(NoiseSpec{1.0, sigma_y, 0.4, 1});
    // eta = rho sigma_x / sigma_y, tau^2 = sigma_x^2 (1 - rho^2)
    CHECK(rep.eta == doctest::Approx(0.4 / sigma_y).epsilon(1e-12));
    CHECK(rep.tau == doctest::Approx(std::sqrt(1.0 - 0.16)).epsilon(1e-12));
}

TEST_CASE("reparameterize: perfectly correlated noise collapses tau") {
    const auto rep = reparameterize(NoiseSpec{2.0, 1.0, 1.0, 1});
    CHECK(rep.tau == 0.0);
    CHECK(rep.eta == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("reparameterize: degenerate sigma errors") {
    CHECK_THROWS_AS(reparameterize(NoiseSpec{1.0, 0.0, 0.0, 1}), DegenerateError);
    CHECK_THROWS_AS(reparameterize(NoiseSpec{0.0, 1.0, 0.0, 1}), DegenerateError);
    CHECK_THROWS_AS(reparameterize(NoiseSpec{1.0, 1.0, 1.5, 1}), InvalidArgumentError);
}

TEST_CASE("reparameterize round-trips the covariance on random specs") {
    testutil::TestRng rng(2024);
    for (int k = 0; k < 1000; ++k) {
        NoiseSpec spec;
        spec.sigma_x = rng.uniform(0.05, 4.0);
        spec.sigma_y = rng.uniform(0.05, 4.0);
        spec.rho = rng.uniform(-1.0, 1.0);
        spec.delay = static_cast<int>(rng.uniform(0.0, 3.0));
        const auto rep = reparameterize(spec);

        const double sxx = spec.sigma_x * spec.sigma_x;
        const double sxy = spec.rho * spec.sigma_x * spec.sigma_y;
        const double syy = spec.sigma_y * spec.sigma_y;
        CHECK(rep.sigma_xx() == doctest::Approx(sxx).epsilon(1e-12));
        CHECK(rep.sigma_xy() == doctest::Approx(sxy).epsilon(1e-12));
        CHECK(rep.sigma_yy() == doctest::Approx(syy).epsilon(1e-12));
        // tau^2 = Sxx - Sxy^2 / Syy
        CHECK(rep.tau * rep.tau == doctest::Approx(sxx - sxy * sxy / syy).epsilon(1e-10));
        CHECK(rep.tau * rep.tau >= 0.0);
    }
}

TEST_CASE("tau vanishes exactly at |rho| = 1 and only there") {
    CHECK(reparameterize(NoiseSpec{1.3, 0.7, 1.0, 1}).tau == 0.0);
    CHECK(reparameterize(NoiseSpec{1.3, 0.7, -1.0, 1}).tau == 0.0);
    CHECK(reparameterize(NoiseSpec{1.3, 0.7, 0.9999, 1}).tau > 0.0);
}
