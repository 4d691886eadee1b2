#include "lcgc/causality.hpp"

#include <algorithm>
#include <cmath>

#include "lcgc/distributions.hpp"

namespace lcgc {

namespace {

/// Both fits must share the response window so the models are exactly nested.
CausalityTestResult f_test_from(const RegressionFit& null_fit, const RegressionFit& alt_fit) {
    const int d1 = alt_fit.p - null_fit.p;
    const int d2 = alt_fit.n_used - alt_fit.p;
    // Degenerate (e.g. deterministic) series leave a residual at roundoff
    // scale rather than exactly zero.
    if (!(alt_fit.rss > 1e-20 * alt_fit.tss)) {
        throw DegenerateError("zero residual variance in the alternative model");
    }
    // Nesting on a shared window guarantees rss_null >= rss_alt; the clamp
    // only absorbs last-ulp roundoff.
    const double delta = std::max(null_fit.rss - alt_fit.rss, 0.0);
    const double f = (delta / d1) / (alt_fit.rss / d2);

    CausalityTestResult r;
    r.f_value = f;
    r.d1 = d1;
    r.d2 = d2;
    r.p_value = 1.0 - f_cdf(f, FParams{d1, d2});
    r.rss_null = null_fit.rss;
    r.rss_alt = alt_fit.rss;
    r.n_used = alt_fit.n_used;
    return r;
}

}  // namespace

CausalityTestResult normal_gc_test(const TimeSeriesPair& pair, int l_a, int l_c) {
    if (l_a < 1 || l_c < 1) {
        throw InvalidArgumentError("l_a and l_c must be >= 1");
    }
    const int window_start = std::max(l_a, l_c) + 1;

    DesignSpec null_spec;
    null_spec.target_lags = DesignSpec::lags_upto(l_a);
    null_spec.window_start = window_start;

    DesignSpec alt_spec = null_spec;
    alt_spec.source_lags = DesignSpec::lags_upto(l_c);

    const RegressionFit null_fit = fit_least_squares(build_design(pair, nullptr, null_spec));
    const RegressionFit alt_fit = fit_least_squares(build_design(pair, nullptr, alt_spec));
    return f_test_from(null_fit, alt_fit);
}

CausalityTestResult proposed_gc_test(const TimeSeriesPair& pair, const LagConfig& lags) {
    lags.validate();
    const ResidualSeries xi = residual_series(pair.y(), lags.l_b);
    const int window_start = lags.l_max() + 1;

    DesignSpec null_spec;
    null_spec.target_lags = DesignSpec::lags_upto(lags.l_a);
    null_spec.xi_lag = lags.l_eta;
    null_spec.window_start = window_start;

    DesignSpec alt_spec = null_spec;
    alt_spec.source_lags = DesignSpec::lags_upto(lags.l_c);

    const RegressionFit null_fit = fit_least_squares(build_design(pair, &xi, null_spec));
    const RegressionFit alt_fit = fit_least_squares(build_design(pair, &xi, alt_spec));
    return f_test_from(null_fit, alt_fit);
}

CausalityTestResult noise_corr_test(const TimeSeriesPair& pair, int l_a, int l_b, int l_eta,
                                    std::optional<int> include_y_lags) {
    if (l_a < 1 || l_b < 1 || l_eta < 1) {
        throw InvalidArgumentError("l_a, l_b and l_eta must be >= 1");
    }
    if (include_y_lags && *include_y_lags < 1) {
        throw InvalidArgumentError("l_c must be >= 1 when y lags are included");
    }
    const ResidualSeries xi = residual_series(pair.y(), l_b);
    const int l_c = include_y_lags.value_or(0);
    const int window_start = std::max({l_a, l_c, l_b + l_eta}) + 1;

    DesignSpec null_spec;
    null_spec.target_lags = DesignSpec::lags_upto(l_a);
    if (include_y_lags) null_spec.source_lags = DesignSpec::lags_upto(l_c);
    null_spec.window_start = window_start;

    DesignSpec alt_spec = null_spec;
    alt_spec.xi_lag = l_eta;

    const RegressionFit null_fit = fit_least_squares(build_design(pair, nullptr, null_spec));
    const RegressionFit alt_fit = fit_least_squares(build_design(pair, &xi, alt_spec));
    return f_test_from(null_fit, alt_fit);
}

double partial_gc_measure(const PartialGcInputs& inputs) {
    const auto& S = inputs.S;
    const auto& Sigma = inputs.Sigma;
    if (!(S(1, 1) > 0.0)) {
        throw DegenerateError("S22 must be positive");
    }
    if (!(Sigma(2, 2) > 0.0)) {
        throw DegenerateError("Sigma33 must be positive");
    }
    const double r1 = S(0, 0) - S(0, 1) * S(1, 0) / S(1, 1);
    const double r2 = Sigma(0, 0) - Sigma(0, 2) * Sigma(2, 0) / Sigma(2, 2);
    if (!(r1 > 0.0) || !(r2 > 0.0)) {
        throw DegenerateError("conditional variances must be positive");
    }
    return std::log(r1 / r2);
}

}  // namespace lcgc
