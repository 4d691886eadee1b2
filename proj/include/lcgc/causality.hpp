#pragma once

#include <optional>

#include <Eigen/Dense>

#include "lcgc/regression.hpp"
#include "lcgc/timeseries.hpp"

namespace lcgc {

/// Outcome of a nested-model F test.
struct CausalityTestResult {
    double f_value = 0.0;
    int d1 = 0;          ///< numerator dof (p1 - p0)
    int d2 = 0;          ///< denominator dof (n_used - p1)
    double p_value = 1.0;
    double rss_null = 0.0;
    double rss_alt = 0.0;
    int n_used = 0;
};

/// Standard Granger causality: null regresses x on its own lags 1..l_a, the
/// alternative adds y lags 1..l_c. Both models are fit on the shared window
/// t = max(l_a, l_c)+1 .. T.
CausalityTestResult normal_gc_test(const TimeSeriesPair& pair, int l_a, int l_c);

/// Latent-common-input-robust test. Stage 1 estimates the source innovations
/// xi_hat from an AR(l_b) fit of y; stage 2 F-tests the y-lag block with the
/// lagged xi_hat column present in both null and alternative models, on the
/// shared window t = l_max+1 .. T.
CausalityTestResult proposed_gc_test(const TimeSeriesPair& pair, const LagConfig& lags);

/// Tests eta_{l_eta} = 0: the null omits the xi_hat column, the alternative
/// includes it (d1 = 1). When include_y_lags is set, y lags 1..l_c enter both
/// models (second stage of the stepwise procedure).
CausalityTestResult noise_corr_test(const TimeSeriesPair& pair, int l_a, int l_b, int l_eta,
                                    std::optional<int> include_y_lags = std::nullopt);

/// Residual covariances of the two partial-GC model fits.
struct PartialGcInputs {
    Eigen::Matrix2d S;      ///< restricted fit, rows/cols: (target, conditioning)
    Eigen::Matrix3d Sigma;  ///< full fit, rows/cols: (target, source, conditioning)
};

/// ln(R1 / R2) with R1 = S11 - S12 S22^-1 S21 and
/// R2 = Sigma11 - Sigma13 Sigma33^-1 Sigma31. Carries no significance test;
/// the value can legitimately be negative.
double partial_gc_measure(const PartialGcInputs& inputs);

}  // namespace lcgc
