#pragma once

#include <vector>

#include "lcgc/errors.hpp"

namespace lcgc {

/// Aligned observations of the target series x and the source series y.
///
/// Time indices are 1-based in the documentation (t = 1..T) to match the
/// model equations; storage is 0-based, so x()[t-1] is the sample at time t.
class TimeSeriesPair {
public:
    /// Validates: equal lengths, T >= 1, all samples finite.
    TimeSeriesPair(std::vector<double> x, std::vector<double> y);

    int length() const { return static_cast<int>(x_.size()); }
    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& y() const { return y_; }

    /// 1-based accessors, t in 1..T.
    double x_at(int t) const { return x_[static_cast<std::size_t>(t - 1)]; }
    double y_at(int t) const { return y_[static_cast<std::size_t>(t - 1)]; }

private:
    std::vector<double> x_;
    std::vector<double> y_;
};

/// Lag orders of the general model: target self-lags l_a, source self-lags
/// l_b, interaction lags l_c, and the single noise-correlation lag l_eta.
struct LagConfig {
    int l_a = 1;
    int l_b = 1;
    int l_c = 1;
    int l_eta = 1;

    /// max(l_a, l_c, l_b + l_eta); the shared fit window starts at l_max + 1.
    int l_max() const;

    /// All lags must be >= 1.
    void validate() const;
};

/// Covariance structure of the innovations: e_t has std sigma_x, xi_t has std
/// sigma_y, and corr(e_t, xi_{t-delay}) = rho. delay = 0 means equal-time
/// correlation, delay = 1 the one-step-delayed common input.
struct NoiseSpec {
    double sigma_x = 1.0;
    double sigma_y = 1.0;
    double rho = 0.0;
    int delay = 1;

    void validate() const;
};

/// (tau, eta, sigma_y) parameterization of the same covariance:
/// e_t = eta * xi_{t-delay} + omega_t with omega_t ~ N(0, tau^2) independent
/// of xi.
struct ReparameterizedNoise {
    double tau;
    double eta;
    double sigma_y;

    /// Reconstructed covariance entries.
    double sigma_xx() const { return tau * tau + eta * eta * sigma_y * sigma_y; }
    double sigma_xy() const { return eta * sigma_y * sigma_y; }
    double sigma_yy() const { return sigma_y * sigma_y; }
};

/// eta = rho * sigma_x / sigma_y, tau^2 = sigma_x^2 * (1 - rho^2).
/// Throws DegenerateError when sigma_y (or sigma_x) is not positive.
ReparameterizedNoise reparameterize(const NoiseSpec& noise);

}  // namespace lcgc
