#pragma once

#include <cstdint>
#include <vector>

#include "lcgc/rng.hpp"
#include "lcgc/timeseries.hpp"

namespace lcgc {

/// Bivariate AR(2) system with latent-common-input noise structure:
///   x_t = a1 x_{t-1} + a2 x_{t-2} + c1 y_{t-1} + c2 y_{t-2} + e_t
///   y_t = b1 y_{t-1} + b2 y_{t-2} + xi_t
/// with corr(e_t, xi_{t-delay}) = rho.
struct SimModelSpec {
    double a1 = 0.0, a2 = 0.0;
    double b1 = 0.0, b2 = 0.0;
    double c1 = 0.0, c2 = 0.0;
    NoiseSpec noise;
    int burn_in = 1000;
    int T = 1000;

    /// Spectral radius of the full companion matrix. The x->y coupling is
    /// absent, so the matrix is block triangular and the eigenvalues are the
    /// union of the two AR(2) blocks'.
    double spectral_radius() const;

    /// Throws StationarityError when the spectral radius reaches 1.
    void validate() const;
};

/// Table-style presets 'a'..'d': shared self-coefficients (0.9, -0.5) and
/// (0.5, -0.2), sigma_x = 1, sigma_y = sqrt(0.7), delay 1;
/// (a) no interaction, rho 0; (b) rho 0.4; (c) interaction (0.16, -0.2);
/// (d) both.
SimModelSpec preset(char model);

/// Innovation pairs (e_t, xi_t), t = 1..n, drawn to the spec's covariance:
/// xi ~ N(0, sigma_y^2) i.i.d., e_t = eta xi_{t-delay} + tau w_t with
/// w ~ N(0,1) independent of xi (pre-window xi values are drawn so e_1 is
/// well defined).
struct NoiseDraws {
    std::vector<double> eps;
    std::vector<double> xi;
};

NoiseDraws draw_noise(const NoiseSpec& noise, int n, Rng& rng);

/// Iterates the AR recursions from zero initial conditions, discards burn_in
/// samples, returns spec.T samples. Deterministic given the seed.
TimeSeriesPair generate(const SimModelSpec& spec, std::uint64_t seed);

}  // namespace lcgc
