#include "lcgc/timeseries.hpp"

#include <algorithm>
#include <cmath>

namespace lcgc {

TimeSeriesPair::TimeSeriesPair(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size()) {
        throw InvalidArgumentError("time series x and y must have equal length");
    }
    if (x_.empty()) {
        throw InvalidArgumentError("time series must contain at least one sample");
    }
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(x_.begin(), x_.end(), finite) ||
        !std::all_of(y_.begin(), y_.end(), finite)) {
        throw InvalidArgumentError("time series samples must be finite");
    }
}

int LagConfig::l_max() const {
    return std::max({l_a, l_c, l_b + l_eta});
}

void LagConfig::validate() const {
    if (l_a < 1 || l_b < 1 || l_c < 1 || l_eta < 1) {
        throw InvalidArgumentError("all lag orders must be >= 1");
    }
}

void NoiseSpec::validate() const {
    if (!(sigma_x > 0.0) || !(sigma_y > 0.0)) {
        throw DegenerateError("noise standard deviations must be positive");
    }
    if (!(rho >= -1.0 && rho <= 1.0)) {
        throw InvalidArgumentError("noise correlation rho must lie in [-1, 1]");
    }
    if (delay < 0) {
        throw InvalidArgumentError("noise correlation delay must be >= 0");
    }
}

ReparameterizedNoise reparameterize(const NoiseSpec& noise) {
    noise.validate();
    const double eta = noise.rho * noise.sigma_x / noise.sigma_y;
    const double tau2 = noise.sigma_x * noise.sigma_x * (1.0 - noise.rho * noise.rho);
    return ReparameterizedNoise{std::sqrt(std::max(tau2, 0.0)), eta, noise.sigma_y};
}

}  // namespace lcgc
