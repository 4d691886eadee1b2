#include "lcgc/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lcgc {

namespace {

/// Largest root magnitude of z^2 - p z - q = 0.
double ar2_radius(double p, double q) {
    const double disc = p * p + 4.0 * q;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        return std::max(std::fabs((p + s) / 2.0), std::fabs((p - s) / 2.0));
    }
    return std::sqrt(-q);  // complex pair, |z|^2 = -q
}

}  // namespace

double SimModelSpec::spectral_radius() const {
    return std::max(ar2_radius(a1, a2), ar2_radius(b1, b2));
}

void SimModelSpec::validate() const {
    noise.validate();
    if (T < 1) {
        throw InvalidArgumentError("T must be >= 1");
    }
    if (burn_in < 0) {
        throw InvalidArgumentError("burn_in must be >= 0");
    }
    const double radius = spectral_radius();
    if (!(radius < 1.0)) {
        throw StationarityError("AR system is not stationary (spectral radius " +
                                std::to_string(radius) + ")");
    }
}

SimModelSpec preset(char model) {
    SimModelSpec s;
    s.a1 = 0.9;
    s.a2 = -0.5;
    s.b1 = 0.5;
    s.b2 = -0.2;
    s.noise = NoiseSpec{1.0, std::sqrt(0.7), 0.0, 1};
    switch (model) {
        case 'a':
            break;
        case 'b':
            s.noise.rho = 0.4;
            break;
        case 'c':
            s.c1 = 0.16;
            s.c2 = -0.2;
            break;
        case 'd':
            s.c1 = 0.16;
            s.c2 = -0.2;
            s.noise.rho = 0.4;
            break;
        default:
            throw InvalidArgumentError(std::string("unknown simulation model '") + model + "'");
    }
    return s;
}

NoiseDraws draw_noise(const NoiseSpec& noise, int n, Rng& rng) {
    noise.validate();
    if (n < 1) {
        throw InvalidArgumentError("noise draw count must be >= 1");
    }
    const ReparameterizedNoise rep = reparameterize(noise);
    const int d = noise.delay;

    // xi_ext[k] is xi at time k + 1 - d, k = 0..n+d-1, so every e_t sees its
    // lagged partner.
    std::vector<double> xi_ext(static_cast<std::size_t>(n + d));
    for (auto& v : xi_ext) v = noise.sigma_y * rng.next_normal();

    NoiseDraws out;
    out.eps.resize(static_cast<std::size_t>(n));
    out.xi.assign(xi_ext.begin() + d, xi_ext.end());
    for (int t = 1; t <= n; ++t) {
        out.eps[static_cast<std::size_t>(t - 1)] =
            rep.eta * xi_ext[static_cast<std::size_t>(t - 1)] + rep.tau * rng.next_normal();
    }
    return out;
}

TimeSeriesPair generate(const SimModelSpec& spec, std::uint64_t seed) {
    spec.validate();
    Rng rng(seed);
    const int total = spec.burn_in + spec.T;
    const NoiseDraws nd = draw_noise(spec.noise, total, rng);

    std::vector<double> x(static_cast<std::size_t>(total));
    std::vector<double> y(static_cast<std::size_t>(total));
    auto prev = [](const std::vector<double>& v, int i, int k) {
        return i >= k ? v[static_cast<std::size_t>(i - k)] : 0.0;
    };
    for (int i = 0; i < total; ++i) {
        y[static_cast<std::size_t>(i)] = spec.b1 * prev(y, i, 1) + spec.b2 * prev(y, i, 2) +
                                         nd.xi[static_cast<std::size_t>(i)];
        x[static_cast<std::size_t>(i)] = spec.a1 * prev(x, i, 1) + spec.a2 * prev(x, i, 2) +
                                         spec.c1 * prev(y, i, 1) + spec.c2 * prev(y, i, 2) +
                                         nd.eps[static_cast<std::size_t>(i)];
    }
    return TimeSeriesPair(
        std::vector<double>(x.begin() + spec.burn_in, x.end()),
        std::vector<double>(y.begin() + spec.burn_in, y.end()));
}

}  // namespace lcgc
