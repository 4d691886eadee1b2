#pragma once

#include <cstdint>

namespace lcgc {

/// Deterministic counter-based random stream (splitmix64): the n-th raw draw
/// is mix(state0 + n*gamma), so a stream is fully determined by its initial
/// state and streams can be handed to concurrent trials without coordination.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Bijective splitmix64 finalizer.
    static std::uint64_t mix64(std::uint64_t z);

    /// Per-trial seed, injective in `index` for a fixed `seed`: the map
    /// index -> seed + (index+1)*gamma is affine with an odd multiplier and
    /// mix64 is a bijection.
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64();

    /// Uniform in [0, 1) with 53-bit resolution.
    double next_uniform();

    /// Standard normal via the Marsaglia polar method; the second variate of
    /// each pair is cached.
    double next_normal();

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace lcgc
