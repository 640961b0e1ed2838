#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "phasekit/density.hpp"

namespace phasekit {

/// Seeded generator with an explicit stream index, so parallel workers can
/// derive independent substreams from one experiment seed. Uniform and
/// normal variates are mapped from the raw 64-bit output here rather than
/// through std distributions, keeping sequences identical across standard
/// libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    /// Uniform on [0, 1).
    double uniform();

    /// Standard normal (Box-Muller, cached spare).
    double normal();

    std::uint64_t next_u64() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Inverse-CDF sampler for a circular density. The cumulative table is built
/// eagerly at construction (trapezoid rule on `cells` equal subintervals of
/// [-pi, pi]); draws invert it by binary search, linear interpolation, and
/// one Newton correction against the exact pdf. The sampler is immutable
/// after construction and safe to share across threads.
class InverseCdfSampler {
public:
    explicit InverseCdfSampler(const CircularDensity& density, int cells = 4096);

    /// One draw in [-pi, pi).
    double draw(Rng& rng) const;

    std::vector<double> sample(std::uint64_t seed, std::size_t n) const;

    /// CDF at `phi` as tabulated (linear interpolation), normalized to [0, 1].
    double cdf(double phi) const;

private:
    const CircularDensity& density_;
    double step_;
    std::vector<double> pdf_;  // at the cell edges
    std::vector<double> cdf_;  // unnormalized cumulative, cdf_[0] = 0
    double total_;
};

/// Draws n values from `density`. Builds a fresh sampler; construct an
/// InverseCdfSampler directly when sampling repeatedly from one density.
std::vector<double> sample(const CircularDensity& density, std::uint64_t seed,
                           std::size_t n);

}  // namespace phasekit
