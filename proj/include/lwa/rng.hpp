#pragma once
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace lwa {

// Thin wrapper around mt19937_64 with hand-rolled variate transforms.
// std:: distributions are implementation-defined, which would break the
// byte-identical-output requirement across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Standard normal via Box-Muller (two draws per sample, no caching).
    double normal() {
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Triangular on [lo, hi] with the peak at mid, inverse-CDF sampled.
    double triangular(double lo, double mid, double hi) {
        if (hi <= lo) return lo;
        double u = uniform01();
        double fc = (mid - lo) / (hi - lo);
        if (u < fc) return lo + std::sqrt(u * (hi - lo) * (mid - lo));
        return hi - std::sqrt((1.0 - u) * (hi - lo) * (hi - mid));
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace lwa
