#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace fnls {

/// Seeded generator with explicitly specified output mappings, so that a
/// given seed reproduces the same stream on every platform and build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1) with 53 significant bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// e^{iθ} with θ uniform in [0, 2π).
  std::complex<double> unit_phase() {
    double theta = 2.0 * std::numbers::pi * uniform();
    return {std::cos(theta), std::sin(theta)};
  }

  /// Standard complex Gaussian (independent N(0, 1/2) parts), Box-Muller.
  std::complex<double> complex_gaussian() {
    double u1 = uniform(), u2 = uniform();
    while (u1 == 0.0) u1 = uniform();
    double r = std::sqrt(-std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace fnls
