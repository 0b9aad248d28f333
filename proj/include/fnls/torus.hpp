#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fnls {

/// Discretized rescaled circle of circumference 2πλ with frequency lattice
/// k = m/λ, m = -P/2 .. P/2-1. Coefficients use FFT index order: index i
/// holds mode m = i for i < P/2 and m = i - P otherwise. The top mode
/// m = -P/2 has no positive partner and is excluded from the resolvable
/// range; synthesis and projections never populate it.
struct TorusSpec {
  double lambda = 1.0;
  int num_points = 0;

  double circumference() const { return 2.0 * std::numbers::pi * lambda; }
  double dx() const { return circumference() / num_points; }
  int max_mode() const { return num_points / 2 - 1; }
  double k_max() const { return static_cast<double>(max_mode()) / lambda; }
  double freq_of_mode(int m) const { return static_cast<double>(m) / lambda; }

  int index_of_mode(int m) const { return m >= 0 ? m : m + num_points; }
  int mode_of_index(int i) const { return i < num_points / 2 ? i : i - num_points; }

  bool operator==(const TorusSpec&) const = default;
};

/// Validates λ ≥ 1 and P even, ≥ 4, and a power of two (the transform layout
/// assumes it).
inline TorusSpec make_torus(double lambda, int num_points) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("TorusSpec: lambda must be >= 1");
  if (num_points < 4 || num_points % 2 != 0)
    throw std::invalid_argument("TorusSpec: num_points must be even and >= 4");
  if ((num_points & (num_points - 1)) != 0)
    throw std::invalid_argument("TorusSpec: num_points must be a power of two");
  return TorusSpec{lambda, num_points};
}

/// Dispersion symbol |k|^{2α}, with the continuous extension 0 at k = 0.
/// At α = 1 the exact square is used so integer-lattice identities hold
/// bit-for-bit.
inline double dispersion_symbol(double k, double alpha) {
  if (k == 0.0) return 0.0;
  if (alpha == 1.0) return k * k;
  return std::pow(std::abs(k), 2.0 * alpha);
}

/// Japanese bracket ⟨k⟩^{2s} = (1+k²)^s.
inline double bracket_weight(double k, double two_s) {
  return std::pow(1.0 + k * k, 0.5 * two_s);
}

}  // namespace fnls
