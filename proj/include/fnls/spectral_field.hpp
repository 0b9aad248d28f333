#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "fnls/torus.hpp"

namespace fnls {

using Complex = std::complex<double>;

/// Complex field on a discretized torus, stored as Fourier coefficients
/// û(k) = ∫_0^{2πλ} e^{-ikx} f(x) dx on the truncated lattice. Immutable by
/// convention: operations return new fields.
struct SpectralField {
  TorusSpec spec;
  std::vector<Complex> coeffs;  // FFT index order, size spec.num_points

  Complex coeff_of_mode(int m) const {
    if (m > spec.max_mode() || m < -spec.num_points / 2) return {};
    return coeffs[static_cast<std::size_t>(spec.index_of_mode(m))];
  }

  /// Indices of exactly nonzero coefficients, as lattice modes m.
  std::vector<int> support_modes() const;
};

SpectralField zero_field(const TorusSpec& spec);

/// Builds a field from (frequency, coefficient) pairs. Frequencies must lie
/// on the truncated lattice; anything off-lattice or beyond K_max is
/// rejected, naming the offending frequency.
SpectralField synthesize(const TorusSpec& spec,
                         const std::vector<std::pair<double, Complex>>& coeffs);

/// Same, with integer lattice indices m (k = m/λ).
SpectralField synthesize_modes(const TorusSpec& spec,
                               const std::vector<std::pair<int, Complex>>& modes);

std::vector<Complex> to_physical(const SpectralField& f);
SpectralField from_physical(const TorusSpec& spec, const std::vector<Complex>& samples);

/// ∫ f ḡ dx evaluated on the frequency side with the (dk)_λ weight.
Complex inner_product(const SpectralField& f, const SpectralField& g);

/// L^p norm by collocation quadrature (step 2πλ/P); max over samples for
/// p = ∞. Requires p ≥ 1.
double lp_norm(const SpectralField& f, double p);

/// Sobolev norm ‖⟨k⟩^s f̂‖_{L²((dk)_λ)}; the homogeneous variant uses
/// |k|^{2s}, with the k = 0 term dropped for s ≠ 0.
double sobolev_norm(const SpectralField& f, double s, bool homogeneous = false);

/// Frequency-band descriptor: either the dyadic projection P_N (which keeps
/// (N/2, N] ∪ [-N, -N/2) for N > 1 and [-1, 1] for N ≤ 1) or a finite union
/// of closed intervals.
struct Band {
  static Band dyadic(double N);
  static Band interval(double lo, double hi);
  static Band interval_union(std::vector<std::pair<double, double>> ivs);

  bool contains(double k) const;

  bool is_dyadic = false;
  double N = 0.0;
  std::vector<std::pair<double, double>> intervals;
};

/// Sharp Fourier cutoff onto the band; idempotent.
SpectralField project(const SpectralField& f, const Band& band);

/// Linear propagator S_λ(t): multiplies û(k) by e^{i|k|^{2α} t}. Requires
/// α ∈ (1/2, 1].
SpectralField propagate(const SpectralField& f, double t, double alpha);

/// u_0^λ(x) = λ^{-α} u_0(x/λ): maps û(m) on the unit torus to
/// û^λ(m/λ) = λ^{1-α} û(m) on the λ-torus. target_points defaults to the
/// source resolution; a smaller value that cannot hold the support is
/// rejected.
SpectralField rescale_down(const SpectralField& u0, double lambda, double alpha,
                           std::optional<int> target_points = std::nullopt);

/// Inverse of rescale_down; recovers the unit-torus field.
SpectralField rescale_up(const SpectralField& u_lambda, double alpha,
                         std::optional<int> target_points = std::nullopt);

void check_alpha(double alpha);

}  // namespace fnls
