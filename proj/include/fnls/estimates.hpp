#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fnls/rng.hpp"
#include "fnls/spectral_field.hpp"

namespace fnls {

/// Setup for one space-time norm experiment on a dyadic band.
struct StrichartzProbe {
  TorusSpec torus;
  double alpha = 0.75;
  double band_n = 8.0;    // dyadic N (N1 for bilinear probes)
  double band_n2 = 0.0;   // N2 for bilinear probes
  double horizon = 1.0;   // T
  int time_samples = 0;   // 0 picks the Nyquist-derived count
  enum class DataKind { random_unimodular_phases, block_exponential_sum, single_mode };
  DataKind data_kind = DataKind::random_unimodular_phases;
};

/// Phase mismatch ψ(k, k₁, k₂) = |k₁-k|^{2α} + |k₁|^{2α} - |k₂-k|^{2α} - |k₂|^{2α}.
double resonance_psi(double k, double k1, double k2, double alpha);

/// Exhaustive minimum of the convexity-gap ratio
///   ||k₁|^{2α} - |k₂|^{2α} + |k₃|^{2α} - |k₁+k₂+k₃|^{2α}|
///   / (|k₁+k₂| |k₂+k₃| / (|k₁|+|k₂|+|k₃|)^{2-2α})
/// over integer tuples with |k_j| ≤ radius and (k₁+k₂)(k₂+k₃) ≠ 0.
struct ConvexityReport {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::array<std::int64_t, 3> argmin{};
  std::int64_t admissible_count = 0;
};
ConvexityReport convexity_gap_check(std::int64_t radius, double alpha);

/// #{k₂ ∈ Z : |k₂-k₁| ≤ bound} = 2⌊bound⌋ + 1.
std::int64_t counting_oracle(std::int64_t k1, double bound);

/// Samples needed so the fastest temporal phase of the integrand advances
/// less than π/4 per step; power_half is p/2 for an L^p-type integrand.
int required_time_samples(double T, double band_top, double alpha, int power_half);

/// Unimodular random phases on every lattice mode of the band.
SpectralField random_band_field(const TorusSpec& spec, const Band& band, Rng& rng);

/// Unit coefficients on modes m_start .. m_start+m_len (inclusive).
SpectralField block_field(const TorusSpec& spec, std::int64_t m_start, std::int64_t m_len);

/// ∫₀^T ‖S(t)φ‖_p^p dt by trapezoid in t and collocation quadrature in x.
double spacetime_lp_pow(const SpectralField& phi, double T, int samples, double alpha,
                        double p);

/// ∫₀^T ∫ |S(t)φ₁ S(t)φ₂|² dx dt.
double spacetime_bilinear_l2_sq(const SpectralField& phi1, const SpectralField& phi2,
                                double T, int samples, double alpha);

struct QuotientReport {
  std::vector<double> per_trial;      // normalized quotients
  std::vector<double> raw_per_trial;  // same numerator over plain L² norms
  double max_quotient = 0.0;
  double max_raw = 0.0;
  int time_samples_used = 0;
};

/// ‖S(t)φ‖⁴_{L⁴} / ((T/λ + T^{1/2} N^{1-α}) ‖φ‖₂⁴), max over trials.
QuotientReport strichartz_l4_quotient(const StrichartzProbe& probe, int trials,
                                      std::uint64_t seed);

struct BilinearReport {
  std::vector<double> per_trial;  // ‖Sφ₁Sφ₂‖²/((T/λ + N₁^{1-2α})‖φ₁‖²‖φ₂‖²)
  std::vector<double> excess_per_trial;  // ergodic floor removed, over N₁^{1-2α}‖φ₁‖²‖φ₂‖²
  double max_quotient = 0.0;
  double max_excess = 0.0;
  int time_samples_used = 0;
};

/// Bilinear quotient over trial pairs (φ₁ on band N₁, φ₂ on band N₂); N₁ ≥ 8N₂
/// is enforced. The excess column subtracts the exact time-diagonal
/// T‖φ₁‖²‖φ₂‖²/(2πλ), which is the T/λ part of the estimate, and rescales by
/// N₁^{1-2α} so the refinement term can be read off directly.
BilinearReport bilinear_quotient(const StrichartzProbe& probe, int trials,
                                 std::uint64_t seed);

/// The block-datum pair φ_j = Σ_{k=N_j}^{N_j+M_j} e^{ikx} with
/// M₁ = ⌊(N₁N₂)^{(2α-1)/2}⌋, M₂ = ⌊N₂^{2α-1}⌋ (unit torus).
struct SharpExample {
  SpectralField phi1, phi2;
  std::int64_t M1 = 0, M2 = 0;
};
SharpExample sharp_bilinear_example(std::int64_t N1, std::int64_t N2, double alpha,
                                    const TorusSpec& torus);

/// Runs the bilinear engine on a given pair instead of random trials.
BilinearReport bilinear_quotient_for(const SpectralField& phi1, const SpectralField& phi2,
                                     double N1, double T, int time_samples, double alpha);

/// ‖Sφ‖_{L⁶} / (λ^ε (T/λ^{2α})^{1/6} N^{(1-α)/3+ε} ‖φ‖₂) with ε = 0.05;
/// requires T ≥ λ^{2α}. raw_per_trial holds ‖Sφ‖₆/‖φ‖₂ for exponent fits.
QuotientReport l6_quotient(const StrichartzProbe& probe, int trials, std::uint64_t seed);

/// Evaluates S(t)φ at one off-grid point by direct mode summation.
Complex propagated_value_at(const SpectralField& phi, double x, double t, double alpha);

/// Empirical check of the λ-rescaling relation for the L⁴ constant:
/// C_λ(T, N) = λ^{2α-1} C₁(λ^{-2α}T, λN) with matched data and quadrature.
struct TransferCheck {
  double c_lambda = 0.0;
  double c_unit_predicted = 0.0;
  double rel_dev = 0.0;
};
TransferCheck l4_transfer_check(double lambda, double T, double N, double alpha,
                                int num_points, int trials, std::uint64_t seed);

/// Same relation for the bilinear constant (m = 2, distinct bands).
TransferCheck bilinear_transfer_check(double lambda, double T, double N1, double N2,
                                      double alpha, int num_points, int trials,
                                      std::uint64_t seed);

/// Same relation for the L⁶ constant (m = 3): C_λ = λ^{2α-2} C₁.
TransferCheck l6_transfer_check(double lambda, double T, double N, double alpha,
                                int num_points, int trials, std::uint64_t seed);

}  // namespace fnls
