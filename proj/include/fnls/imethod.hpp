#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fnls/errors.hpp"
#include "fnls/spectral_field.hpp"
#include "fnls/util.hpp"

namespace fnls {

/// Interpolant used by g1 on 1 < |x| < 2. Both match the mandated branches
/// exactly; the quintic one is C². The cubic variant exists to check that
/// fitted exponents do not depend on the interpolation choice.
enum class G1Variant { quintic, cubic };

/// Smooth monotone multiplier: 1 on |x| ≤ 1, |x|^{-1} on |x| > 2, and
/// exp(-h(log|x|) log|x|) in between with h a smoothstep on [0, log 2].
double g1(double x, G1Variant variant = G1Variant::quintic);

/// Parameter bundle (α, s, N) for the I-operator multipliers m = g_N^{α-s}
/// and both modified energies.
struct ModifiedEnergyParams {
  double alpha = 0.75;
  double s = 0.25;
  double N = 16.0;
  G1Variant variant = G1Variant::quintic;

  double beta() const { return alpha - s; }
};

/// Validates α ∈ (1/2,1), (1-α)/2 ≤ s < α, N ≥ 1.
ModifiedEnergyParams make_params(double alpha, double s, double N,
                                 G1Variant variant = G1Variant::quintic);

/// m(k) = g1(k/N)^{α-s}: identity below N, (N/|k|)^{α-s} beyond 2N.
double i_multiplier(double k, const ModifiedEnergyParams& p);

/// Smoothing operator I_N^β: multiplies û(k) by g_N(k)^β. beta defaults to
/// α-s; negative overrides are rejected.
SpectralField apply_I(const SpectralField& f, const ModifiedEnergyParams& p,
                      std::optional<double> beta_override = std::nullopt);

/// Zero-sum frequency tuple on the lattice (1/λ)Z, stored as integer indices
/// m = λk so the constraint is exact.
struct FrequencyTuple {
  int order = 0;                       // 2, 4 or 6
  std::array<std::int64_t, 6> modes{};  // first `order` entries used
  double lambda = 1.0;

  double freq(int j) const { return static_cast<double>(modes[static_cast<std::size_t>(j)]) / lambda; }
};

FrequencyTuple make_tuple(std::initializer_list<std::int64_t> ms, double lambda = 1.0);

/// Tolerance for the resonant-branch test |denominator| < eps_res (|k_1^*|^{2α}+1).
inline constexpr double kResonantEps = 1e-9;

/// Quartic multiplier: alternating-sign ratio
/// (Σ ± |k_j|^{2α} m_j²)/(Σ ± |k_j|^{2α}) off the resonant set, and
/// m_1 m_2 m_3 m_4 on it. Resonance is detected exactly on the integer
/// lattice (k_1+k_2 = 0 or k_2+k_3 = 0) with kResonantEps as a guard.
double m4(const FrequencyTuple& t, const ModifiedEnergyParams& p);

/// Sextic multiplier: alternating four-term combination of m4 at merged
/// frequencies; each merged tuple re-runs the resonance test.
double m6(const FrequencyTuple& t, const ModifiedEnergyParams& p);

/// Hard cap on direct Γ_n summation work.
struct LambdaBudget {
  double max_multiplier_evals = 1e9;
};

/// Λ_n(M_n; u) with alternating conjugation: slot j carries û(k_j) for odd j
/// and conj(û(-k_j)) for even j, summed over Γ_n with weight (1/2πλ)^{n-1}.
Complex lambda_n(const SpectralField& u, int n,
                 const std::function<double(const FrequencyTuple&)>& multiplier,
                 LambdaBudget budget = {});

/// Λ₂(m₁|k₁|^α m₂|k₂|^α; u) = ‖(-Δ)^{α/2} I u‖²_{L²}, computed on the
/// frequency side.
double lambda2_kinetic(const SpectralField& u, const ModifiedEnergyParams& p);

Complex lambda4_m4(const SpectralField& u, const ModifiedEnergyParams& p,
                   LambdaBudget budget = {});
Complex lambda4_product_m(const SpectralField& u, const ModifiedEnergyParams& p,
                          LambdaBudget budget = {});
Complex lambda6_m6(const SpectralField& u, const ModifiedEnergyParams& p,
                   LambdaBudget budget = {});

/// First modified energy E¹(u) = E(Iu).
double e1(const SpectralField& u, const ModifiedEnergyParams& p);

/// E¹ through the Λ-functional route ½Λ₂ + ¼Λ₄(m₁m₂m₃m₄); agrees with e1 to
/// quadrature accuracy and serves as the dual-path check.
double e1_lambda_path(const SpectralField& u, const ModifiedEnergyParams& p,
                      LambdaBudget budget = {});

/// Second modified energy E² = ½Λ₂(m₁|k₁|^α m₂|k₂|^α) + ¼Λ₄(M₄). Throws
/// NumericalError if the imaginary residue exceeds 1e-10 relative.
double e2(const SpectralField& u, const ModifiedEnergyParams& p, LambdaBudget budget = {});

/// d/dt E²(u(t)) along smooth solutions of the flow, namely
/// Re[i Λ₆(M₆; u)] / 4; the 1/4 is E²'s quartic coefficient surviving the
/// time derivative.
double e2_growth_rate(const SpectralField& u, const ModifiedEnergyParams& p,
                      LambdaBudget budget = {});

/// Exhaustive sup of |M₄(k)| / m(k₃^*)² over zero-sum integer tuples with
/// |k_j| ≤ radius (λ = 1). Tracks the same sup restricted to radius/2 so a
/// doubling-stability check needs one pass. A deterministic ~1% subsample is
/// re-evaluated in extended precision.
struct M4ScanReport {
  double sup_full = 0.0;
  double sup_half = 0.0;  // restricted to |k_j| <= radius/2
  std::array<std::int64_t, 4> argmax{};
  std::int64_t tuples_scanned = 0;
  double recheck_max_rel_dev = 0.0;  // max |double - long double| on the subsample, over sup_full
  double argmax_value_extended = 0.0;
};

M4ScanReport m4_sup_scan(const ModifiedEnergyParams& p, std::int64_t radius);

}  // namespace fnls
