#pragma once

#include <vector>

#include "fnls/spectral_field.hpp"

namespace fnls {

/// Time integration setup for i∂_t u + (-Δ)^α u = -|u|²u, integrated as the
/// equivalent flow ∂_t u = i(-Δ)^α u + i|u|²u by Strang splitting of the two
/// exact phase sub-flows.
struct EvolutionConfig {
  double alpha = 0.75;
  double dt = 1e-3;
  double t_end = 1.0;
  bool dealias = true;  // 2/3-rule spectral filter after each nonlinear step
  enum class Scheme { strang } scheme = Scheme::strang;
  int snapshot_count = 32;  // evenly spaced, endpoints included
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> snapshots;
  std::vector<double> masses;    // per snapshot
  std::vector<double> energies;  // per snapshot
  double stiffness = 0.0;        // dt * K_max^{2α}, diagnostic only
};

/// M(u) = ‖u‖_{L²}.
double mass(const SpectralField& f);

/// E(u) = ½‖(-Δ)^{α/2}u‖² + ¼‖u‖⁴_{L⁴}.
double energy(const SpectralField& f, double alpha);

/// Largest retained mode under the 2/3 rule, floor(P/3).
int dealias_cutoff_mode(const TorusSpec& spec);

/// Zeroes modes |m| > floor(P/3).
SpectralField dealias(const SpectralField& f);

/// One Strang step: half linear phase, exact pointwise nonlinear phase
/// u -> e^{i|u|² dt} u, half linear phase.
SpectralField strang_step(const SpectralField& u, double dt, double alpha,
                          bool apply_dealias);

/// Integrates to t_end, recording snapshots and per-snapshot mass/energy.
/// Throws NumericalError with the step index if non-finite values appear.
Trajectory evolve(const SpectralField& u0, const EvolutionConfig& cfg);

enum class Quadrature { gauss_legendre, trapezoid };

/// First Picard iterate of the nonlinear part,
/// i ∫_0^t S(t-t') |S(t')u_0|² S(t')u_0 dt',
/// by quadrature in t'; every integrand evaluation is exact up to the grid.
SpectralField duhamel_nonlinear(const SpectralField& u0, double t, double alpha,
                                int quad_nodes = 64,
                                Quadrature rule = Quadrature::gauss_legendre);

/// Nodes and weights on [0, 1].
void gauss_legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace fnls
