#include "fnls/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fnls/errors.hpp"
#include "fnls/fft.hpp"
#include "fnls/util.hpp"

namespace fnls {

double mass(const SpectralField& f) { return lp_norm(f, 2.0); }

double energy(const SpectralField& f, double alpha) {
  check_alpha(alpha);
  double kinetic = sobolev_norm(f, alpha, /*homogeneous=*/true);
  double l4 = lp_norm(f, 4.0);
  return 0.5 * kinetic * kinetic + 0.25 * l4 * l4 * l4 * l4;
}

int dealias_cutoff_mode(const TorusSpec& spec) { return spec.num_points / 3; }

SpectralField dealias(const SpectralField& f) {
  SpectralField g = f;
  const int cut = dealias_cutoff_mode(g.spec);
  for (int i = 0; i < g.spec.num_points; ++i)
    if (std::abs(g.spec.mode_of_index(i)) > cut) g.coeffs[static_cast<std::size_t>(i)] = Complex{};
  return g;
}

namespace {

// In-place half/full linear phase on the coefficient array.
void linear_phase_inplace(SpectralField& u, double t, double alpha) {
  for (int i = 0; i < u.spec.num_points; ++i) {
    double k = u.spec.freq_of_mode(u.spec.mode_of_index(i));
    double phase = dispersion_symbol(k, alpha) * t;
    u.coeffs[static_cast<std::size_t>(i)] *= Complex{std::cos(phase), std::sin(phase)};
  }
}

// Exact flow of ∂_t u = i|u|²u over dt; |u| is pointwise invariant.
void nonlinear_phase_inplace(SpectralField& u, double dt, bool apply_dealias) {
  std::vector<Complex> samples = u.coeffs;
  fft::backward(samples);
  const double inv_vol = 1.0 / u.spec.circumference();
  for (auto& s : samples) {
    s *= inv_vol;
    double phase = std::norm(s) * dt;
    s *= Complex{std::cos(phase), std::sin(phase)};
  }
  fft::forward(samples);
  const double h = u.spec.dx();
  for (std::size_t i = 0; i < samples.size(); ++i) u.coeffs[i] = samples[i] * h;
  if (apply_dealias) {
    const int cut = dealias_cutoff_mode(u.spec);
    for (int i = 0; i < u.spec.num_points; ++i)
      if (std::abs(u.spec.mode_of_index(i)) > cut)
        u.coeffs[static_cast<std::size_t>(i)] = Complex{};
  }
}

bool finite(const SpectralField& u) {
  for (const Complex& c : u.coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

}  // namespace

SpectralField strang_step(const SpectralField& u, double dt, double alpha,
                          bool apply_dealias) {
  SpectralField v = u;
  linear_phase_inplace(v, 0.5 * dt, alpha);
  nonlinear_phase_inplace(v, dt, apply_dealias);
  linear_phase_inplace(v, 0.5 * dt, alpha);
  return v;
}

Trajectory evolve(const SpectralField& u0, const EvolutionConfig& cfg) {
  check_alpha(cfg.alpha);
  if (!(cfg.dt > 0.0) || !(cfg.t_end > 0.0) || !(cfg.dt < cfg.t_end))
    throw std::invalid_argument("evolve: need 0 < dt < t_end");
  if (cfg.snapshot_count < 2) throw std::invalid_argument("evolve: snapshot_count must be >= 2");
  if (cfg.dealias) {
    const int cut = dealias_cutoff_mode(u0.spec);
    for (int m : u0.support_modes())
      if (std::abs(m) > cut)
        throw std::invalid_argument(
            "evolve: initial datum exceeds the 2/3-rule margin (mode " + std::to_string(m) + ")");
  }

  const auto steps = static_cast<long>(std::llround(cfg.t_end / cfg.dt));
  if (steps < 1) throw std::invalid_argument("evolve: no steps to take");

  Trajectory traj;
  traj.stiffness = cfg.dt * dispersion_symbol(u0.spec.k_max(), cfg.alpha);
  const int snaps = cfg.snapshot_count;

  auto record = [&](double t, const SpectralField& u) {
    traj.times.push_back(t);
    traj.snapshots.push_back(u);
    traj.masses.push_back(mass(u));
    traj.energies.push_back(energy(u, cfg.alpha));
  };

  SpectralField u = u0;
  record(0.0, u);
  long next_snap = 1;
  for (long step = 1; step <= steps; ++step) {
    u = strang_step(u, cfg.dt, cfg.alpha, cfg.dealias);
    if (!finite(u))
      throw NumericalError("evolve: non-finite values at step " + std::to_string(step));
    // snapshot when crossing the next of snaps-1 evenly spaced marks
    if (next_snap <= snaps - 1 && step * (snaps - 1) >= next_snap * steps) {
      record(static_cast<double>(step) * cfg.dt, u);
      while (next_snap <= snaps - 1 && step * (snaps - 1) >= next_snap * steps) ++next_snap;
    }
  }
  return traj;
}

void gauss_legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_rule: n must be >= 1");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  // Roots of P_n by Newton iteration from the Chebyshev-like initial guess,
  // then mapped from [-1, 1] to [0, 1].
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    nodes[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (1.0 + x);
    weights[static_cast<std::size_t>(i)] = 0.5 * w;
    weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * w;
  }
}

SpectralField duhamel_nonlinear(const SpectralField& u0, double t, double alpha,
                                int quad_nodes, Quadrature rule) {
  check_alpha(alpha);
  if (quad_nodes < 2) throw std::invalid_argument("duhamel_nonlinear: quad_nodes must be >= 2");
  const auto support = u0.support_modes();
  if (!support.empty()) {
    // The cubic u²ū of a field supported in [lo, hi] lives in
    // [2*lo - hi, 2*hi - lo]; that image must fit on the lattice.
    int lo = support.front(), hi = support.back();
    if (2 * hi - lo > u0.spec.max_mode() || 2 * lo - hi < -u0.spec.max_mode())
      throw std::invalid_argument(
          "duhamel_nonlinear: grid cannot resolve the cubic image of the datum");
  }

  std::vector<double> nodes, weights;
  if (rule == Quadrature::gauss_legendre) {
    gauss_legendre_rule(quad_nodes, nodes, weights);
  } else {
    nodes.resize(static_cast<std::size_t>(quad_nodes));
    weights.assign(static_cast<std::size_t>(quad_nodes), 1.0 / (quad_nodes - 1));
    for (int i = 0; i < quad_nodes; ++i)
      nodes[static_cast<std::size_t>(i)] = static_cast<double>(i) / (quad_nodes - 1);
    weights.front() *= 0.5;
    weights.back() *= 0.5;
  }

  SpectralField acc = zero_field(u0.spec);
  const double inv_vol = 1.0 / u0.spec.circumference();
  const double h = u0.spec.dx();
  for (int q = 0; q < quad_nodes; ++q) {
    double tp = nodes[static_cast<std::size_t>(q)] * t;
    SpectralField v = propagate(u0, tp, alpha);
    std::vector<Complex> samples = v.coeffs;
    fft::backward(samples);
    for (auto& s : samples) {
      s *= inv_vol;
      s = std::norm(s) * s;  // ψ(z) = |z|² z
    }
    fft::forward(samples);
    SpectralField integrand{u0.spec, std::move(samples)};
    for (auto& c : integrand.coeffs) c *= h;
    integrand = propagate(integrand, t - tp, alpha);
    double w = weights[static_cast<std::size_t>(q)] * t;
    for (std::size_t i = 0; i < acc.coeffs.size(); ++i) acc.coeffs[i] += w * integrand.coeffs[i];
  }
  for (auto& c : acc.coeffs) c *= Complex{0.0, 1.0};
  return acc;
}

}  // namespace fnls
