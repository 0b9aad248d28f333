#include "fnls/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fnls/fft.hpp"
#include "fnls/util.hpp"

namespace fnls {

double resonance_psi(double k, double k1, double k2, double alpha) {
  return dispersion_symbol(k1 - k, alpha) + dispersion_symbol(k1, alpha) -
         dispersion_symbol(k2 - k, alpha) - dispersion_symbol(k2, alpha);
}

ConvexityReport convexity_gap_check(std::int64_t radius, double alpha) {
  if (radius < 1) throw std::invalid_argument("convexity_gap_check: radius must be >= 1");
  check_alpha(alpha);
  const std::int64_t R = radius;
  std::vector<double> sym(static_cast<std::size_t>(3 * R + 1));
  for (std::int64_t a = 0; a <= 3 * R; ++a)
    sym[static_cast<std::size_t>(a)] = dispersion_symbol(static_cast<double>(a), alpha);
  const double low_exp = 2.0 - 2.0 * alpha;

  struct ChunkState {
    double min_ratio = std::numeric_limits<double>::infinity();
    double max_ratio = 0.0;
    std::array<std::int64_t, 3> argmin{};
    std::int64_t count = 0;
  };
  std::vector<ChunkState> states(static_cast<std::size_t>(thread_count()));

  parallel_for_chunks(2 * R + 1, [&](std::int64_t lo, std::int64_t hi, int chunk) {
    ChunkState st;
    for (std::int64_t i1 = lo; i1 < hi; ++i1) {
      const std::int64_t k1 = i1 - R;
      for (std::int64_t k2 = -R; k2 <= R; ++k2) {
        const std::int64_t s12 = k1 + k2;
        if (s12 == 0) continue;
        for (std::int64_t k3 = -R; k3 <= R; ++k3) {
          const std::int64_t s23 = k2 + k3;
          if (s23 == 0) continue;
          ++st.count;
          const std::int64_t k4 = k1 + k2 + k3;
          const double lhs = std::abs(sym[static_cast<std::size_t>(std::llabs(k1))] -
                                      sym[static_cast<std::size_t>(std::llabs(k2))] +
                                      sym[static_cast<std::size_t>(std::llabs(k3))] -
                                      sym[static_cast<std::size_t>(std::llabs(k4))]);
          const double denom =
              static_cast<double>(std::llabs(s12)) * static_cast<double>(std::llabs(s23));
          const double weight =
              std::pow(static_cast<double>(std::llabs(k1) + std::llabs(k2) + std::llabs(k3)),
                       low_exp);
          const double ratio = lhs * weight / denom;
          if (ratio < st.min_ratio) {
            st.min_ratio = ratio;
            st.argmin = {k1, k2, k3};
          }
          if (ratio > st.max_ratio) st.max_ratio = ratio;
        }
      }
    }
    states[static_cast<std::size_t>(chunk)] = st;
  });

  ConvexityReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  for (const ChunkState& st : states) {
    if (st.min_ratio < rep.min_ratio) {
      rep.min_ratio = st.min_ratio;
      rep.argmin = st.argmin;
    }
    rep.max_ratio = std::max(rep.max_ratio, st.max_ratio);
    rep.admissible_count += st.count;
  }
  return rep;
}

std::int64_t counting_oracle(std::int64_t /*k1*/, double bound) {
  if (bound < 0.0) throw std::invalid_argument("counting_oracle: bound must be >= 0");
  return 2 * static_cast<std::int64_t>(std::floor(bound)) + 1;
}

int required_time_samples(double T, double band_top, double alpha, int power_half) {
  double rate = power_half * dispersion_symbol(band_top, alpha);
  double max_step = std::numbers::pi / 4.0;
  int n = static_cast<int>(std::ceil(T * rate / max_step)) + 1;
  return std::max(n, 16);
}

SpectralField random_band_field(const TorusSpec& spec, const Band& band, Rng& rng) {
  SpectralField f = zero_field(spec);
  for (int m = -spec.max_mode(); m <= spec.max_mode(); ++m) {
    if (!band.contains(spec.freq_of_mode(m))) continue;
    f.coeffs[static_cast<std::size_t>(spec.index_of_mode(m))] = rng.unit_phase();
  }
  return f;
}

SpectralField block_field(const TorusSpec& spec, std::int64_t m_start, std::int64_t m_len) {
  std::vector<std::pair<int, Complex>> modes;
  for (std::int64_t m = m_start; m <= m_start + m_len; ++m)
    modes.emplace_back(static_cast<int>(m), Complex{spec.circumference(), 0.0});
  return synthesize_modes(spec, modes);  // physical amplitude 1 per mode
}

namespace {

// Advances the coefficient array by a fixed step phase each iteration and
// accumulates the trapezoid-in-time integral of the spatial functional.
template <typename SampleFn>
double timestep_accumulate(const std::vector<SpectralField*>& fields, double T, int samples,
                           double alpha, SampleFn&& spatial) {
  if (samples < 2) throw std::invalid_argument("time integration needs at least 2 samples");
  const double dt = T / (samples - 1);
  std::vector<std::vector<Complex>> step_phase;
  std::vector<std::vector<Complex>> state;
  for (SpectralField* f : fields) {
    std::vector<Complex> ph(f->coeffs.size());
    for (int i = 0; i < f->spec.num_points; ++i) {
      double w = dispersion_symbol(f->spec.freq_of_mode(f->spec.mode_of_index(i)), alpha) * dt;
      ph[static_cast<std::size_t>(i)] = Complex{std::cos(w), std::sin(w)};
    }
    step_phase.push_back(std::move(ph));
    state.push_back(f->coeffs);
  }
  std::vector<double> contributions(static_cast<std::size_t>(samples));
  for (int n = 0; n < samples; ++n) {
    if (n > 0)
      for (std::size_t j = 0; j < state.size(); ++j)
        for (std::size_t i = 0; i < state[j].size(); ++i) state[j][i] *= step_phase[j][i];
    contributions[static_cast<std::size_t>(n)] =
        spatial(state) * ((n == 0 || n == samples - 1) ? 0.5 * dt : dt);
  }
  return pairwise_sum(contributions);
}

double band_top(double n) { return n > 1.0 ? n : 1.0; }

SpectralField probe_datum(const StrichartzProbe& probe, double n, Rng& rng) {
  const Band band = Band::dyadic(n);
  switch (probe.data_kind) {
    case StrichartzProbe::DataKind::random_unimodular_phases:
      return random_band_field(probe.torus, band, rng);
    case StrichartzProbe::DataKind::block_exponential_sum: {
      auto lo = static_cast<std::int64_t>(std::floor(n / 2.0 * probe.torus.lambda)) + 1;
      auto hi = static_cast<std::int64_t>(std::floor(n * probe.torus.lambda));
      return block_field(probe.torus, lo, hi - lo);
    }
    case StrichartzProbe::DataKind::single_mode:
      return block_field(probe.torus, static_cast<std::int64_t>(n * probe.torus.lambda), 0);
  }
  throw std::logic_error("unreachable");
}

void check_band_resolved(const TorusSpec& spec, double top) {
  if (top * spec.lambda > spec.max_mode())
    throw std::invalid_argument("probe band exceeds the torus resolution");
}

}  // namespace

double spacetime_lp_pow(const SpectralField& phi, double T, int samples, double alpha,
                        double p) {
  SpectralField work = phi;
  const double h = work.spec.dx();
  const double inv_vol = 1.0 / work.spec.circumference();
  std::vector<Complex> buf(work.coeffs.size());
  return timestep_accumulate(
      {&work}, T, samples, alpha, [&](const std::vector<std::vector<Complex>>& state) {
        buf = state[0];
        fft::backward(buf);
        double acc = 0.0;
        for (const Complex& v : buf) acc += std::pow(std::abs(v) * inv_vol, p);
        return acc * h;
      });
}

double spacetime_bilinear_l2_sq(const SpectralField& phi1, const SpectralField& phi2,
                                double T, int samples, double alpha) {
  if (!(phi1.spec == phi2.spec))
    throw std::invalid_argument("bilinear integral: fields live on different tori");
  SpectralField w1 = phi1, w2 = phi2;
  const double h = w1.spec.dx();
  const double inv_vol = 1.0 / w1.spec.circumference();
  std::vector<Complex> b1(w1.coeffs.size()), b2(w2.coeffs.size());
  return timestep_accumulate(
      {&w1, &w2}, T, samples, alpha, [&](const std::vector<std::vector<Complex>>& state) {
        b1 = state[0];
        b2 = state[1];
        fft::backward(b1);
        fft::backward(b2);
        double acc = 0.0;
        for (std::size_t i = 0; i < b1.size(); ++i)
          acc += std::norm(b1[i] * b2[i]) * (inv_vol * inv_vol) * (inv_vol * inv_vol);
        return acc * h;
      });
}

QuotientReport strichartz_l4_quotient(const StrichartzProbe& probe, int trials,
                                      std::uint64_t seed) {
  check_alpha(probe.alpha);
  const double T = probe.horizon, lam = probe.torus.lambda, N = probe.band_n;
  check_band_resolved(probe.torus, band_top(N));
  int required = required_time_samples(T, band_top(N), probe.alpha, 2);
  int samples = probe.time_samples > 0 ? probe.time_samples : required;
  if (samples < required)
    throw std::invalid_argument("time_samples " + std::to_string(samples) +
                                " cannot resolve the fastest phase; need >= " +
                                std::to_string(required));
  const double denom = T / lam + std::sqrt(T) * std::pow(N, 1.0 - probe.alpha);
  QuotientReport rep;
  rep.time_samples_used = samples;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(seed + 1000003ull * static_cast<std::uint64_t>(trial));
    SpectralField phi = probe_datum(probe, N, rng);
    double l2 = lp_norm(phi, 2.0);
    double num = spacetime_lp_pow(phi, T, samples, probe.alpha, 4.0);
    double l2sq = l2 * l2;
    rep.per_trial.push_back(num / (denom * l2sq * l2sq));
    rep.raw_per_trial.push_back(num / (l2sq * l2sq));
  }
  rep.max_quotient = *std::max_element(rep.per_trial.begin(), rep.per_trial.end());
  rep.max_raw = *std::max_element(rep.raw_per_trial.begin(), rep.raw_per_trial.end());
  return rep;
}

BilinearReport bilinear_quotient_for(const SpectralField& phi1, const SpectralField& phi2,
                                     double N1, double T, int time_samples, double alpha) {
  const double lam = phi1.spec.lambda;
  const double denom_refine = std::pow(N1, 1.0 - 2.0 * alpha);
  const double denom = T / lam + denom_refine;
  double n1sq = lp_norm(phi1, 2.0), n2sq = lp_norm(phi2, 2.0);
  n1sq *= n1sq;
  n2sq *= n2sq;
  double num = spacetime_bilinear_l2_sq(phi1, phi2, T, time_samples, alpha);
  const double diagonal = T * n1sq * n2sq / (2.0 * std::numbers::pi * lam);
  BilinearReport rep;
  rep.time_samples_used = time_samples;
  rep.per_trial.push_back(num / (denom * n1sq * n2sq));
  rep.excess_per_trial.push_back((num - diagonal) / (denom_refine * n1sq * n2sq));
  rep.max_quotient = rep.per_trial.back();
  rep.max_excess = rep.excess_per_trial.back();
  return rep;
}

BilinearReport bilinear_quotient(const StrichartzProbe& probe, int trials,
                                 std::uint64_t seed) {
  check_alpha(probe.alpha);
  const double N1 = probe.band_n, N2 = probe.band_n2;
  if (!(N1 >= 8.0 * N2) || !(N2 >= 1.0))
    throw std::invalid_argument("bilinear probe needs N1 >= 8 N2 >= 8");
  check_band_resolved(probe.torus, band_top(N1));
  int required = required_time_samples(probe.horizon, band_top(N1), probe.alpha, 2);
  int samples = probe.time_samples > 0 ? probe.time_samples : required;
  if (samples < required)
    throw std::invalid_argument("time_samples " + std::to_string(samples) +
                                " cannot resolve the fastest phase; need >= " +
                                std::to_string(required));
  BilinearReport rep;
  rep.time_samples_used = samples;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(seed + 2000003ull * static_cast<std::uint64_t>(trial));
    SpectralField phi1 = probe_datum(probe, N1, rng);
    SpectralField phi2 = probe_datum(probe, N2, rng);
    BilinearReport one =
        bilinear_quotient_for(phi1, phi2, N1, probe.horizon, samples, probe.alpha);
    rep.per_trial.push_back(one.per_trial.front());
    rep.excess_per_trial.push_back(one.excess_per_trial.front());
  }
  rep.max_quotient = *std::max_element(rep.per_trial.begin(), rep.per_trial.end());
  rep.max_excess = *std::max_element(rep.excess_per_trial.begin(), rep.excess_per_trial.end());
  return rep;
}

SharpExample sharp_bilinear_example(std::int64_t N1, std::int64_t N2, double alpha,
                                    const TorusSpec& torus) {
  check_alpha(alpha);
  if (torus.lambda != 1.0)
    throw std::invalid_argument("sharp_bilinear_example: defined on the unit torus");
  if (!(N1 >= 8 * N2) || N2 < 1)
    throw std::invalid_argument("sharp_bilinear_example: need N1 >= 8 N2 >= 8");
  SharpExample ex;
  const double halfpow = (2.0 * alpha - 1.0) / 2.0;
  ex.M1 = static_cast<std::int64_t>(
      std::floor(std::pow(static_cast<double>(N1) * static_cast<double>(N2), halfpow)));
  ex.M2 = static_cast<std::int64_t>(
      std::floor(std::pow(static_cast<double>(N2), 2.0 * alpha - 1.0)));
  if (N1 + ex.M1 > torus.max_mode())
    throw std::invalid_argument("sharp_bilinear_example: torus cannot resolve N1 + M1");
  ex.phi1 = block_field(torus, N1, ex.M1);
  ex.phi2 = block_field(torus, N2, ex.M2);
  return ex;
}

QuotientReport l6_quotient(const StrichartzProbe& probe, int trials, std::uint64_t seed) {
  check_alpha(probe.alpha);
  const double T = probe.horizon, lam = probe.torus.lambda, N = probe.band_n;
  const double lam2a = std::pow(lam, 2.0 * probe.alpha);
  if (T < lam2a)
    throw std::invalid_argument("l6 probe requires T >= lambda^{2 alpha}");
  check_band_resolved(probe.torus, band_top(N));
  int required = required_time_samples(T, band_top(N), probe.alpha, 3);
  int samples = probe.time_samples > 0 ? probe.time_samples : required;
  if (samples < required)
    throw std::invalid_argument("time_samples " + std::to_string(samples) +
                                " cannot resolve the fastest phase; need >= " +
                                std::to_string(required));
  constexpr double eps = 0.05;
  const double denom = std::pow(lam, eps) * std::pow(T / lam2a, 1.0 / 6.0) *
                       std::pow(N, (1.0 - probe.alpha) / 3.0 + eps);
  QuotientReport rep;
  rep.time_samples_used = samples;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(seed + 3000017ull * static_cast<std::uint64_t>(trial));
    SpectralField phi = probe_datum(probe, N, rng);
    double l2 = lp_norm(phi, 2.0);
    double num = std::pow(spacetime_lp_pow(phi, T, samples, probe.alpha, 6.0), 1.0 / 6.0);
    rep.per_trial.push_back(num / (denom * l2));
    rep.raw_per_trial.push_back(num / l2);
  }
  rep.max_quotient = *std::max_element(rep.per_trial.begin(), rep.per_trial.end());
  rep.max_raw = *std::max_element(rep.raw_per_trial.begin(), rep.raw_per_trial.end());
  return rep;
}

Complex propagated_value_at(const SpectralField& phi, double x, double t, double alpha) {
  Complex acc{};
  for (int m : phi.support_modes()) {
    double k = phi.spec.freq_of_mode(m);
    double phase = k * x + dispersion_symbol(k, alpha) * t;
    acc += phi.coeff_of_mode(m) * Complex{std::cos(phase), std::sin(phase)};
  }
  return acc / phi.spec.circumference();
}

TransferCheck l4_transfer_check(double lambda, double T, double N, double alpha,
                                int num_points, int trials, std::uint64_t seed) {
  StrichartzProbe scaled;
  scaled.torus = make_torus(lambda, num_points);
  scaled.alpha = alpha;
  scaled.band_n = N;
  scaled.horizon = T;
  QuotientReport scaled_rep = strichartz_l4_quotient(scaled, trials, seed);

  StrichartzProbe unit;
  unit.torus = make_torus(1.0, num_points);
  unit.alpha = alpha;
  unit.band_n = lambda * N;
  unit.horizon = T * std::pow(lambda, -2.0 * alpha);
  unit.time_samples = scaled_rep.time_samples_used;
  QuotientReport unit_rep = strichartz_l4_quotient(unit, trials, seed);

  TransferCheck chk;
  chk.c_lambda = scaled_rep.max_raw;
  chk.c_unit_predicted = std::pow(lambda, 2.0 * alpha - 1.0) * unit_rep.max_raw;
  chk.rel_dev = std::abs(chk.c_lambda - chk.c_unit_predicted) /
                std::max(chk.c_unit_predicted, 1e-300);
  return chk;
}

TransferCheck bilinear_transfer_check(double lambda, double T, double N1, double N2,
                                      double alpha, int num_points, int trials,
                                      std::uint64_t seed) {
  StrichartzProbe scaled;
  scaled.torus = make_torus(lambda, num_points);
  scaled.alpha = alpha;
  scaled.band_n = N1;
  scaled.band_n2 = N2;
  scaled.horizon = T;
  BilinearReport srep = bilinear_quotient(scaled, trials, seed);

  StrichartzProbe unit;
  unit.torus = make_torus(1.0, num_points);
  unit.alpha = alpha;
  unit.band_n = lambda * N1;
  unit.band_n2 = lambda * N2;
  unit.horizon = T * std::pow(lambda, -2.0 * alpha);
  unit.time_samples = srep.time_samples_used;
  BilinearReport urep = bilinear_quotient(unit, trials, seed);

  TransferCheck chk;
  chk.c_lambda = srep.max_quotient * (T / lambda + std::pow(N1, 1.0 - 2.0 * alpha));
  double c_unit = urep.max_quotient *
                  (unit.horizon + std::pow(lambda * N1, 1.0 - 2.0 * alpha));
  chk.c_unit_predicted = std::pow(lambda, 2.0 * alpha - 1.0) * c_unit;
  chk.rel_dev = std::abs(chk.c_lambda - chk.c_unit_predicted) /
                std::max(chk.c_unit_predicted, 1e-300);
  return chk;
}

TransferCheck l6_transfer_check(double lambda, double T, double N, double alpha,
                                int num_points, int trials, std::uint64_t seed) {
  StrichartzProbe scaled;
  scaled.torus = make_torus(lambda, num_points);
  scaled.alpha = alpha;
  scaled.band_n = N;
  scaled.horizon = T;
  QuotientReport srep = l6_quotient(scaled, trials, seed);

  StrichartzProbe unit;
  unit.torus = make_torus(1.0, num_points);
  unit.alpha = alpha;
  unit.band_n = lambda * N;
  unit.horizon = T * std::pow(lambda, -2.0 * alpha);
  unit.time_samples = srep.time_samples_used;
  QuotientReport urep = l6_quotient(unit, trials, seed);

  TransferCheck chk;
  chk.c_lambda = std::pow(srep.max_raw, 6.0);
  chk.c_unit_predicted = std::pow(lambda, 2.0 * alpha - 2.0) * std::pow(urep.max_raw, 6.0);
  chk.rel_dev = std::abs(chk.c_lambda - chk.c_unit_predicted) /
                std::max(chk.c_unit_predicted, 1e-300);
  return chk;
}

}  // namespace fnls
