#include "fnls/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fnls/fft.hpp"
#include "fnls/util.hpp"

namespace fnls {

void check_alpha(double alpha) {
  if (!(alpha > 0.5 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in (1/2, 1], got " + std::to_string(alpha));
}

std::vector<int> SpectralField::support_modes() const {
  std::vector<int> out;
  for (int i = 0; i < spec.num_points; ++i)
    if (coeffs[static_cast<std::size_t>(i)] != Complex{}) out.push_back(spec.mode_of_index(i));
  std::sort(out.begin(), out.end());
  return out;
}

SpectralField zero_field(const TorusSpec& spec) {
  return SpectralField{spec, std::vector<Complex>(static_cast<std::size_t>(spec.num_points))};
}

SpectralField synthesize_modes(const TorusSpec& spec,
                               const std::vector<std::pair<int, Complex>>& modes) {
  SpectralField f = zero_field(spec);
  for (const auto& [m, v] : modes) {
    if (std::abs(m) > spec.max_mode())
      throw std::invalid_argument("synthesize: frequency " +
                                  std::to_string(spec.freq_of_mode(m)) +
                                  " beyond K_max = " + std::to_string(spec.k_max()));
    f.coeffs[static_cast<std::size_t>(spec.index_of_mode(m))] = v;
  }
  return f;
}

SpectralField synthesize(const TorusSpec& spec,
                         const std::vector<std::pair<double, Complex>>& coeffs) {
  std::vector<std::pair<int, Complex>> modes;
  modes.reserve(coeffs.size());
  for (const auto& [k, v] : coeffs) {
    double m_real = k * spec.lambda;
    double m_round = std::round(m_real);
    if (std::abs(m_real - m_round) > 1e-9 * std::max(1.0, std::abs(m_real)))
      throw std::invalid_argument("synthesize: frequency " + std::to_string(k) +
                                  " is not on the lattice (1/lambda)Z");
    modes.emplace_back(static_cast<int>(m_round), v);
  }
  return synthesize_modes(spec, modes);
}

std::vector<Complex> to_physical(const SpectralField& f) {
  // f(x_j) = (1/2πλ) Σ_m û(m/λ) e^{2πi mj/P}
  std::vector<Complex> samples = f.coeffs;
  fft::backward(samples);
  const double scale = 1.0 / f.spec.circumference();
  for (auto& s : samples) s *= scale;
  return samples;
}

SpectralField from_physical(const TorusSpec& spec, const std::vector<Complex>& samples) {
  if (static_cast<int>(samples.size()) != spec.num_points)
    throw std::invalid_argument("from_physical: sample count does not match spec");
  SpectralField f{spec, samples};
  fft::forward(f.coeffs);
  const double h = spec.dx();
  for (auto& c : f.coeffs) c *= h;  // û(k) = Σ_j f(x_j) e^{-ikx_j} h
  return f;
}

Complex inner_product(const SpectralField& f, const SpectralField& g) {
  if (!(f.spec == g.spec)) throw std::invalid_argument("inner_product: spec mismatch");
  std::vector<Complex> terms(f.coeffs.size());
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) terms[i] = f.coeffs[i] * std::conj(g.coeffs[i]);
  return pairwise_sum(terms) / f.spec.circumference();
}

double lp_norm(const SpectralField& f, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const Complex& v : to_physical(f)) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1 or infinity");
  const auto samples = to_physical(f);
  std::vector<double> terms(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) terms[j] = std::pow(std::abs(samples[j]), p);
  double integral = pairwise_sum(terms) * f.spec.dx();
  return std::pow(integral, 1.0 / p);
}

double sobolev_norm(const SpectralField& f, double s, bool homogeneous) {
  std::vector<double> terms(f.coeffs.size());
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    double k = f.spec.freq_of_mode(f.spec.mode_of_index(static_cast<int>(i)));
    double w;
    if (homogeneous)
      w = (k == 0.0) ? (s == 0.0 ? 1.0 : 0.0) : std::pow(k * k, s);
    else
      w = bracket_weight(k, 2.0 * s);
    terms[i] = w * std::norm(f.coeffs[i]);
  }
  return std::sqrt(pairwise_sum(terms) / f.spec.circumference());
}

Band Band::dyadic(double N) {
  Band b;
  b.is_dyadic = true;
  b.N = N;
  return b;
}

Band Band::interval(double lo, double hi) {
  Band b;
  b.intervals.emplace_back(lo, hi);
  return b;
}

Band Band::interval_union(std::vector<std::pair<double, double>> ivs) {
  Band b;
  b.intervals = std::move(ivs);
  return b;
}

bool Band::contains(double k) const {
  if (is_dyadic) {
    if (N <= 1.0) return std::abs(k) <= 1.0;
    return std::abs(k) > N / 2.0 && std::abs(k) <= N;
  }
  for (const auto& [lo, hi] : intervals)
    if (k >= lo && k <= hi) return true;
  return false;
}

SpectralField project(const SpectralField& f, const Band& band) {
  SpectralField g = f;
  for (int i = 0; i < g.spec.num_points; ++i) {
    double k = g.spec.freq_of_mode(g.spec.mode_of_index(i));
    if (!band.contains(k)) g.coeffs[static_cast<std::size_t>(i)] = Complex{};
  }
  return g;
}

SpectralField propagate(const SpectralField& f, double t, double alpha) {
  check_alpha(alpha);
  SpectralField g = f;
  for (int i = 0; i < g.spec.num_points; ++i) {
    double k = g.spec.freq_of_mode(g.spec.mode_of_index(i));
    double phase = dispersion_symbol(k, alpha) * t;
    g.coeffs[static_cast<std::size_t>(i)] *= Complex{std::cos(phase), std::sin(phase)};
  }
  return g;
}

SpectralField rescale_down(const SpectralField& u0, double lambda, double alpha,
                           std::optional<int> target_points) {
  check_alpha(alpha);
  if (u0.spec.lambda != 1.0)
    throw std::invalid_argument("rescale_down: source must live on the unit torus");
  if (!(lambda >= 1.0)) throw std::invalid_argument("rescale_down: lambda must be >= 1");
  TorusSpec target = make_torus(lambda, target_points.value_or(u0.spec.num_points));
  SpectralField out = zero_field(target);
  const double amp = std::pow(lambda, 1.0 - alpha);
  for (int i = 0; i < u0.spec.num_points; ++i) {
    int m = u0.spec.mode_of_index(i);
    Complex v = u0.coeffs[static_cast<std::size_t>(i)];
    if (v == Complex{}) continue;
    if (std::abs(m) > target.max_mode())
      throw std::invalid_argument("rescale_down: target resolution cannot hold mode " +
                                  std::to_string(m));
    out.coeffs[static_cast<std::size_t>(target.index_of_mode(m))] = amp * v;
  }
  return out;
}

SpectralField rescale_up(const SpectralField& u_lambda, double alpha,
                         std::optional<int> target_points) {
  check_alpha(alpha);
  const double lambda = u_lambda.spec.lambda;
  TorusSpec target = make_torus(1.0, target_points.value_or(u_lambda.spec.num_points));
  SpectralField out = zero_field(target);
  const double amp = std::pow(lambda, alpha - 1.0);
  for (int i = 0; i < u_lambda.spec.num_points; ++i) {
    int m = u_lambda.spec.mode_of_index(i);
    Complex v = u_lambda.coeffs[static_cast<std::size_t>(i)];
    if (v == Complex{}) continue;
    if (std::abs(m) > target.max_mode())
      throw std::invalid_argument("rescale_up: target resolution cannot hold mode " +
                                  std::to_string(m));
    out.coeffs[static_cast<std::size_t>(target.index_of_mode(m))] = amp * v;
  }
  return out;
}

}  // namespace fnls
