#include "fnls/illposed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fnls/fft.hpp"

namespace fnls {
namespace {

int next_pow2(std::int64_t need) {
  int p = 4;
  while (p / 2 - 1 < need) p *= 2;
  return p;
}

SpectralField embed(const SpectralField& f, const TorusSpec& target) {
  SpectralField out = zero_field(target);
  for (int m : f.support_modes()) {
    if (std::abs(m) > target.max_mode())
      throw std::invalid_argument("embed: target grid cannot hold mode " + std::to_string(m));
    out.coeffs[static_cast<std::size_t>(target.index_of_mode(m))] = f.coeff_of_mode(m);
  }
  return out;
}

}  // namespace

IllposedDatum build_illposed_data(std::int64_t n, double s, double alpha,
                                  const TorusSpec& spec) {
  check_alpha(alpha);
  if (n < 1) throw std::invalid_argument("build_illposed_data: n must be >= 1");
  if (spec.lambda != 1.0)
    throw std::invalid_argument("build_illposed_data: datum lives on the unit torus");
  IllposedDatum d;
  d.n = n;
  d.s = s;
  d.alpha = alpha;
  d.l = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(n), 1.0 - alpha)));
  d.amplitude = std::pow(static_cast<double>(n), 0.5 * (alpha - 1.0) - s);
  if (n + d.l > spec.max_mode())
    throw std::invalid_argument("build_illposed_data: grid cannot resolve mode " +
                                std::to_string(n + d.l));
  std::vector<std::pair<int, Complex>> modes;
  const double coeff = d.amplitude * spec.circumference();
  for (std::int64_t k = 0; k <= d.l; ++k)
    modes.emplace_back(static_cast<int>(n + k), Complex{coeff, 0.0});
  d.field = synthesize_modes(spec, modes);
  return d;
}

GalileanReport galilean_error(const SpectralField& f, std::int64_t l, std::int64_t n,
                              double t, double alpha) {
  check_alpha(alpha);
  if (f.spec.lambda != 1.0)
    throw std::invalid_argument("galilean_error: defined on the unit torus");
  if (l < 0 || n < l) throw std::invalid_argument("galilean_error: need n >= l >= 0");
  for (int m : f.support_modes())
    if (std::abs(m) > l)
      throw std::invalid_argument("galilean_error: support reaches mode " + std::to_string(m) +
                                  ", beyond [-l, l]");
  if (n + l > f.spec.max_mode())
    throw std::invalid_argument("galilean_error: grid cannot resolve mode " +
                                std::to_string(n + l));

  const double nd = static_cast<double>(n);
  const double b = 2.0 * alpha * std::pow(nd, 2.0 * alpha - 1.0);
  const double carrier_phase = dispersion_symbol(nd, alpha) * t;
  GalileanReport rep;
  rep.bound_scale = std::abs(t) * static_cast<double>(l * l) * std::pow(nd, 2.0 * alpha - 2.0);
  rep.w = zero_field(f.spec);
  for (int m : f.support_modes()) {
    Complex fk = f.coeff_of_mode(m);
    double exact_phase = dispersion_symbol(nd + m, alpha) * t;
    double approx_phase = carrier_phase + m * b * t;
    Complex wk = fk * (Complex{std::cos(exact_phase), std::sin(exact_phase)} -
                       Complex{std::cos(approx_phase), std::sin(approx_phase)});
    rep.w.coeffs[static_cast<std::size_t>(rep.w.spec.index_of_mode(static_cast<int>(n + m)))] = wk;
    double bound = rep.bound_scale * std::abs(fk);
    double wa = std::abs(wk);
    if (bound == 0.0) {
      if (wa > 0.0) rep.max_ratio = std::numeric_limits<double>::infinity();
    } else {
      rep.max_ratio = std::max(rep.max_ratio, wa / bound);
    }
  }
  return rep;
}

DominanceReport convolution_dominance_check(const SpectralField& f, const SpectralField& g,
                                            int p, int q) {
  if (p < 1 || q < 1)
    throw std::invalid_argument("convolution_dominance_check: p, q must be positive");
  if (!(f.spec == g.spec))
    throw std::invalid_argument("convolution_dominance_check: spec mismatch");
  for (int i = 0; i < f.spec.num_points; ++i) {
    int m = f.spec.mode_of_index(i);
    Complex fv = f.coeffs[static_cast<std::size_t>(i)];
    if (fv.imag() != 0.0 || fv.real() < 0.0)
      throw std::invalid_argument("convolution_dominance_check: f-hat not >= 0 at mode " +
                                  std::to_string(m));
    double ga = std::abs(g.coeffs[static_cast<std::size_t>(i)]);
    if (ga > fv.real() * (1.0 + 1e-12))
      throw std::invalid_argument("convolution_dominance_check: |g-hat| > f-hat at mode " +
                                  std::to_string(m));
  }

  std::int64_t maxabs = 0;
  for (int m : f.support_modes()) maxabs = std::max<std::int64_t>(maxabs, std::abs(m));
  // The product of p+q band-limited factors needs a grid past twice its
  // bandwidth for an exact L² quadrature.
  TorusSpec wide = make_torus(f.spec.lambda, next_pow2(2 * (p + q) * maxabs + 2));
  auto fs = to_physical(embed(f, wide));
  auto gs = to_physical(embed(g, wide));

  double lhs_sq = 0.0, rhs_sq = 0.0;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    double fa = std::abs(fs[j]);
    double mixed = std::pow(fa, p) * std::pow(std::abs(gs[j]), q);
    double pure = std::pow(fa, p + q);
    lhs_sq += mixed * mixed;
    rhs_sq += pure * pure;
  }
  DominanceReport rep;
  rep.lhs = std::sqrt(lhs_sq * wide.dx());
  rep.rhs = std::sqrt(rhs_sq * wide.dx());
  rep.slack = rep.rhs - rep.lhs;
  rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-10);
  return rep;
}

namespace {

TorusSpec picard_spec(std::int64_t n, std::int64_t l) {
  // cubic image of modes [n, n+l] spans [n-l, n+2l]
  return make_torus(1.0, next_pow2(n + 2 * l + 2));
}

}  // namespace

double picard_iterate_hs_norm(std::int64_t n, double s, double alpha, double t,
                              int quad_nodes) {
  if (!(t > 0.0 && t <= 0.1))
    throw std::invalid_argument("picard_iterate_hs_norm: t must lie in (0, 0.1]");
  std::int64_t l =
      static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(n), 1.0 - alpha)));
  IllposedDatum d = build_illposed_data(n, s, alpha, picard_spec(n, l));
  SpectralField iterate = duhamel_nonlinear(d.field, t, alpha, quad_nodes);
  return sobolev_norm(iterate, s);
}

PicardReport picard_growth_experiment(double s, double alpha,
                                      const std::vector<std::int64_t>& n_list, double t,
                                      int quad_nodes) {
  check_alpha(alpha);
  if (n_list.size() < 2)
    throw std::invalid_argument("picard_growth_experiment: need at least two n values");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw std::invalid_argument("picard_growth_experiment: n_list must increase strictly");
  if (!(t > 0.0 && t <= 0.1))
    throw std::invalid_argument("picard_growth_experiment: t must lie in (0, 0.1]");

  PicardReport rep;
  rep.predicted_exponent = 1.0 - alpha - 2.0 * s;
  std::vector<double> log_n, log_hs, log_corrected;
  for (std::int64_t n : n_list) {
    std::int64_t l =
        static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(n), 1.0 - alpha)));
    TorusSpec spec = picard_spec(n, l);
    IllposedDatum d = build_illposed_data(n, s, alpha, spec);
    SpectralField iterate = duhamel_nonlinear(d.field, t, alpha, quad_nodes);
    double hs = sobolev_norm(iterate, s);

    // Model norm t n^s ‖ψ(f)‖₂ for the unshifted block f; exact up to
    // quadrature, used to remove the ⌊n^{1-α}⌋ staircase from the fit.
    TorusSpec small = make_torus(1.0, next_pow2(3 * l + 2));
    std::vector<std::pair<int, Complex>> modes;
    for (std::int64_t k = 0; k <= l; ++k)
      modes.emplace_back(static_cast<int>(k),
                         Complex{d.amplitude * small.circumference(), 0.0});
    SpectralField f_block = synthesize_modes(small, modes);
    auto samples = to_physical(f_block);
    double psi_l2_sq = 0.0;
    for (const Complex& v : samples) {
      double m2 = std::norm(v);
      psi_l2_sq += m2 * m2 * m2;  // |ψ(f)|² = |f|⁶
    }
    double model = t * std::pow(static_cast<double>(n), s) * std::sqrt(psi_l2_sq * small.dx());

    rep.ns.push_back(n);
    rep.ls.push_back(l);
    rep.hs_norms.push_back(hs);
    rep.model_norms.push_back(model);
    rep.datum_hs.push_back(sobolev_norm(d.field, s));

    double nd = static_cast<double>(n);
    // ideal (staircase-free) block scale: a³ n^{5(1-α)/2}
    double ideal = std::pow(nd, 3.0 * (0.5 * (alpha - 1.0) - s) + 2.5 * (1.0 - alpha));
    double staircase = std::sqrt(psi_l2_sq * small.dx()) / ideal;
    log_n.push_back(std::log(nd));
    log_hs.push_back(std::log(hs));
    log_corrected.push_back(std::log(hs / staircase));
  }
  rep.raw_fit = fit_line(log_n, log_hs);
  rep.corrected_fit = fit_line(log_n, log_corrected);
  return rep;
}

}  // namespace fnls
