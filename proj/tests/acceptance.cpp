// Acceptance suite: one check per criterion, each printing a PASS/FAIL line
// with the measured numbers. Run everything, `--run <id>` for one criterion,
// `--list` for the catalog. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fnls/dynamics.hpp"
#include "fnls/estimates.hpp"
#include "fnls/fit.hpp"
#include "fnls/illposed.hpp"
#include "fnls/imethod.hpp"
#include "fnls/rng.hpp"
#include "fnls/spectral_field.hpp"

using namespace fnls;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [FAILED: " << what << "]";
    }
  }
};

SpectralField thirty_two_mode_datum(const TorusSpec& spec, double amplitude,
                                    std::uint64_t seed) {
  Rng rng(seed);
  SpectralField f = zero_field(spec);
  for (int m = -16; m <= 15; ++m)
    f.coeffs[static_cast<std::size_t>(spec.index_of_mode(m))] =
        amplitude * spec.circumference() * rng.unit_phase();
  return f;
}

double max_rel_drift(const std::vector<double>& v) {
  double base = v.front(), worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x - base));
  return worst / std::abs(base);
}

// 1. mass and energy conservation, with second-order energy drift
Outcome criterion_conservation() {
  Outcome out;
  for (double alpha : {0.6, 0.75, 0.9}) {
    TorusSpec spec = make_torus(1.0, 256);
    SpectralField u0 = thirty_two_mode_datum(spec, 0.18, 2026);
    auto drift = [&](double dt) {
      EvolutionConfig cfg;
      cfg.alpha = alpha;
      cfg.dt = dt;
      cfg.t_end = 1.0;
      Trajectory traj = evolve(u0, cfg);
      double md = max_rel_drift(traj.masses);
      out.require(md <= 1e-9, "mass drift " + std::to_string(md));
      return max_rel_drift(traj.energies);
    };
    double e1 = drift(1e-3);
    double e2 = drift(5e-4);
    double ratio = e1 / e2;
    out.detail << " alpha=" << alpha << ": energy drift " << e1 << ", halving ratio "
               << ratio << ";";
    out.require(e1 <= 1e-5, "energy drift above 1e-5");
    out.require(ratio >= 3.0 && ratio <= 5.0, "halving ratio outside 4 +- 1");
  }
  return out;
}

// 2. exact single-mode solution
Outcome criterion_single_mode() {
  Outcome out;
  TorusSpec spec = make_torus(1.0, 64);
  const double a = 0.8;
  const int mode = 2;
  for (double alpha : {0.75, 1.0}) {
    EvolutionConfig cfg;
    cfg.alpha = alpha;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    SpectralField u0 =
        synthesize_modes(spec, {{mode, Complex{a * spec.circumference(), 0.0}}});
    Trajectory traj = evolve(u0, cfg);
    const SpectralField& uT = traj.snapshots.back();
    double omega = dispersion_symbol(static_cast<double>(mode), alpha) + a * a;
    Complex expected = a * spec.circumference() *
                       std::exp(Complex{0.0, omega * traj.times.back()});
    double worst = 0.0;
    for (int m = -spec.num_points / 2; m <= spec.max_mode(); ++m) {
      Complex want = (m == mode) ? expected : Complex{};
      worst = std::max(worst, std::abs(uT.coeff_of_mode(m) - want));
    }
    double rel = worst / std::abs(expected);
    out.detail << " alpha=" << alpha << ": coeff error " << rel << ";";
    out.require(rel <= 1e-10, "coefficient error above 1e-10");
  }
  return out;
}

// 3. convexity lower bound
Outcome criterion_convexity() {
  Outcome out;
  for (double alpha : {0.6, 0.75, 0.9}) {
    ConvexityReport rep = convexity_gap_check(64, alpha);
    out.detail << " alpha=" << alpha << ": min " << rep.min_ratio << ";";
    out.require(rep.min_ratio > 0.0, "min ratio not positive");
  }
  ConvexityReport exact = convexity_gap_check(64, 1.0);
  out.detail << " alpha=1: min " << exact.min_ratio << " max " << exact.max_ratio << ";";
  out.require(exact.min_ratio == 2.0 && exact.max_ratio == 2.0,
              "alpha=1 ratio is not exactly 2 on every admissible tuple");
  return out;
}

// 4. boundedness of M4 against m(k3*)^2
Outcome criterion_m4_bound() {
  Outcome out;
  for (double N : {1.0, 4.0, 16.0}) {
    ModifiedEnergyParams p = make_params(0.75, 0.25, N);
    auto radius = static_cast<std::int64_t>(128.0 * N);
    M4ScanReport rep = m4_sup_scan(p, radius);
    double change = (rep.sup_full - rep.sup_half) / rep.sup_half;
    out.detail << " N=" << N << ": sup " << rep.sup_full << " (inner " << rep.sup_half
               << ", change " << change * 100.0 << "%, recheck dev "
               << rep.recheck_max_rel_dev << ");";
    out.require(std::isfinite(rep.sup_full), "sup not finite");
    out.require(std::abs(change) < 0.10, "sup moved >= 10% when the radius doubled");
    out.require(rep.recheck_max_rel_dev < 1e-6, "extended-precision recheck disagrees");
  }
  return out;
}

// 5. dE^2/dt along the flow equals the sextic functional
Outcome criterion_energy_identity() {
  Outcome out;
  TorusSpec spec = make_torus(1.0, 32);  // retained band after the 2/3 rule: 21 modes
  ModifiedEnergyParams p = make_params(0.75, 0.25, 2.0);
  Rng rng(99);
  SpectralField u0 = zero_field(spec);
  for (int m = -2; m <= 2; ++m)
    u0.coeffs[static_cast<std::size_t>(spec.index_of_mode(m))] =
        0.3 * spec.circumference() * rng.unit_phase();

  const double dt = 5e-5;
  const int total_steps = 1600, candidates = 16;
  std::vector<SpectralField> states;
  SpectralField u = u0;
  for (int step = 1; step <= total_steps; ++step) {
    u = strang_step(u, dt, p.alpha, true);
    if (step % (total_steps / candidates) == 0) states.push_back(u);
  }
  std::vector<std::pair<double, std::size_t>> magnitudes;
  std::vector<double> rates(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    rates[i] = e2_growth_rate(states[i], p);
    magnitudes.emplace_back(std::abs(rates[i]), i);
  }
  std::sort(magnitudes.rbegin(), magnitudes.rend());

  double worst = 0.0;
  for (int pick = 0; pick < 10; ++pick) {
    std::size_t i = magnitudes[static_cast<std::size_t>(pick)].second;
    SpectralField up = strang_step(states[i], dt, p.alpha, true);
    SpectralField um = strang_step(states[i], -dt, p.alpha, true);
    double cdiff = (e2(up, p) - e2(um, p)) / (2.0 * dt);
    double rel = std::abs(cdiff - rates[i]) / std::abs(rates[i]);
    worst = std::max(worst, rel);
  }
  double tol = std::max(1e-4, 100.0 * dt * dt);
  out.detail << " worst relative error " << worst << " over 10 samples (tol " << tol << ")";
  out.require(worst <= tol, "identity mismatch");
  return out;
}

// 6. |E2-E1| / ||Iu||_{H^alpha}^4 decays like N^{-alpha}
Outcome criterion_e2_vs_e1() {
  Outcome out;
  const double alpha = 0.75, s = 0.25;
  TorusSpec spec = make_torus(1.0, 1024);
  const int instances = 6;
  std::vector<double> ns{4.0, 8.0, 16.0, 32.0}, ratios;
  for (double N : ns) {
    ModifiedEnergyParams p = make_params(alpha, s, N);
    double worst = 0.0;
    for (int inst = 0; inst < instances; ++inst) {
      Rng rng(500 + static_cast<std::uint64_t>(inst));
      SpectralField u = zero_field(spec);
      for (int m = -128; m <= 128; ++m) {
        if (m == 0) continue;
        double rho = std::pow(std::abs(static_cast<double>(m)), -0.5);
        u.coeffs[static_cast<std::size_t>(spec.index_of_mode(m))] =
            rho * spec.circumference() * rng.unit_phase();
      }
      double hi = sobolev_norm(apply_I(u, p), alpha);
      double gap = std::abs(e2(u, p) - e1(u, p));
      worst = std::max(worst, gap / std::pow(hi, 4.0));
    }
    ratios.push_back(worst);
    out.detail << " N=" << N << ": ratio " << worst << ";";
  }
  LineFit fit = fit_loglog(ns, ratios);
  out.detail << " slope " << fit.slope;
  out.require(fit.slope <= -alpha + 0.2, "ratio slope above -alpha + 0.2");
  return out;
}

// 7. bilinear Strichartz: bounded quotients at T=1, sharp example within 8x
// of the random maximum, and the N1^{1-2alpha} refinement trend. At T=1 the
// T/lambda diagonal dominates the estimate and hides the refinement term, so
// the trend is read off at the example's admissibility horizon
// T = (N1 N2)^{1-2alpha}, where both terms of the bound scale like
// N1^{1-2alpha} and the raw space-time ratio exposes the predicted power.
Outcome criterion_bilinear() {
  Outcome out;
  const double alpha = 0.75, T = 1.0, n2 = 4.0;
  std::vector<double> n1s{32.0, 64.0, 128.0};
  std::vector<double> rand_max, sharp_quot, sharp_short;
  for (double n1 : n1s) {
    StrichartzProbe probe;
    probe.torus = make_torus(1.0, 512);
    probe.alpha = alpha;
    probe.band_n = n1;
    probe.band_n2 = n2;
    probe.horizon = T;
    BilinearReport rep = bilinear_quotient(probe, 64, 7100);
    rand_max.push_back(rep.max_quotient);

    SharpExample ex = sharp_bilinear_example(static_cast<std::int64_t>(n1),
                                             static_cast<std::int64_t>(n2), alpha,
                                             probe.torus);
    double top = n1 + static_cast<double>(ex.M1);
    int samples = required_time_samples(T, top, alpha, 2);
    BilinearReport sharp = bilinear_quotient_for(ex.phi1, ex.phi2, n1, T, samples, alpha);
    sharp_quot.push_back(sharp.max_quotient);

    double t_short = std::pow(n1 * n2, 1.0 - 2.0 * alpha);
    int sshort = required_time_samples(t_short, top, alpha, 2);
    double num = spacetime_bilinear_l2_sq(ex.phi1, ex.phi2, t_short, sshort, alpha);
    double m1 = lp_norm(ex.phi1, 2.0), m2 = lp_norm(ex.phi2, 2.0);
    sharp_short.push_back(num / (m1 * m1 * m2 * m2));
    out.detail << " N1=" << n1 << ": rand " << rep.max_quotient << ", sharp "
               << sharp.max_quotient << ", short-horizon ratio " << sharp_short.back()
               << ";";
  }
  LineFit bound_fit = fit_loglog(n1s, rand_max);
  out.detail << " quotient slope " << bound_fit.slope << ";";
  out.require(bound_fit.slope <= 0.1, "random quotient slope above 0.1");
  for (std::size_t i = 0; i < n1s.size(); ++i) {
    double f = sharp_quot[i] / rand_max[i];
    out.require(f >= 0.125 && f <= 8.0, "sharp quotient not within 8x of random max");
  }
  LineFit refine_fit = fit_loglog(n1s, sharp_short);
  out.detail << " refinement slope " << refine_fit.slope << " (predicted "
             << 1.0 - 2.0 * alpha << ")";
  out.require(std::abs(refine_fit.slope - (1.0 - 2.0 * alpha)) <= 0.15,
              "refinement slope misses 1-2alpha by more than 0.15");
  return out;
}

// 8. L6 estimate: growth exponent within the decoupling budget
Outcome criterion_l6() {
  Outcome out;
  const double alpha = 0.75;
  std::vector<double> ns{8.0, 16.0, 32.0, 64.0}, raw;
  for (double n : ns) {
    StrichartzProbe probe;
    probe.torus = make_torus(1.0, 512);
    probe.alpha = alpha;
    probe.band_n = n;
    probe.horizon = 1.0;
    QuotientReport rep = l6_quotient(probe, 64, 8100);
    StrichartzProbe block = probe;
    block.data_kind = StrichartzProbe::DataKind::block_exponential_sum;
    QuotientReport brep = l6_quotient(block, 1, 8100);
    raw.push_back(std::max(rep.max_raw, brep.max_raw));
    out.detail << " N=" << n << ": growth " << raw.back() << ";";
  }
  LineFit fit = fit_loglog(ns, raw);
  double budget = (1.0 - alpha) / 3.0 + 0.1;
  out.detail << " slope " << fit.slope << " (budget " << budget << ")";
  out.require(fit.slope <= budget, "L6 growth exponent above budget");
  return out;
}

// 9. rescaling transfer of the L4 constant
Outcome criterion_transfer() {
  Outcome out;
  TransferCheck chk = l4_transfer_check(4.0, 1.0, 8.0, 0.75, 256, 16, 9100);
  out.detail << " C_lambda " << chk.c_lambda << " vs predicted " << chk.c_unit_predicted
             << ", rel dev " << chk.rel_dev;
  out.require(chk.rel_dev <= 0.02, "lambda transfer off by more than 2%");
  return out;
}

// 10. approximate Galilean identity with certified error bound
Outcome criterion_galilean() {
  Outcome out;
  const double alpha = 0.75;
  double worst = 0.0;
  for (std::int64_t n : {64, 128, 256, 512, 1024, 2048}) {
    auto l = static_cast<std::int64_t>(
        std::floor(std::pow(static_cast<double>(n), 1.0 - alpha)));
    int points = 4;
    while (points / 2 - 1 < n + l) points *= 2;
    TorusSpec spec = make_torus(1.0, points);
    Rng rng(static_cast<std::uint64_t>(n));
    std::vector<std::pair<int, Complex>> modes;
    for (std::int64_t k = -l; k <= l; ++k)
      modes.emplace_back(static_cast<int>(k), rng.complex_gaussian());
    SpectralField f = synthesize_modes(spec, modes);
    for (double t : {0.01, 0.1}) {
      GalileanReport rep = galilean_error(f, l, n, t, alpha);
      worst = std::max(worst, rep.max_ratio);
    }
  }
  out.detail << " worst certified ratio " << worst;
  out.require(worst <= 1.0 + 1e-9, "Galilean error bound violated");
  return out;
}

// 11. convolution dominance on randomized instances
Outcome criterion_dominance() {
  Outcome out;
  TorusSpec spec = make_torus(1.0, 64);
  Rng rng(1100);
  const std::vector<std::pair<int, int>> pqs{{1, 1}, {2, 1}, {1, 2}};
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    auto [p, q] = pqs[static_cast<std::size_t>(i) % pqs.size()];
    SpectralField f = zero_field(spec);
    for (int m = -5; m <= 5; ++m)
      f.coeffs[static_cast<std::size_t>(spec.index_of_mode(m))] = Complex{rng.uniform(), 0.0};
    SpectralField g = f;
    for (auto& c : g.coeffs)
      if (c != Complex{}) c *= rng.unit_phase() * rng.uniform();
    if (!convolution_dominance_check(f, g, p, q).holds) ++violations;
  }
  out.detail << " violations " << violations << " / 1000";
  out.require(violations == 0, "dominance violated");
  return out;
}

// 12. Picard-iterate growth exponents and t-linearity
Outcome criterion_picard() {
  Outcome out;
  const double alpha = 0.75, t = 0.05;
  const std::vector<std::int64_t> ns{64, 128, 256, 512, 1024, 2048};
  struct Case {
    double s, expected, tol;
  };
  for (const Case c : {Case{0.0, 0.25, 0.05}, Case{0.05, 0.15, 0.05}}) {
    PicardReport rep = picard_growth_experiment(c.s, alpha, ns, t);
    out.detail << " s=" << c.s << ": exponent " << rep.corrected_fit.slope << " (raw "
               << rep.raw_fit.slope << ");";
    out.require(std::abs(rep.corrected_fit.slope - c.expected) <= c.tol,
                "exponent misses 1-alpha-2s");
  }
  PicardReport threshold = picard_growth_experiment(0.125, alpha, ns, t);
  out.detail << " s=s_g: exponent " << threshold.corrected_fit.slope << ";";
  out.require(std::abs(threshold.corrected_fit.slope) <= 0.02,
              "threshold exponent not ~0");

  std::vector<double> lt, ln;
  for (double tt : {0.0125, 0.025, 0.05, 0.1}) {
    lt.push_back(std::log(tt));
    ln.push_back(std::log(picard_iterate_hs_norm(256, 0.0, alpha, tt)));
  }
  LineFit tfit = fit_line(lt, ln);
  out.detail << " t-slope " << tfit.slope;
  out.require(std::abs(tfit.slope - 1.0) <= 0.05, "t-linearity slope off");
  return out;
}

// 13. lambda selection keeps E1 * lambda^{2alpha-1} of unit size. The datum
// sits at the H^s regularity edge (spectrum ~ <m>^{-s-1/2}), the population
// the selection formula is calibrated for; smooth data would only see the
// one-sided O(1) bound.
Outcome criterion_lambda_selection() {
  Outcome out;
  const double alpha = 0.75, s = 0.25;
  TorusSpec unit = make_torus(1.0, 1 << 20);
  Rng rng(1300);
  SpectralField u0 = zero_field(unit);
  for (int m = -unit.max_mode(); m <= unit.max_mode(); ++m) {
    double rho = std::pow(1.0 + static_cast<double>(m) * m, -0.5 * (s + 0.5));
    u0.coeffs[static_cast<std::size_t>(unit.index_of_mode(m))] = rho * rng.unit_phase();
  }
  double hs = sobolev_norm(u0, s);
  for (auto& c : u0.coeffs) c /= hs;

  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double N : {4.0, 16.0, 64.0}) {
    ModifiedEnergyParams p = make_params(alpha, s, N);
    double lambda = std::pow(N, (alpha - s) / s);
    double product = e1(rescale_down(u0, lambda, alpha), p) *
                     std::pow(lambda, 2.0 * alpha - 1.0);
    out.detail << " N=" << N << ": lambda " << lambda << ", E1*lambda^{2a-1} " << product
               << ";";
    lo = std::min(lo, product);
    hi = std::max(hi, product);
  }
  out.detail << " spread " << hi / lo;
  out.require(hi / lo <= 10.0, "E1 lambda product varies by more than 10x");
  return out;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> fn;
};

const std::vector<Criterion>& catalog() {
  static const std::vector<Criterion> cs{
      {1, "conservation", criterion_conservation},
      {2, "single-mode exact solution", criterion_single_mode},
      {3, "convexity gap", criterion_convexity},
      {4, "M4 bound", criterion_m4_bound},
      {5, "energy derivative identity", criterion_energy_identity},
      {6, "E2 vs E1 scaling", criterion_e2_vs_e1},
      {7, "bilinear Strichartz", criterion_bilinear},
      {8, "L6 Strichartz", criterion_l6},
      {9, "rescaling transfer", criterion_transfer},
      {10, "Galilean error bound", criterion_galilean},
      {11, "convolution dominance", criterion_dominance},
      {12, "Picard growth", criterion_picard},
      {13, "lambda selection", criterion_lambda_selection},
  };
  return cs;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--list") == 0) {
      for (const Criterion& c : catalog()) std::cout << c.id << "\t" << c.name << "\n";
      return 0;
    }
    if (std::strcmp(argv[i], "--run") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }

  int failures = 0;
  for (const Criterion& c : catalog()) {
    if (only != 0 && c.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [EXCEPTION: " << e.what() << "]";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "[" << (c.id < 10 ? " " : "") << c.id << "] "
              << (out.pass ? "PASS" : "FAIL") << " " << c.name << ":" << out.detail.str()
              << " (" << secs << " s)" << std::endl;
    if (!out.pass) ++failures;
  }
  return failures;
}
