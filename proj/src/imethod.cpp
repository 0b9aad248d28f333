#include "fnls/imethod.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fnls/dynamics.hpp"

namespace fnls {
namespace {

double smoothstep(double tau, G1Variant v) {
  tau = std::clamp(tau, 0.0, 1.0);
  if (v == G1Variant::quintic) return tau * tau * tau * (tau * (6.0 * tau - 15.0) + 10.0);
  return tau * tau * (3.0 - 2.0 * tau);
}

/// g_N(k)^β = g1(k/N)^β, evaluated as exp(-β h(log x) log x) so arbitrary
/// powers share one code path and the mandated branches stay exact.
double g_n_pow(double k, double N, double beta, G1Variant v) {
  double ax = std::abs(k) / N;
  if (ax <= 1.0 || beta == 0.0) return 1.0;
  double u = std::log(ax);
  double h = (ax > 2.0) ? 1.0 : smoothstep(u / std::numbers::ln2, v);
  return std::exp(-beta * h * u);
}

}  // namespace

double g1(double x, G1Variant variant) { return g_n_pow(x, 1.0, 1.0, variant); }

ModifiedEnergyParams make_params(double alpha, double s, double N, G1Variant variant) {
  if (!(alpha > 0.5 && alpha < 1.0))
    throw std::invalid_argument("ModifiedEnergyParams: alpha must lie in (1/2, 1)");
  if (!(s >= 0.5 * (1.0 - alpha) && s < alpha))
    throw std::invalid_argument("ModifiedEnergyParams: need (1-alpha)/2 <= s < alpha");
  if (!(N >= 1.0)) throw std::invalid_argument("ModifiedEnergyParams: N must be >= 1");
  return ModifiedEnergyParams{alpha, s, N, variant};
}

double i_multiplier(double k, const ModifiedEnergyParams& p) {
  return g_n_pow(k, p.N, p.beta(), p.variant);
}

SpectralField apply_I(const SpectralField& f, const ModifiedEnergyParams& p,
                      std::optional<double> beta_override) {
  double beta = beta_override.value_or(p.beta());
  if (beta < 0.0) throw std::invalid_argument("apply_I: beta must be >= 0");
  SpectralField g = f;
  for (int i = 0; i < g.spec.num_points; ++i) {
    double k = g.spec.freq_of_mode(g.spec.mode_of_index(i));
    g.coeffs[static_cast<std::size_t>(i)] *= g_n_pow(k, p.N, beta, p.variant);
  }
  return g;
}

FrequencyTuple make_tuple(std::initializer_list<std::int64_t> ms, double lambda) {
  auto n = static_cast<int>(ms.size());
  if (n != 2 && n != 4 && n != 6)
    throw std::invalid_argument("FrequencyTuple: order must be 2, 4 or 6");
  FrequencyTuple t;
  t.order = n;
  t.lambda = lambda;
  std::int64_t sum = 0;
  int j = 0;
  for (std::int64_t m : ms) {
    t.modes[static_cast<std::size_t>(j++)] = m;
    sum += m;
  }
  if (sum != 0) throw std::invalid_argument("FrequencyTuple: lattice indices must sum to zero");
  return t;
}

double m4(const FrequencyTuple& t, const ModifiedEnergyParams& p) {
  if (t.order != 4) throw std::invalid_argument("m4: tuple must have order 4");
  const auto& M = t.modes;
  double f[4], g[4], mm[4];
  double a1star = 0.0;
  for (int j = 0; j < 4; ++j) {
    double k = t.freq(j);
    mm[j] = i_multiplier(k, p);
    g[j] = dispersion_symbol(k, p.alpha);
    f[j] = g[j] * mm[j] * mm[j];
    a1star = std::max(a1star, std::abs(k));
  }
  bool resonant = (M[0] + M[1] == 0) || (M[1] + M[2] == 0);
  double den = (g[0] + g[2]) - (g[1] + g[3]);
  if (!resonant &&
      std::abs(den) < kResonantEps * (dispersion_symbol(a1star, p.alpha) + 1.0))
    resonant = true;
  if (resonant) return mm[0] * mm[1] * mm[2] * mm[3];
  double num = (f[0] + f[2]) - (f[1] + f[3]);
  return num / den;
}

double m6(const FrequencyTuple& t, const ModifiedEnergyParams& p) {
  if (t.order != 6) throw std::invalid_argument("m6: tuple must have order 6");
  const auto& m = t.modes;
  auto merged = [&](int pos) {
    FrequencyTuple q;
    q.order = 4;
    q.lambda = t.lambda;
    int out = 0;
    for (int j = 0; j < 6;) {
      if (j == pos) {
        q.modes[static_cast<std::size_t>(out++)] = m[static_cast<std::size_t>(j)] +
                                                   m[static_cast<std::size_t>(j + 1)] +
                                                   m[static_cast<std::size_t>(j + 2)];
        j += 3;
      } else {
        q.modes[static_cast<std::size_t>(out++)] = m[static_cast<std::size_t>(j)];
        j += 1;
      }
    }
    return q;
  };
  return m4(merged(0), p) - m4(merged(1), p) + m4(merged(2), p) - m4(merged(3), p);
}

namespace {

// Dense coefficient views for direct Γ_n sums. ubar(m) = conj(û(-m)) is the
// transform of the conjugate field, used in even slots.
struct DenseField {
  std::int64_t maxabs = 0;
  std::vector<Complex> uval, ubar;
  std::vector<std::int64_t> supp_u, supp_ubar;
  double lambda = 1.0;

  Complex u(std::int64_t m) const {
    return (m < -maxabs || m > maxabs) ? Complex{}
                                       : uval[static_cast<std::size_t>(m + maxabs)];
  }
  Complex ub(std::int64_t m) const {
    return (m < -maxabs || m > maxabs) ? Complex{}
                                       : ubar[static_cast<std::size_t>(m + maxabs)];
  }
};

DenseField make_dense(const SpectralField& u) {
  DenseField d;
  d.lambda = u.spec.lambda;
  auto supp = u.support_modes();
  for (int m : supp) d.maxabs = std::max<std::int64_t>(d.maxabs, std::abs(m));
  d.uval.assign(static_cast<std::size_t>(2 * d.maxabs + 1), Complex{});
  d.ubar.assign(static_cast<std::size_t>(2 * d.maxabs + 1), Complex{});
  for (int m : supp) {
    Complex v = u.coeff_of_mode(m);
    d.uval[static_cast<std::size_t>(m + d.maxabs)] = v;
    d.ubar[static_cast<std::size_t>(-m + d.maxabs)] = std::conj(v);
    d.supp_u.push_back(m);
    d.supp_ubar.push_back(-m);
  }
  std::sort(d.supp_u.begin(), d.supp_u.end());
  std::sort(d.supp_ubar.begin(), d.supp_ubar.end());
  return d;
}

// Blocked pairwise accumulation; deterministic for a fixed visit order.
class Accumulator {
 public:
  void add(Complex v) {
    block_ += v;
    if (++filled_ == kBlock) {
      blocks_.push_back(block_);
      block_ = Complex{};
      filled_ = 0;
    }
  }
  Complex total() {
    std::vector<Complex> all = blocks_;
    if (filled_ > 0) all.push_back(block_);
    return pairwise_sum(all);
  }

 private:
  static constexpr int kBlock = 4096;
  Complex block_{};
  int filled_ = 0;
  std::vector<Complex> blocks_;
};

void check_budget(double evals, const LambdaBudget& budget) {
  if (evals > budget.max_multiplier_evals)
    throw BudgetError("lattice sum needs about " + std::to_string(evals) +
                      " multiplier evaluations, over the budget of " +
                      std::to_string(budget.max_multiplier_evals) +
                      "; reduce the spectral support or the grid size");
}

template <typename MultFn>
Complex lambda4_impl(const DenseField& d, MultFn&& mult, const LambdaBudget& budget) {
  double n = static_cast<double>(d.supp_u.size());
  check_budget(n * n * n, budget);
  Accumulator acc;
  for (std::int64_t a : d.supp_u) {
    Complex ua = d.u(a);
    for (std::int64_t b : d.supp_ubar) {
      Complex uab = ua * d.ub(b);
      for (std::int64_t c : d.supp_u) {
        std::int64_t e = -(a + b + c);
        Complex ue = d.ub(e);
        if (ue == Complex{}) continue;
        acc.add(mult(a, b, c, e) * uab * d.u(c) * ue);
      }
    }
  }
  double w = 1.0 / (2.0 * std::numbers::pi * d.lambda);
  return acc.total() * (w * w * w);
}

template <typename MultFn>
Complex lambda6_impl(const DenseField& d, MultFn&& mult, const LambdaBudget& budget) {
  double n = static_cast<double>(d.supp_u.size());
  check_budget(n * n * n * n * n, budget);
  auto na = static_cast<std::int64_t>(d.supp_u.size());
  std::vector<Complex> partials(static_cast<std::size_t>(thread_count()), Complex{});
  parallel_for_chunks(na, [&](std::int64_t lo, std::int64_t hi, int chunk) {
    Accumulator acc;
    std::int64_t m[6];
    for (std::int64_t ia = lo; ia < hi; ++ia) {
      m[0] = d.supp_u[static_cast<std::size_t>(ia)];
      Complex ua = d.u(m[0]);
      for (std::int64_t b : d.supp_ubar) {
        m[1] = b;
        Complex uab = ua * d.ub(b);
        for (std::int64_t c : d.supp_u) {
          m[2] = c;
          Complex uabc = uab * d.u(c);
          for (std::int64_t e : d.supp_ubar) {
            m[3] = e;
            Complex uabce = uabc * d.ub(e);
            for (std::int64_t f : d.supp_u) {
              m[4] = f;
              m[5] = -(m[0] + b + c + e + f);
              Complex last = d.ub(m[5]);
              if (last == Complex{}) continue;
              acc.add(mult(m) * uabce * d.u(f) * last);
            }
          }
        }
      }
    }
    partials[static_cast<std::size_t>(chunk)] = acc.total();
  });
  Complex total = pairwise_sum(partials);
  double w = 1.0 / (2.0 * std::numbers::pi * d.lambda);
  return total * (w * w * w * w * w);
}

// Table-backed multiplier pieces for the hot paths; indexed by |m|, covering
// merged arguments up to 3 * maxabs.
struct MultiplierTables {
  std::vector<double> sym;  // |k|^{2α}
  std::vector<double> mm;   // m(k)
  double lambda = 1.0;
  double alpha = 0.75;

  double f(std::int64_t a) const {
    auto i = static_cast<std::size_t>(std::llabs(a));
    return sym[i] * mm[i] * mm[i];
  }
  double g(std::int64_t a) const { return sym[static_cast<std::size_t>(std::llabs(a))]; }
  double m(std::int64_t a) const { return mm[static_cast<std::size_t>(std::llabs(a))]; }

  double m4_at(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t e) const {
    bool resonant = (a + b == 0) || (b + c == 0);
    double den = (g(a) + g(c)) - (g(b) + g(e));
    if (!resonant) {
      std::int64_t amax = std::max({std::llabs(a), std::llabs(b), std::llabs(c), std::llabs(e)});
      if (std::abs(den) < kResonantEps * (g(amax) + 1.0)) resonant = true;
    }
    if (resonant) return m(a) * m(b) * m(c) * m(e);
    double num = (f(a) + f(c)) - (f(b) + f(e));
    return num / den;
  }

  double m6_at(const std::int64_t* m) const {
    return m4_at(m[0] + m[1] + m[2], m[3], m[4], m[5]) -
           m4_at(m[0], m[1] + m[2] + m[3], m[4], m[5]) +
           m4_at(m[0], m[1], m[2] + m[3] + m[4], m[5]) -
           m4_at(m[0], m[1], m[2], m[3] + m[4] + m[5]);
  }
};

MultiplierTables make_tables(const ModifiedEnergyParams& p, double lambda,
                             std::int64_t max_index) {
  MultiplierTables t;
  t.lambda = lambda;
  t.alpha = p.alpha;
  t.sym.resize(static_cast<std::size_t>(max_index + 1));
  t.mm.resize(static_cast<std::size_t>(max_index + 1));
  for (std::int64_t a = 0; a <= max_index; ++a) {
    double k = static_cast<double>(a) / lambda;
    t.sym[static_cast<std::size_t>(a)] = dispersion_symbol(k, p.alpha);
    t.mm[static_cast<std::size_t>(a)] = i_multiplier(k, p);
  }
  return t;
}

}  // namespace

Complex lambda_n(const SpectralField& u, int n,
                 const std::function<double(const FrequencyTuple&)>& multiplier,
                 LambdaBudget budget) {
  if (n != 2 && n != 4 && n != 6) throw std::invalid_argument("lambda_n: n must be 2, 4 or 6");
  DenseField d = make_dense(u);
  if (d.supp_u.empty()) return {};
  const double lambda = u.spec.lambda;
  if (n == 2) {
    check_budget(static_cast<double>(d.supp_u.size()), budget);
    Accumulator acc;
    for (std::int64_t a : d.supp_u) {
      FrequencyTuple t;
      t.order = 2;
      t.lambda = lambda;
      t.modes[0] = a;
      t.modes[1] = -a;
      acc.add(multiplier(t) * d.u(a) * d.ub(-a));
    }
    return acc.total() / (2.0 * std::numbers::pi * lambda);
  }
  if (n == 4) {
    return lambda4_impl(
        d,
        [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t e) {
          FrequencyTuple t;
          t.order = 4;
          t.lambda = lambda;
          t.modes = {a, b, c, e, 0, 0};
          return multiplier(t);
        },
        budget);
  }
  return lambda6_impl(
      d,
      [&](const std::int64_t* m) {
        FrequencyTuple t;
        t.order = 6;
        t.lambda = lambda;
        for (int j = 0; j < 6; ++j) t.modes[static_cast<std::size_t>(j)] = m[j];
        return multiplier(t);
      },
      budget);
}

double lambda2_kinetic(const SpectralField& u, const ModifiedEnergyParams& p) {
  std::vector<double> terms;
  terms.reserve(u.coeffs.size());
  for (int i = 0; i < u.spec.num_points; ++i) {
    const Complex& c = u.coeffs[static_cast<std::size_t>(i)];
    if (c == Complex{}) continue;
    double k = u.spec.freq_of_mode(u.spec.mode_of_index(i));
    double mk = i_multiplier(k, p);
    terms.push_back(mk * mk * dispersion_symbol(k, p.alpha) * std::norm(c));
  }
  return pairwise_sum(terms) / (2.0 * std::numbers::pi * u.spec.lambda);
}

Complex lambda4_m4(const SpectralField& u, const ModifiedEnergyParams& p, LambdaBudget budget) {
  DenseField d = make_dense(u);
  if (d.supp_u.empty()) return {};
  MultiplierTables t = make_tables(p, u.spec.lambda, 3 * d.maxabs + 1);
  return lambda4_impl(
      d, [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t e) {
        return t.m4_at(a, b, c, e);
      },
      budget);
}

Complex lambda4_product_m(const SpectralField& u, const ModifiedEnergyParams& p,
                          LambdaBudget budget) {
  DenseField d = make_dense(u);
  if (d.supp_u.empty()) return {};
  MultiplierTables t = make_tables(p, u.spec.lambda, 3 * d.maxabs + 1);
  return lambda4_impl(
      d, [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t e) {
        return t.m(a) * t.m(b) * t.m(c) * t.m(e);
      },
      budget);
}

Complex lambda6_m6(const SpectralField& u, const ModifiedEnergyParams& p, LambdaBudget budget) {
  DenseField d = make_dense(u);
  if (d.supp_u.empty()) return {};
  MultiplierTables t = make_tables(p, u.spec.lambda, 3 * d.maxabs + 1);
  return lambda6_impl(d, [&](const std::int64_t* m) { return t.m6_at(m); }, budget);
}

double e1(const SpectralField& u, const ModifiedEnergyParams& p) {
  return energy(apply_I(u, p), p.alpha);
}

double e1_lambda_path(const SpectralField& u, const ModifiedEnergyParams& p,
                      LambdaBudget budget) {
  Complex quartic = lambda4_product_m(u, p, budget);
  return 0.5 * lambda2_kinetic(u, p) + 0.25 * quartic.real();
}

double e2(const SpectralField& u, const ModifiedEnergyParams& p, LambdaBudget budget) {
  Complex quartic = lambda4_m4(u, p, budget);
  double value = 0.5 * lambda2_kinetic(u, p) + 0.25 * quartic.real();
  double residue = 0.25 * std::abs(quartic.imag());
  if (residue > 1e-10 * std::max(1.0, std::abs(value)))
    throw NumericalError("e2: imaginary residue " + std::to_string(residue) +
                         " exceeds tolerance; conjugation conventions are inconsistent");
  return value;
}

double e2_growth_rate(const SpectralField& u, const ModifiedEnergyParams& p,
                      LambdaBudget budget) {
  Complex six = lambda6_m6(u, p, budget);
  // Re[i Λ6]/4; the real part of Λ6 cancels by conjugation symmetry.
  return -0.25 * six.imag();
}

M4ScanReport m4_sup_scan(const ModifiedEnergyParams& p, std::int64_t radius) {
  if (radius < 1) throw std::invalid_argument("m4_sup_scan: radius must be >= 1");
  const std::int64_t R = radius;
  std::vector<double> fs(static_cast<std::size_t>(R + 1)), gs(static_cast<std::size_t>(R + 1)),
      ms(static_cast<std::size_t>(R + 1)), msq(static_cast<std::size_t>(R + 1));
  std::vector<long double> fl(static_cast<std::size_t>(R + 1)),
      gl(static_cast<std::size_t>(R + 1)), msql(static_cast<std::size_t>(R + 1));
  for (std::int64_t a = 0; a <= R; ++a) {
    auto i = static_cast<std::size_t>(a);
    double k = static_cast<double>(a);
    ms[i] = i_multiplier(k, p);
    gs[i] = dispersion_symbol(k, p.alpha);
    fs[i] = gs[i] * ms[i] * ms[i];
    msq[i] = ms[i] * ms[i];
    gl[i] = (a == 0) ? 0.0L
                     : std::pow(static_cast<long double>(a), 2.0L * static_cast<long double>(p.alpha));
    fl[i] = gl[i] * static_cast<long double>(ms[i]) * static_cast<long double>(ms[i]);
    msql[i] = static_cast<long double>(ms[i]) * static_cast<long double>(ms[i]);
  }

  struct ChunkState {
    double best_full = -1.0, best_half = -1.0;
    std::array<std::int64_t, 4> argmax{};
    std::int64_t count = 0;
    double maxdev = 0.0;
  };
  int workers = thread_count();
  std::vector<ChunkState> states(static_cast<std::size_t>(workers));

  const std::int64_t half = R / 2;
  parallel_for_chunks(R + 1, [&](std::int64_t lo, std::int64_t hi, int chunk) {
    ChunkState st;
    for (std::int64_t k1 = lo; k1 < hi; ++k1) {
      const std::int64_t a1 = k1;  // k1 >= 0 by the negation symmetry
      const double f1 = fs[static_cast<std::size_t>(a1)], g1v = gs[static_cast<std::size_t>(a1)];
      for (std::int64_t k3 = -R; k3 <= k1; ++k3) {
        const std::int64_t a3 = std::llabs(k3);
        const double f13 = f1 + fs[static_cast<std::size_t>(a3)];
        const double g13 = g1v + gs[static_cast<std::size_t>(a3)];
        const std::int64_t c = k1 + k3;
        const std::int64_t k2_lo = std::max(-R, -c - R);
        // k2 <= k4 removes the (24) swap; k4 = -c - k2, so k2 <= floor(-c/2)
        const std::int64_t k2_hi = std::min(R, c >= 0 ? -((c + 1) / 2) : (-c) / 2);
        const std::int64_t phase = (k1 * 7 + k3 * 13) & 127;
        for (std::int64_t k2 = k2_lo; k2 <= k2_hi; ++k2) {
          const std::int64_t k4 = -c - k2;
          const std::int64_t a2 = std::llabs(k2), a4 = std::llabs(k4);
          ++st.count;
          // second-smallest absolute value = |k_3^*|
          const std::int64_t lo1 = std::min(a1, a2), hi1 = std::max(a1, a2);
          const std::int64_t lo2 = std::min(a3, a4), hi2 = std::max(a3, a4);
          const std::int64_t a3s = std::min(std::max(lo1, lo2), std::min(hi1, hi2));
          const std::int64_t amax = std::max(hi1, hi2);
          const bool inner = amax <= half;
          const double den = g13 - (gs[static_cast<std::size_t>(a2)] + gs[static_cast<std::size_t>(a4)]);
          bool resonant = (k1 + k2 == 0) || (k2 + k3 == 0);
          if (!resonant &&
              std::abs(den) < kResonantEps * (gs[static_cast<std::size_t>(amax)] + 1.0))
            resonant = true;
          double value;
          if (resonant) {
            value = ms[static_cast<std::size_t>(a1)] * ms[static_cast<std::size_t>(a2)] *
                    ms[static_cast<std::size_t>(a3)] * ms[static_cast<std::size_t>(a4)] /
                    msq[static_cast<std::size_t>(a3s)];
          } else {
            const double num = f13 - (fs[static_cast<std::size_t>(a2)] + fs[static_cast<std::size_t>(a4)]);
            const double scale = std::abs(den) * msq[static_cast<std::size_t>(a3s)];
            const double lhs = std::abs(num);
            if (lhs <= st.best_full * scale && !(inner && lhs > st.best_half * scale)) {
              if (((k2 + R) & 127) == phase) {
                const long double numl =
                    (fl[static_cast<std::size_t>(a1)] + fl[static_cast<std::size_t>(a3)]) -
                    (fl[static_cast<std::size_t>(a2)] + fl[static_cast<std::size_t>(a4)]);
                const long double denl =
                    (gl[static_cast<std::size_t>(a1)] + gl[static_cast<std::size_t>(a3)]) -
                    (gl[static_cast<std::size_t>(a2)] + gl[static_cast<std::size_t>(a4)]);
                if (denl != 0.0L) {
                  const long double vl = std::abs(numl) / (std::abs(denl) * msql[static_cast<std::size_t>(a3s)]);
                  const double vd = lhs / scale;
                  // absolute disagreement; normalized by the final sup later,
                  // since noise-level values far below the sup cannot move it
                  st.maxdev = std::max(st.maxdev, std::abs(vd - static_cast<double>(vl)));
                }
              }
              continue;
            }
            value = lhs / scale;
          }
          if (value > st.best_full) {
            st.best_full = value;
            st.argmax = {k1, k2, k3, k4};
          }
          if (inner && value > st.best_half) st.best_half = value;
        }
      }
    }
    states[static_cast<std::size_t>(chunk)] = st;
  });

  M4ScanReport rep;
  rep.sup_full = -1.0;
  rep.sup_half = -1.0;
  for (const ChunkState& st : states) {
    if (st.best_full > rep.sup_full) {
      rep.sup_full = st.best_full;
      rep.argmax = st.argmax;
    }
    rep.sup_half = std::max(rep.sup_half, st.best_half);
    rep.tuples_scanned += st.count;
    rep.recheck_max_rel_dev = std::max(rep.recheck_max_rel_dev, st.maxdev);
  }
  rep.recheck_max_rel_dev /= std::max(rep.sup_full, 1e-300);
  {  // re-evaluate the winner in extended precision
    const auto& a = rep.argmax;
    const std::int64_t a1 = std::llabs(a[0]), a2 = std::llabs(a[1]), a3 = std::llabs(a[2]),
                       a4 = std::llabs(a[3]);
    const std::int64_t lo1 = std::min(a1, a2), hi1 = std::max(a1, a2);
    const std::int64_t lo2 = std::min(a3, a4), hi2 = std::max(a3, a4);
    const std::int64_t a3s = std::min(std::max(lo1, lo2), std::min(hi1, hi2));
    bool resonant = (a[0] + a[1] == 0) || (a[1] + a[2] == 0);
    if (resonant) {
      rep.argmax_value_extended = rep.sup_full;
    } else {
      const long double numl = (fl[static_cast<std::size_t>(a1)] + fl[static_cast<std::size_t>(a3)]) -
                               (fl[static_cast<std::size_t>(a2)] + fl[static_cast<std::size_t>(a4)]);
      const long double denl = (gl[static_cast<std::size_t>(a1)] + gl[static_cast<std::size_t>(a3)]) -
                               (gl[static_cast<std::size_t>(a2)] + gl[static_cast<std::size_t>(a4)]);
      rep.argmax_value_extended = static_cast<double>(
          std::abs(numl) / (std::abs(denl) * msql[static_cast<std::size_t>(a3s)]));
    }
  }
  return rep;
}

}  // namespace fnls
