#pragma once

#include <cstdint>
#include <vector>

#include "fnls/dynamics.hpp"
#include "fnls/fit.hpp"
#include "fnls/spectral_field.hpp"

namespace fnls {

/// Frequency-shifted block datum u_0 = M_n f with
/// f = n^{(α-1)/2-s} Σ_{k=0}^{l_n} e^{ikx}, l_n = ⌊n^{1-α}⌋. Its H^s norm is
/// of unit size by construction.
struct IllposedDatum {
  std::int64_t n = 0;
  double s = 0.0;
  double alpha = 0.75;
  std::int64_t l = 0;
  double amplitude = 0.0;  // physical amplitude per mode
  SpectralField field;
};

IllposedDatum build_illposed_data(std::int64_t n, double s, double alpha,
                                  const TorusSpec& spec);

/// Decomposes S(t) M_n f into the modulated-translated approximation
/// e^{i n^{2α} t} M_n G_{bt} f (b = 2α n^{2α-1}, translation acting as the
/// modulation e^{ikbt} on f̂) plus a remainder w, and reports
/// max_k |ŵ(k,t)| / (|t| l² n^{2α-2} |f̂(k)|) over the support. The bound
/// ratio is ≤ 1 for every admissible input.
struct GalileanReport {
  SpectralField w;
  double max_ratio = 0.0;
  double bound_scale = 0.0;  // |t| l² n^{2α-2}
};

GalileanReport galilean_error(const SpectralField& f, std::int64_t l, std::int64_t n,
                              double t, double alpha);

/// Checks ‖f^p g^q‖₂ ≤ ‖f^{p+q}‖₂ given f̂ ≥ 0 and |ĝ| ≤ f̂ pointwise.
/// Products are formed on a zero-padded grid so the norms are exact up to
/// round-off. Precondition violations name the offending mode.
struct DominanceReport {
  bool holds = false;
  double lhs = 0.0;   // ‖f^p g^q‖₂
  double rhs = 0.0;   // ‖f^{p+q}‖₂
  double slack = 0.0;  // rhs - lhs
};

DominanceReport convolution_dominance_check(const SpectralField& f, const SpectralField& g,
                                            int p, int q);

/// H^s norm of the first Picard iterate of the nonlinear part for the
/// ill-posedness datum at carrier frequency n.
double picard_iterate_hs_norm(std::int64_t n, double s, double alpha, double t,
                              int quad_nodes = 64);

/// Per-n norms of the first Picard iterate with a log-log exponent fit.
/// fitted is the raw fit; corrected removes the deterministic ⌊n^{1-α}⌋
/// staircase via the exactly computable model norm t n^s ‖ψ(f_n)‖₂ and is
/// the number compared against 1-α-2s.
struct PicardReport {
  std::vector<std::int64_t> ns, ls;
  std::vector<double> hs_norms;
  std::vector<double> model_norms;   // t n^s ‖ψ(f_n)‖₂
  std::vector<double> datum_hs;      // ‖u_0‖_{H^s} per n
  double predicted_exponent = 0.0;   // 1 - α - 2s
  LineFit raw_fit, corrected_fit;
};

PicardReport picard_growth_experiment(double s, double alpha,
                                      const std::vector<std::int64_t>& n_list, double t,
                                      int quad_nodes = 64);

}  // namespace fnls
