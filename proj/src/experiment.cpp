#include "fnls/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "fnls/dynamics.hpp"
#include "fnls/errors.hpp"
#include "fnls/estimates.hpp"
#include "fnls/fit.hpp"
#include "fnls/illposed.hpp"
#include "fnls/imethod.hpp"
#include "fnls/io.hpp"
#include "fnls/rng.hpp"
#include "fnls/util.hpp"

namespace fnls {
namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

/// Typed access to the flat parameter block. Every key a kind understands is
/// read through here; leftovers are reported as configuration mistakes.
class ParamReader {
 public:
  explicit ParamReader(const std::map<std::string, std::string>& params) : params_(params) {}

  double number(const std::string& key, std::optional<double> def = std::nullopt) {
    auto raw = fetch(key);
    if (!raw) {
      if (def) return *def;
      throw ConfigError("missing required key '" + key + "'");
    }
    try {
      std::size_t used = 0;
      double v = std::stod(*raw, &used);
      if (used != raw->size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "' is not a number: " + *raw);
    }
  }

  std::int64_t integer(const std::string& key, std::optional<std::int64_t> def = std::nullopt) {
    double v = number(key, def ? std::optional<double>(static_cast<double>(*def))
                               : std::nullopt);
    auto i = static_cast<std::int64_t>(std::llround(v));
    if (static_cast<double>(i) != v)
      throw ConfigError("key '" + key + "' must be an integer");
    return i;
  }

  bool boolean(const std::string& key, bool def) {
    auto raw = fetch(key);
    if (!raw) return def;
    if (*raw == "true" || *raw == "1") return true;
    if (*raw == "false" || *raw == "0") return false;
    throw ConfigError("key '" + key + "' must be true or false");
  }

  std::string text(const std::string& key, std::optional<std::string> def = std::nullopt) {
    auto raw = fetch(key);
    if (raw) return *raw;
    if (def) return *def;
    throw ConfigError("missing required key '" + key + "'");
  }

  std::vector<double> number_list(const std::string& key, const std::string& def) {
    auto raw = fetch(key);
    std::string src = raw ? *raw : def;
    std::vector<double> out;
    std::istringstream ss(src);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' has a non-numeric entry: " + item);
      }
    }
    if (out.empty()) throw ConfigError("key '" + key + "' is an empty list");
    return out;
  }

  std::vector<std::int64_t> integer_list(const std::string& key, const std::string& def) {
    std::vector<std::int64_t> out;
    for (double v : number_list(key, def)) out.push_back(static_cast<std::int64_t>(v));
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : params_)
      if (!touched_.count(key)) throw ConfigError("unknown key '" + key + "'");
  }

 private:
  std::optional<std::string> fetch(const std::string& key) {
    touched_.insert(key);
    auto it = params_.find(key);
    if (it == params_.end()) return std::nullopt;
    return it->second;
  }

  const std::map<std::string, std::string>& params_;
  std::set<std::string> touched_;
};

G1Variant parse_variant(const std::string& name) {
  if (name == "quintic") return G1Variant::quintic;
  if (name == "cubic") return G1Variant::cubic;
  throw ConfigError("g1_variant must be 'quintic' or 'cubic'");
}

const char* variant_name(G1Variant v) {
  return v == G1Variant::quintic ? "quintic" : "cubic";
}

struct RunOutput {
  json scalars = json::object();
  std::vector<std::string> files;
  std::optional<std::string> g1_variant;
};

using Runner = RunOutput (*)(const ExperimentConfig&, ParamReader&, bool,
                             const std::filesystem::path&);

double relative_drift(const std::vector<double>& values) {
  double base = values.front(), worst = 0.0;
  for (double v : values) worst = std::max(worst, std::abs(v - base));
  return worst / std::max(std::abs(base), 1e-300);
}

struct DatumSpec {
  std::string kind;
  double amplitude = 0.5;
  std::int64_t modes = 16;
  std::int64_t mode_cap = 8;
  std::int64_t mode = 2;
  std::string file;
};

DatumSpec read_datum_spec(ParamReader& pr, const TorusSpec& spec) {
  DatumSpec d;
  d.kind = pr.text("datum", std::string("random_modes"));
  d.amplitude = pr.number("amplitude", 0.5);
  if (d.kind == "random_modes") {
    d.modes = pr.integer("modes", 16);
    d.mode_cap = pr.integer("mode_cap", 8);
    if (d.mode_cap > spec.max_mode()) throw ConfigError("mode_cap exceeds the grid resolution");
    if (d.modes < 1 || d.modes > 2 * d.mode_cap + 1)
      throw ConfigError("modes must lie in [1, 2*mode_cap+1]");
  } else if (d.kind == "single_mode") {
    d.mode = pr.integer("mode", 2);
    if (std::llabs(d.mode) > spec.max_mode())
      throw ConfigError("mode exceeds the grid resolution");
  } else if (d.kind == "file") {
    d.file = pr.text("datum_file");
  } else {
    throw ConfigError("datum must be random_modes, single_mode or file");
  }
  return d;
}

SpectralField build_datum(const TorusSpec& spec, const DatumSpec& d, Rng& rng) {
  if (d.kind == "random_modes") {
    SpectralField f = zero_field(spec);
    std::vector<int> all;
    for (int m = static_cast<int>(-d.mode_cap); m <= static_cast<int>(d.mode_cap); ++m)
      all.push_back(m);
    // deterministic Fisher-Yates prefix
    for (std::size_t i = 0; i < static_cast<std::size_t>(d.modes); ++i) {
      std::size_t j = i + static_cast<std::size_t>(rng.uniform() * (all.size() - i));
      std::swap(all[i], all[j]);
      f.coeffs[static_cast<std::size_t>(spec.index_of_mode(all[i]))] =
          d.amplitude * spec.circumference() * rng.unit_phase();
    }
    return f;
  }
  if (d.kind == "single_mode")
    return synthesize_modes(spec, {{static_cast<int>(d.mode),
                                    Complex{d.amplitude * spec.circumference(), 0.0}}});
  return io::read_field(d.file).field;
}

void append_hs_columns(std::vector<std::string>& header, const std::vector<double>& hs_list) {
  for (double s : hs_list) {
    std::ostringstream name;
    name << "h" << s;
    header.push_back(name.str());
  }
}

// ---------------------------------------------------------------------------
// runners

RunOutput run_evolve(const ExperimentConfig& cfg, ParamReader& pr, bool dry,
                     const std::filesystem::path& out) {
  TorusSpec spec = make_torus(pr.number("lambda", 1.0),
                              static_cast<int>(pr.integer("num_points", 256)));
  EvolutionConfig ev;
  ev.alpha = pr.number("alpha", 0.75);
  ev.dt = pr.number("dt", 1e-3);
  ev.t_end = pr.number("t_end", 1.0);
  ev.dealias = pr.boolean("dealias", true);
  ev.snapshot_count = static_cast<int>(pr.integer("snapshots", 32));
  check_alpha(ev.alpha);
  std::vector<double> hs_list = pr.number_list("hs_list", "0.5");
  bool dump_snapshots = pr.boolean("dump_snapshots", false);
  DatumSpec datum = read_datum_spec(pr, spec);
  Rng rng(cfg.seed);
  if (dry) return {};

  SpectralField u0 = build_datum(spec, datum, rng);
  Trajectory traj = evolve(u0, ev);

  std::vector<std::string> header{"t", "mass", "energy"};
  append_hs_columns(header, hs_list);
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < traj.times.size(); ++j) {
    std::vector<double> row{traj.times[j], traj.masses[j], traj.energies[j]};
    for (double s : hs_list) row.push_back(sobolev_norm(traj.snapshots[j], s));
    rows.push_back(std::move(row));
  }
  io::write_csv(out / "trajectory.csv", header, rows);
  io::write_field(traj.snapshots.back(), out / "final_field.txt", ev.alpha);

  RunOutput res;
  if (dump_snapshots) {
    for (std::size_t j = 0; j < traj.snapshots.size(); ++j) {
      std::ostringstream name;
      name << "snapshot_" << j << ".txt";
      io::write_field(traj.snapshots[j], out / name.str(), ev.alpha);
      res.files.push_back(name.str());
    }
  }
  res.scalars["mass_drift"] = relative_drift(traj.masses);
  res.scalars["energy_drift"] = relative_drift(traj.energies);
  res.scalars["final_mass"] = traj.masses.back();
  res.scalars["final_energy"] = traj.energies.back();
  res.scalars["stiffness"] = traj.stiffness;
  res.files = {"trajectory.csv", "final_field.txt"};
  return res;
}

RunOutput run_energy_track(const ExperimentConfig& cfg, ParamReader& pr, bool dry,
                           const std::filesystem::path& out) {
  TorusSpec spec = make_torus(pr.number("lambda", 1.0),
                              static_cast<int>(pr.integer("num_points", 128)));
  EvolutionConfig ev;
  ev.alpha = pr.number("alpha", 0.75);
  ev.dt = pr.number("dt", 1e-3);
  ev.t_end = pr.number("t_end", 1.0);
  ev.dealias = pr.boolean("dealias", true);
  ev.snapshot_count = static_cast<int>(pr.integer("snapshots", 16));
  double s = pr.number("s", 0.25);
  std::vector<double> n_values = pr.number_list("N_list", "4,8,16");
  G1Variant variant = parse_variant(pr.text("g1_variant", std::string("quintic")));
  for (double n : n_values) (void)make_params(ev.alpha, s, n, variant);
  DatumSpec datum = read_datum_spec(pr, spec);
  Rng rng(cfg.seed);
  if (dry) return {};

  SpectralField u0 = build_datum(spec, datum, rng);
  Trajectory traj = evolve(u0, ev);

  RunOutput res;
  res.g1_variant = variant_name(variant);
  std::vector<double> log_n, log_drift, log_ratio;
  for (double n : n_values) {
    ModifiedEnergyParams p = make_params(ev.alpha, s, n, variant);
    std::vector<std::string> header{"t", "mass", "energy", "hs", "e1", "e2", "ratio43"};
    std::vector<std::vector<double>> rows;
    std::vector<double> e1s, e2s;
    double worst_ratio = 0.0, iu_scale = 0.0;
    for (std::size_t j = 0; j < traj.times.size(); ++j) {
      const SpectralField& u = traj.snapshots[j];
      double v1 = e1(u, p), v2 = e2(u, p);
      double hi = sobolev_norm(apply_I(u, p), p.alpha);
      double ratio = std::abs(v2 - v1) / std::max(std::pow(hi, 4.0), 1e-300);
      rows.push_back({traj.times[j], traj.masses[j], traj.energies[j],
                      sobolev_norm(u, s), v1, v2, ratio});
      e1s.push_back(v1);
      e2s.push_back(v2);
      worst_ratio = std::max(worst_ratio, ratio);
      iu_scale = std::max(iu_scale, hi);
    }
    std::ostringstream name;
    name << "track_N" << n << ".csv";
    io::write_csv(out / name.str(), header, rows);
    res.files.push_back(name.str());

    double drift2 = 0.0, drift1 = 0.0;
    for (std::size_t j = 0; j < e2s.size(); ++j) {
      drift2 = std::max(drift2, std::abs(e2s[j] - e2s.front()));
      drift1 = std::max(drift1, std::abs(e1s[j] - e1s.front()));
    }
    json per_n;
    per_n["N"] = n;
    per_n["e2_drift"] = drift2;
    per_n["e1_drift"] = drift1;
    per_n["e2_drift_over_iu6"] = drift2 / std::max(std::pow(iu_scale, 6.0), 1e-300);
    per_n["max_ratio43"] = worst_ratio;
    res.scalars["per_N"].push_back(per_n);
    log_n.push_back(std::log(n));
    log_drift.push_back(std::log(std::max(drift2, 1e-300)));
    log_ratio.push_back(std::log(std::max(worst_ratio, 1e-300)));
  }
  if (n_values.size() >= 2) {
    res.scalars["e2_drift_slope"] = fit_line(log_n, log_drift).slope;
    res.scalars["ratio43_slope"] = fit_line(log_n, log_ratio).slope;
  }
  return res;
}

RunOutput run_m4_scan(const ExperimentConfig& cfg, ParamReader& pr, bool dry,
                      const std::filesystem::path& out) {
  (void)cfg;
  double alpha = pr.number("alpha", 0.75);
  double s = pr.number("s", 0.25);
  double n_threshold = pr.number("N", 4.0);
  G1Variant variant = parse_variant(pr.text("g1_variant", std::string("quintic")));
  ModifiedEnergyParams p = make_params(alpha, s, n_threshold, variant);
  auto radius = pr.integer("radius", static_cast<std::int64_t>(128.0 * n_threshold));
  auto slice_radius = pr.integer("slice_radius", 8);
  if (radius < 2) throw ConfigError("radius must be >= 2");
  if (dry) return {};

  M4ScanReport rep = m4_sup_scan(p, radius);

  std::vector<std::vector<double>> rows;
  for (std::int64_t k1 = -slice_radius; k1 <= slice_radius; ++k1)
    for (std::int64_t k2 = -slice_radius; k2 <= slice_radius; ++k2)
      for (std::int64_t k3 = -slice_radius; k3 <= slice_radius; ++k3) {
        std::int64_t k4 = -(k1 + k2 + k3);
        if (std::llabs(k4) > slice_radius) continue;
        bool resonant = (k1 + k2 == 0) || (k2 + k3 == 0);
        rows.push_back({static_cast<double>(k1), static_cast<double>(k2),
                        static_cast<double>(k3), static_cast<double>(k4),
                        m4(make_tuple({k1, k2, k3, k4}), p), resonant ? 1.0 : 0.0});
      }
  io::write_csv(out / "m4_slice.csv", {"k1", "k2", "k3", "k4", "M4", "resonant_flag"}, rows);

  std::vector<std::vector<double>> mrows;
  for (std::int64_t k = 0; k <= static_cast<std::int64_t>(4.0 * n_threshold); ++k)
    mrows.push_back({static_cast<double>(k), i_multiplier(static_cast<double>(k), p)});
  io::write_csv(out / "m_table.csv", {"k", "m"}, mrows);

  RunOutput res;
  res.g1_variant = variant_name(variant);
  res.scalars["sup_full"] = rep.sup_full;
  res.scalars["sup_half"] = rep.sup_half;
  res.scalars["doubling_change"] = (rep.sup_full - rep.sup_half) / rep.sup_half;
  res.scalars["argmax"] = {rep.argmax[0], rep.argmax[1], rep.argmax[2], rep.argmax[3]};
  res.scalars["tuples_scanned"] = rep.tuples_scanned;
  res.scalars["recheck_max_rel_dev"] = rep.recheck_max_rel_dev;
  res.scalars["argmax_value_extended"] = rep.argmax_value_extended;
  res.files = {"m4_slice.csv", "m_table.csv"};
  return res;
}

RunOutput run_convexity(const ExperimentConfig& cfg, ParamReader& pr, bool dry,
                        const std::filesystem::path& out) {
  (void)cfg;
  (void)out;
  double alpha = pr.number("alpha", 0.75);
  auto radius = pr.integer("radius", 64);
  if (radius < 2) throw ConfigError("radius must be >= 2");
  check_alpha(alpha);
  if (dry) return {};
  ConvexityReport half = convexity_gap_check(radius / 2, alpha);
  ConvexityReport full = convexity_gap_check(radius, alpha);
  RunOutput res;
  res.scalars["min_ratio"] = full.min_ratio;
  res.scalars["min_ratio_half_radius"] = half.min_ratio;
  res.scalars["argmin"] = {full.argmin[0], full.argmin[1], full.argmin[2]};
  res.scalars["admissible_tuples"] = full.admissible_count;
  return res;
}

StrichartzProbe probe_from(ParamReader& pr, double n_value, double n2 = 0.0) {
  StrichartzProbe probe;
  probe.torus = make_torus(pr.number("lambda", 1.0),
                           static_cast<int>(pr.integer("num_points", 512)));
  probe.alpha = pr.number("alpha", 0.75);
  probe.band_n = n_value;
  probe.band_n2 = n2;
  probe.horizon = pr.number("T", 1.0);
  probe.time_samples = static_cast<int>(pr.integer("time_samples", 0));
  std::string kind = pr.text("data_kind", std::string("random_unimodular_phases"));
  if (kind == "random_unimodular_phases")
    probe.data_kind = StrichartzProbe::DataKind::random_unimodular_phases;
  else if (kind == "block_exponential_sum")
    probe.data_kind = StrichartzProbe::DataKind::block_exponential_sum;
  else if (kind == "single_mode")
    probe.data_kind = StrichartzProbe::DataKind::single_mode;
  else
    throw ConfigError("unknown data_kind: " + kind);
  return probe;
}

RunOutput run_strichartz_l4(const ExperimentConfig& cfg, ParamReader& pr, bool dry,
                            const std::filesystem::path& out) {
  std::vector<double> n_list = pr.number_list("N_list", "8,16,32");
  auto trials = static_cast<int>(pr.integer("trials", 64));
  double transfer_lambda = pr.number("transfer_lambda", 0.0);
  StrichartzProbe base = probe_from(pr, n_list.front());
  if (dry) return {};

  RunOutput res;
  std::vector<std::vector<double>> rows;
  std::vector<double> maxes;
  for (double n : n_list) {
    StrichartzProbe probe = base;
    probe.band_n = n;
    QuotientReport rep = strichartz_l4_quotient(probe, trials, cfg.seed);
    for (std::size_t i = 0; i < rep.per_trial.size(); ++i)
      rows.push_back({n, static_cast<double>(i), rep.per_trial[i], rep.raw_per_trial[i]});
    maxes.push_back(rep.max_quotient);
    json per_n;
    per_n["N"] = n;
    per_n["max_quotient"] = rep.max_quotient;
    per_n["time_samples"] = rep.time_samples_used;
    res.scalars["per_N"].push_back(per_n);
  }
  io::write_csv(out / "l4_trials.csv", {"N", "trial", "quotient", "raw"}, rows);
  res.files = {"l4_trials.csv"};
  if (n_list.size() >= 2) {
    LineFit fit = fit_loglog(n_list, maxes);
    res.scalars["quotient_slope"] = fit.slope;
    res.scalars["quotient_slope_stderr"] = fit.slope_stderr;
  }
  if (transfer_lambda > 1.0) {
    TransferCheck chk =
        l4_transfer_check(transfer_lambda, base.horizon, n_list.front(), base.alpha,
                          base.torus.num_points, trials, cfg.seed);
    res.scalars["transfer_c_lambda"] = chk.c_lambda;
    res.scalars["transfer_c_predicted"] = chk.c_unit_predicted;
    res.scalars["transfer_rel_dev"] = chk.rel_dev;
  }
  return res;
}

RunOutput run_strichartz_bilinear(const ExperimentConfig& cfg, ParamReader& pr, bool dry,
                                  const std::filesystem::path& out) {
  std::vector<double> n1_list = pr.number_list("N1_list", "32,64,128");
  double n2 = pr.number("N2", 4.0);
  auto trials = static_cast<int>(pr.integer("trials", 64));
  bool include_sharp = pr.boolean("include_sharp", true);
  StrichartzProbe base = probe_from(pr, n1_list.front(), n2);
  if (dry) return {};

  RunOutput res;
  std::vector<std::vector<double>> rows;
  std::vector<double> maxes, sharp_short;
  for (double n1 : n1_list) {
    StrichartzProbe probe = base;
    probe.band_n = n1;
    BilinearReport rep = bilinear_quotient(probe, trials, cfg.seed);
    for (std::size_t i = 0; i < rep.per_trial.size(); ++i)
      rows.push_back({n1, static_cast<double>(i), rep.per_trial[i], rep.excess_per_trial[i]});
    maxes.push_back(rep.max_quotient);
    json per_n;
    per_n["N1"] = n1;
    per_n["max_quotient"] = rep.max_quotient;
    per_n["time_samples"] = rep.time_samples_used;
    if (include_sharp) {
      SharpExample ex = sharp_bilinear_example(static_cast<std::int64_t>(n1),
                                               static_cast<std::int64_t>(n2),
                                               probe.alpha, probe.torus);
      double top = n1 + static_cast<double>(ex.M1);
      int samples = required_time_samples(probe.horizon, top, probe.alpha, 2);
      BilinearReport srep = bilinear_quotient_for(ex.phi1, ex.phi2, n1, probe.horizon,
                                                  samples, probe.alpha);
      per_n["sharp_quotient"] = srep.max_quotient;
      // refinement term read at the example's admissibility horizon, where
      // it is not buried under the T/lambda diagonal
      double t_short = std::pow(n1 * n2, 1.0 - 2.0 * probe.alpha);
      int sshort = required_time_samples(t_short, top, probe.alpha, 2);
      double num = spacetime_bilinear_l2_sq(ex.phi1, ex.phi2, t_short, sshort, probe.alpha);
      double m1 = lp_norm(ex.phi1, 2.0), m2 = lp_norm(ex.phi2, 2.0);
      double ratio = num / (m1 * m1 * m2 * m2);
      per_n["sharp_short_horizon_ratio"] = ratio;
      sharp_short.push_back(ratio);
    }
    res.scalars["per_N1"].push_back(per_n);
  }
  io::write_csv(out / "bilinear_trials.csv", {"N1", "trial", "quotient", "excess"}, rows);
  res.files = {"bilinear_trials.csv"};
  if (n1_list.size() >= 2) {
    LineFit fit = fit_loglog(n1_list, maxes);
    res.scalars["quotient_slope"] = fit.slope;
    res.scalars["quotient_slope_stderr"] = fit.slope_stderr;
    if (include_sharp) {
      LineFit ex_fit = fit_loglog(n1_list, sharp_short);
      res.scalars["sharp_refinement_slope"] = ex_fit.slope;
      res.scalars["sharp_refinement_slope_stderr"] = ex_fit.slope_stderr;
    }
  }
  return res;
}

RunOutput run_strichartz_l6(const ExperimentConfig& cfg, ParamReader& pr, bool dry,
                            const std::filesystem::path& out) {
  std::vector<double> n_list = pr.number_list("N_list", "8,16,32,64");
  auto trials = static_cast<int>(pr.integer("trials", 64));
  StrichartzProbe base = probe_from(pr, n_list.front());
  if (base.horizon < std::pow(base.torus.lambda, 2.0 * base.alpha))
    throw ConfigError("l6 probe requires T >= lambda^{2 alpha}");
  if (dry) return {};

  RunOutput res;
  std::vector<std::vector<double>> rows;
  std::vector<double> max_raw;
  for (double n : n_list) {
    StrichartzProbe probe = base;
    probe.band_n = n;
    QuotientReport rep = l6_quotient(probe, trials, cfg.seed);
    // include the structured block datum alongside random phases
    StrichartzProbe block = probe;
    block.data_kind = StrichartzProbe::DataKind::block_exponential_sum;
    QuotientReport brep = l6_quotient(block, 1, cfg.seed);
    for (std::size_t i = 0; i < rep.per_trial.size(); ++i)
      rows.push_back({n, static_cast<double>(i), rep.per_trial[i], rep.raw_per_trial[i]});
    rows.push_back({n, -1.0, brep.per_trial[0], brep.raw_per_trial[0]});
    max_raw.push_back(std::max(rep.max_raw, brep.max_raw));
    json per_n;
    per_n["N"] = n;
    per_n["max_quotient"] = std::max(rep.max_quotient, brep.max_quotient);
    per_n["max_raw_growth"] = max_raw.back();
    per_n["time_samples"] = rep.time_samples_used;
    res.scalars["per_N"].push_back(per_n);
  }
  io::write_csv(out / "l6_trials.csv", {"N", "trial", "quotient", "raw_growth"}, rows);
  res.files = {"l6_trials.csv"};
  if (n_list.size() >= 2) {
    LineFit fit = fit_loglog(n_list, max_raw);
    res.scalars["raw_growth_slope"] = fit.slope;
    res.scalars["raw_growth_slope_stderr"] = fit.slope_stderr;
  }
  return res;
}

RunOutput run_sharp_example(const ExperimentConfig& cfg, ParamReader& pr, bool dry,
                            const std::filesystem::path& out) {
  (void)cfg;
  auto n1 = pr.integer("N1", 256);
  auto n2 = pr.integer("N2", 16);
  double alpha = pr.number("alpha", 0.75);
  double T = pr.number("T", 1.0);
  TorusSpec torus = make_torus(1.0, static_cast<int>(pr.integer("num_points", 2048)));
  if (dry) return {};
  SharpExample ex = sharp_bilinear_example(n1, n2, alpha, torus);
  int samples = required_time_samples(T, static_cast<double>(n1 + ex.M1), alpha, 2);
  BilinearReport rep =
      bilinear_quotient_for(ex.phi1, ex.phi2, static_cast<double>(n1), T, samples, alpha);
  io::write_field(ex.phi1, out / "phi1.txt", alpha);
  io::write_field(ex.phi2, out / "phi2.txt", alpha);
  RunOutput res;
  res.scalars["M1"] = ex.M1;
  res.scalars["M2"] = ex.M2;
  res.scalars["quotient"] = rep.max_quotient;
  res.scalars["excess"] = rep.max_excess;
  res.files = {"phi1.txt", "phi2.txt"};
  return res;
}

RunOutput run_picard(const ExperimentConfig& cfg, ParamReader& pr, bool dry,
                     const std::filesystem::path& out) {
  (void)cfg;
  double alpha = pr.number("alpha", 0.75);
  double s = pr.number("s", 0.0);
  double t = pr.number("t", 0.05);
  auto quad_nodes = static_cast<int>(pr.integer("quad_nodes", 64));
  std::vector<std::int64_t> n_list = pr.integer_list("n_list", "64,128,256,512,1024,2048");
  check_alpha(alpha);
  if (!(t > 0.0 && t <= 0.1)) throw ConfigError("picard growth requires 0 < t <= 0.1");
  if (dry) return {};

  PicardReport rep = picard_growth_experiment(s, alpha, n_list, t, quad_nodes);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.ns.size(); ++i)
    rows.push_back({static_cast<double>(rep.ns[i]), static_cast<double>(rep.ls[i]), t,
                    rep.hs_norms[i], rep.predicted_exponent, rep.corrected_fit.slope});
  io::write_csv(out / "picard.csv",
                {"n", "l_n", "t", "hs_norm", "predicted_exponent", "fitted_exponent"}, rows);

  RunOutput res;
  res.scalars["predicted_exponent"] = rep.predicted_exponent;
  res.scalars["raw_exponent"] = rep.raw_fit.slope;
  res.scalars["raw_exponent_stderr"] = rep.raw_fit.slope_stderr;
  res.scalars["fitted_exponent"] = rep.corrected_fit.slope;
  res.scalars["fitted_exponent_stderr"] = rep.corrected_fit.slope_stderr;
  res.scalars["fitted_exponent_ci95"] = {rep.corrected_fit.slope - 2.0 * rep.corrected_fit.slope_stderr,
                                         rep.corrected_fit.slope + 2.0 * rep.corrected_fit.slope_stderr};
  res.files = {"picard.csv"};
  return res;
}

RunOutput run_galilean(const ExperimentConfig& cfg, ParamReader& pr, bool dry,
                       const std::filesystem::path& out) {
  double alpha = pr.number("alpha", 0.75);
  std::vector<std::int64_t> n_list = pr.integer_list("n_list", "64,128,256,512,1024,2048");
  std::vector<double> t_list = pr.number_list("t_list", "0.01,0.1");
  check_alpha(alpha);
  if (dry) return {};

  std::vector<std::vector<double>> rows;
  double worst = 0.0;
  for (std::int64_t n : n_list) {
    auto l = static_cast<std::int64_t>(
        std::floor(std::pow(static_cast<double>(n), 1.0 - alpha)));
    int points = 4;
    while (points / 2 - 1 < n + l) points *= 2;
    TorusSpec spec = make_torus(1.0, points);
    Rng rng(cfg.seed + static_cast<std::uint64_t>(n));
    std::vector<std::pair<int, Complex>> modes;
    for (std::int64_t k = -l; k <= l; ++k)
      modes.emplace_back(static_cast<int>(k), rng.complex_gaussian());
    SpectralField f = synthesize_modes(spec, modes);
    for (double t : t_list) {
      GalileanReport rep = galilean_error(f, l, n, t, alpha);
      rows.push_back({static_cast<double>(n), static_cast<double>(l), t, rep.max_ratio});
      worst = std::max(worst, rep.max_ratio);
    }
  }
  io::write_csv(out / "galilean.csv", {"n", "l", "t", "max_ratio"}, rows);
  RunOutput res;
  res.scalars["worst_ratio"] = worst;
  res.scalars["certified"] = worst <= 1.0 + 1e-9;
  res.files = {"galilean.csv"};
  return res;
}

RunOutput run_dominance(const ExperimentConfig& cfg, ParamReader& pr, bool dry,
                        const std::filesystem::path& out) {
  auto instances = static_cast<int>(pr.integer("instances", 1000));
  auto cap = static_cast<int>(pr.integer("mode_cap", 5));
  TorusSpec spec = make_torus(1.0, static_cast<int>(pr.integer("num_points", 64)));
  if (cap > spec.max_mode()) throw ConfigError("mode_cap exceeds the grid resolution");
  if (dry) return {};

  Rng rng(cfg.seed);
  const std::vector<std::pair<int, int>> pqs{{1, 1}, {2, 1}, {1, 2}};
  std::vector<std::vector<double>> rows;
  int violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < instances; ++i) {
    auto [p, q] = pqs[static_cast<std::size_t>(i) % pqs.size()];
    SpectralField f = zero_field(spec);
    for (int m = -cap; m <= cap; ++m)
      f.coeffs[static_cast<std::size_t>(spec.index_of_mode(m))] = Complex{rng.uniform(), 0.0};
    SpectralField g = f;
    for (auto& c : g.coeffs)
      if (c != Complex{}) c *= rng.unit_phase() * rng.uniform();
    DominanceReport rep = convolution_dominance_check(f, g, p, q);
    if (!rep.holds) ++violations;
    min_slack = std::min(min_slack, rep.slack / std::max(rep.rhs, 1e-300));
    rows.push_back({static_cast<double>(i), static_cast<double>(p), static_cast<double>(q),
                    rep.lhs, rep.rhs});
  }
  io::write_csv(out / "dominance.csv", {"instance", "p", "q", "lhs", "rhs"}, rows);
  RunOutput res;
  res.scalars["instances"] = instances;
  res.scalars["violations"] = violations;
  res.scalars["min_relative_slack"] = min_slack;
  res.files = {"dominance.csv"};
  return res;
}

RunOutput run_choose_lambda(const ExperimentConfig& cfg, ParamReader& pr, bool dry,
                            const std::filesystem::path& out) {
  (void)out;
  double alpha = pr.number("alpha", 0.75);
  double s = pr.number("s", 0.25);
  std::vector<double> n_values = pr.number_list("N_list", "4,16,64");
  auto num_points = static_cast<int>(pr.integer("num_points", 1 << 18));
  check_alpha(alpha);
  if (!(s > 0.0)) throw ConfigError("choose_lambda requires s > 0");
  if (dry) return {};

  // unit-H^s datum at the regularity edge: spectrum ~ <m>^{-s-1/2}
  TorusSpec unit = make_torus(1.0, num_points);
  Rng rng(cfg.seed);
  SpectralField u0 = zero_field(unit);
  for (int m = -unit.max_mode(); m <= unit.max_mode(); ++m) {
    double rho = std::pow(1.0 + static_cast<double>(m) * m, -0.5 * (s + 0.5));
    u0.coeffs[static_cast<std::size_t>(unit.index_of_mode(m))] = rho * rng.unit_phase();
  }
  double hs = sobolev_norm(u0, s);
  for (auto& c : u0.coeffs) c /= hs;

  RunOutput res;
  for (double n : n_values) {
    ModifiedEnergyParams p = make_params(alpha, s, n);
    double lambda = std::pow(n, (alpha - s) / s) * std::pow(sobolev_norm(u0, s), 1.0 / s);
    SpectralField scaled = rescale_down(u0, lambda, alpha);
    double product = e1(scaled, p) * std::pow(lambda, 2.0 * alpha - 1.0);
    json per_n;
    per_n["N"] = n;
    per_n["lambda"] = lambda;
    per_n["e1_lambda_product"] = product;
    res.scalars["per_N"].push_back(per_n);
  }
  return res;
}

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table{
      {"evolve", run_evolve},
      {"energy_track", run_energy_track},
      {"m4_scan", run_m4_scan},
      {"convexity_scan", run_convexity},
      {"strichartz_l4", run_strichartz_l4},
      {"strichartz_bilinear", run_strichartz_bilinear},
      {"strichartz_l6", run_strichartz_l6},
      {"sharp_example", run_sharp_example},
      {"picard_growth", run_picard},
      {"galilean", run_galilean},
      {"dominance", run_dominance},
      {"choose_lambda", run_choose_lambda},
  };
  return table;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  cfg.source_text = text;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty()) throw ConfigError("empty section header at line " +
                                             std::to_string(lineno));
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value at line " + std::to_string(lineno));
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key at line " + std::to_string(lineno));
    if (!section.empty()) key = section + "." + key;
    if (key == "kind")
      cfg.kind = value;
    else if (key == "output_dir")
      cfg.output_dir = value;
    else if (key == "seed")
      cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
    else if (cfg.params.count(key))
      throw ConfigError("duplicate key '" + key + "'");
    else
      cfg.params[key] = value;
  }
  if (cfg.kind.empty()) throw ConfigError("config must set kind");
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::vector<std::string> experiment_kinds() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : runners()) out.push_back(name);
  return out;
}

namespace {

RunOutput dispatch(const ExperimentConfig& cfg, bool dry, const std::filesystem::path& out) {
  auto it = runners().find(cfg.kind);
  if (it == runners().end()) throw ConfigError("unknown experiment kind '" + cfg.kind + "'");
  ParamReader pr(cfg.params);
  try {
    RunOutput res = it->second(cfg, pr, dry, out);
    pr.reject_unknown();
    return res;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());  // parameter-range failures are config errors
  }
}

}  // namespace

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.output_dir.empty()) throw ConfigError("config must set output_dir");
  dispatch(cfg, /*dry=*/true, std::filesystem::path{});
}

std::filesystem::path run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  std::filesystem::path out(cfg.output_dir);
  std::filesystem::create_directories(out);
  auto t0 = std::chrono::steady_clock::now();
  RunOutput res = dispatch(cfg, /*dry=*/false, out);
  auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json report;
  report["kind"] = cfg.kind;
  report["seed"] = cfg.seed;
  json echo = json::object();
  for (const auto& [k, v] : cfg.params) echo[k] = v;
  echo["kind"] = cfg.kind;
  echo["output_dir"] = cfg.output_dir;
  echo["seed"] = cfg.seed;
  report["config"] = echo;
  report["input_hash"] = content_hash(cfg.source_text);
  report["results"] = res.scalars;
  report["files"] = res.files;
  report["duration_seconds"] = dt;
  if (res.g1_variant) report["g1_variant"] = *res.g1_variant;

  auto path = out / "report.json";
  io::write_text_atomic(path, report.dump(2) + "\n");
  return path;
}

}  // namespace fnls
