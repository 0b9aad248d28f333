#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fnls/errors.hpp"
#include "fnls/experiment.hpp"

using namespace fnls;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / name;
  fs::remove_all(p);
  return p;
}

nlohmann::json load_json(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace

TEST_CASE("config parsing") {
  ExperimentConfig cfg = parse_config_text(
      "# comment\n"
      "kind = convexity_scan\n"
      "output_dir = /tmp/x\n"
      "seed = 42\n"
      "\n"
      "[scan]\n"
      "alpha = 0.75\n"
      "radius = 8\n");
  CHECK(cfg.kind == "convexity_scan");
  CHECK(cfg.seed == 42);
  CHECK(cfg.params.at("scan.alpha") == "0.75");

  CHECK_THROWS_AS(parse_config_text("output_dir = /tmp/x\n"), ConfigError);  // no kind
  CHECK_THROWS_AS(parse_config_text("kind = evolve\nbroken line\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("kind = evolve\na = 1\na = 2\n"), ConfigError);
}

TEST_CASE("validation rejects bad configs without output") {
  fs::path out = fresh_dir("fnls_cli_bad");
  SUBCASE("unknown kind") {
    ExperimentConfig cfg = parse_config_text("kind = warp\noutput_dir = " + out.string() + "\n");
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
    CHECK(!fs::exists(out));
  }
  SUBCASE("unknown key") {
    ExperimentConfig cfg = parse_config_text("kind = convexity_scan\nradiu = 8\noutput_dir = " +
                                             out.string() + "\n");
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
    CHECK(!fs::exists(out));
  }
  SUBCASE("bad value") {
    ExperimentConfig cfg = parse_config_text(
        "kind = picard_growth\nt = 0.7\noutput_dir = " + out.string() + "\n");
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
    CHECK(!fs::exists(out));
  }
  SUBCASE("missing output_dir") {
    ExperimentConfig cfg = parse_config_text("kind = convexity_scan\n");
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  }
}

TEST_CASE("experiment kinds are all listed") {
  auto kinds = experiment_kinds();
  for (const char* k :
       {"evolve", "energy_track", "m4_scan", "convexity_scan", "strichartz_l4",
        "strichartz_bilinear", "strichartz_l6", "sharp_example", "picard_growth", "galilean",
        "dominance", "choose_lambda"})
    CHECK(std::find(kinds.begin(), kinds.end(), k) != kinds.end());
}

TEST_CASE("runs are deterministic and reports echo enough to re-run") {
  fs::path out1 = fresh_dir("fnls_cli_det1");
  fs::path out2 = fresh_dir("fnls_cli_det2");
  std::string base =
      "kind = galilean\n"
      "seed = 9\n"
      "alpha = 0.75\n"
      "n_list = 16,32,64\n"
      "t_list = 0.01,0.1\n";
  ExperimentConfig cfg1 = parse_config_text(base + "output_dir = " + out1.string() + "\n");
  run_experiment(cfg1);
  nlohmann::json rep1 = load_json(out1 / "report.json");

  // rebuild the config purely from the report echo
  std::ostringstream rebuilt;
  for (const auto& [k, v] : rep1["config"].items()) {
    if (k == "output_dir") continue;
    if (v.is_string())
      rebuilt << k << " = " << v.get<std::string>() << "\n";
    else
      rebuilt << k << " = " << v << "\n";
  }
  rebuilt << "output_dir = " << out2.string() << "\n";
  ExperimentConfig cfg2 = parse_config_text(rebuilt.str());
  run_experiment(cfg2);
  nlohmann::json rep2 = load_json(out2 / "report.json");

  CHECK(rep1["results"].dump() == rep2["results"].dump());
  CHECK(rep1["seed"] == rep2["seed"]);
  fs::remove_all(out1);
  fs::remove_all(out2);
}

TEST_CASE("small runs of every kind produce reports") {
  struct Quick {
    const char* kind;
    const char* extra;
  };
  const Quick quick[] = {
      {"evolve", "num_points = 64\nmode_cap = 5\nmodes = 6\ndt = 0.01\nt_end = 0.1\n"},
      {"energy_track",
       "num_points = 64\nmode_cap = 4\nmodes = 5\ndt = 0.01\nt_end = 0.1\nN_list = 2,4\n"
       "snapshots = 4\namplitude = 0.3\n"},
      {"m4_scan", "radius = 16\nN = 2\nslice_radius = 3\n"},
      {"convexity_scan", "radius = 8\n"},
      {"strichartz_l4", "num_points = 64\nN_list = 4,8\ntrials = 3\nT = 0.5\n"},
      {"strichartz_bilinear",
       "num_points = 256\nN1_list = 16,32\nN2 = 2\ntrials = 2\nT = 0.3\n"},
      {"strichartz_l6", "num_points = 64\nN_list = 4,8\ntrials = 2\nT = 1\n"},
      {"sharp_example", "N1 = 64\nN2 = 8\nnum_points = 256\nT = 0.5\n"},
      {"picard_growth", "n_list = 32,64,128\nt = 0.05\n"},
      {"galilean", "n_list = 16,64\nt_list = 0.01\n"},
      {"dominance", "instances = 30\n"},
      {"choose_lambda", "N_list = 2,4\nnum_points = 4096\n"},
  };
  for (const Quick& q : quick) {
    CAPTURE(q.kind);
    fs::path out = fresh_dir(std::string("fnls_cli_") + q.kind);
    std::string text = std::string("kind = ") + q.kind + "\nseed = 3\n" + q.extra +
                       "output_dir = " + out.string() + "\n";
    ExperimentConfig cfg = parse_config_text(text);
    fs::path report = run_experiment(cfg);
    nlohmann::json j = load_json(report);
    CHECK(j["kind"] == q.kind);
    CHECK(j.contains("results"));
    CHECK(j.contains("input_hash"));
    for (const auto& f : j["files"]) CHECK(fs::exists(out / f.get<std::string>()));
    fs::remove_all(out);
  }
}
