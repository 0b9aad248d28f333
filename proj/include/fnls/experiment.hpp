#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace fnls {

/// One experiment description: a kind, a flat key = value block, and an
/// output directory. Parsed from the plain-text config format (one
/// experiment per file, `#` comments, optional [section] headers that
/// prefix keys as "section.key").
struct ExperimentConfig {
  std::string kind;
  std::string output_dir;
  std::uint64_t seed = 1;
  std::map<std::string, std::string> params;  // everything else, verbatim
  std::string source_text;                    // raw file contents for hashing
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

std::vector<std::string> experiment_kinds();

/// Checks the kind and every required key (presence, parseability, ranges)
/// without computing anything. Throws ConfigError.
void validate_config(const ExperimentConfig& cfg);

/// Runs the experiment and writes `report.json` plus kind-specific CSV and
/// field files under cfg.output_dir. The report is written atomically and
/// echoes the config, the input hash, and every scalar result. Returns the
/// report path.
std::filesystem::path run_experiment(const ExperimentConfig& cfg);

}  // namespace fnls
