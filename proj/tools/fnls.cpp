#include <CLI11.hpp>
#include <exception>
#include <iostream>

#include "fnls/errors.hpp"
#include "fnls/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitIo = 5;

int run_one(const std::string& path, bool validate_only) {
  try {
    fnls::ExperimentConfig cfg = fnls::load_config(path);
    if (validate_only) {
      fnls::validate_config(cfg);
      std::cout << "ok: " << cfg.kind << " config is valid\n";
      return kExitOk;
    }
    auto report = fnls::run_experiment(cfg);
    std::cout << "report written to " << report.string() << "\n";
    return kExitOk;
  } catch (const fnls::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fnls::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const fnls::NumericalError& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral experiment runner for the periodic fractional cubic NLS"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run one experiment config and write its report");
  run->add_option("config", config_path, "path to a key = value config file")->required();

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check a config without running it");
  validate->add_option("config", validate_path, "path to a key = value config file")
      ->required();

  auto* list = app.add_subcommand("list-kinds", "print the available experiment kinds");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const auto& kind : fnls::experiment_kinds()) std::cout << kind << "\n";
    return kExitOk;
  }
  if (validate->parsed()) return run_one(validate_path, true);
  return run_one(config_path, false);
}
