#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

#include "mhd/config.hpp"
#include "mhd/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Structure-preserving incompressible MHD solver on the unit cube"};
  std::string experiment;
  std::string config_path;
  app.add_option("experiment", experiment, "conserve, converge, compare or solve")
      ->required()
      ->check(CLI::IsMember({"conserve", "converge", "compare", "solve"}));
  app.add_option("--config", config_path, "key = value configuration file")->required();
  std::map<std::string, std::string> overrides;
  for (const auto& key : mhd::config_keys()) {
    app.add_option("--" + key, overrides[key], "override '" + key + "' from the config file");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return mhd::kExitConfig;
  }

  std::vector<std::pair<std::string, std::string>> given;
  for (const auto& key : mhd::config_keys()) {
    if (app.get_option("--" + key)->count() > 0) given.emplace_back(key, overrides[key]);
  }
  mhd::RunConfig cfg;
  try {
    cfg = mhd::load_config(mhd::experiment_from_string(experiment), config_path, given);
  } catch (const mhd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return mhd::kExitConfig;
  }
  try {
    return mhd::run_experiment(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mhd::kExitFailure;
  }
}
