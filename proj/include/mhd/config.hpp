#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhd/timestepper.hpp"

namespace mhd {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Experiment { Conserve, Converge, Compare, Solve };

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& name);

struct RunConfig {
  Experiment experiment = Experiment::Conserve;
  SimParams sim;
  std::string output_dir = "out";
  /// Field dumps every this many steps in `solve` (0: initial and final state only).
  int dump_every = 0;
  /// Mesh list of the convergence study.
  std::vector<std::size_t> meshes = {4, 8, 16};

  int num_steps() const;
};

/// Keys accepted in config files and as --key overrides.
const std::vector<std::string>& config_keys();

/// Applies one key/value pair. Throws ConfigError for unknown keys or malformed values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Parses `key = value` lines; '#' starts a comment. Throws ConfigError with the line number.
void apply_config_text(RunConfig& cfg, const std::string& text);
RunConfig load_config(Experiment experiment, const std::string& path,
                      const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// Text form of every key in config_keys() order; parsing it reproduces cfg exactly.
std::string config_to_text(const RunConfig& cfg);

/// Validates cross-key constraints (t_end a multiple of dt, non-empty mesh list, ...).
void validate(const RunConfig& cfg);

}  // namespace mhd
