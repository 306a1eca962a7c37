#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mhd/config.hpp"
#include "mhd/diagnostics.hpp"

namespace mhd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitStep = 3;
inline constexpr int kExitOracle = 4;

struct Trajectory {
  std::vector<DiagnosticsRecord> records;
  MhdState final_state;
  /// Set when a step failed; records hold the accepted steps.
  std::string failure;
};

using StateCallback = std::function<void(const MhdState&)>;

/// Runs the configured scheme from the vortex initial data for `steps` steps and records the
/// diagnostics of every accepted state (step 0 included). Step and solver failures are caught
/// and reported in Trajectory::failure.
Trajectory simulate(const DeRhamComplex& cx, const SimParams& params, int steps, const StateCallback& on_state = {});
/// Same from a given initial state.
Trajectory simulate(const Integrator& integ, MhdState initial, int steps, const StateCallback& on_state = {});

/// Runs one experiment and writes its outputs below cfg.output_dir. Returns an exit status.
int run_experiment(const RunConfig& cfg, std::ostream& log);

}  // namespace mhd
