#include "mhd/experiments.hpp"

#include <cstdio>
#include <filesystem>
#include <ostream>

#include "mhd/errors.hpp"
#include "mhd/mms.hpp"
#include "mhd/output.hpp"
#include "mhd/problems.hpp"

namespace mhd {

namespace {

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

using FieldDump = std::function<void(const DeRhamComplex&, const MhdState&)>;

int timeseries_run(const RunConfig& cfg, const SimParams& sim, const std::string& file, std::ostream& log,
                   const FieldDump& dump = {}) {
  DeRhamComplex cx(sim.n);
  StateCallback on_state;
  if (dump) on_state = [&](const MhdState& s) { dump(cx, s); };
  const auto traj = simulate(cx, sim, cfg.num_steps(), on_state);
  write_text_file(join(cfg.output_dir, file), timeseries_csv(traj.records));
  if (!traj.failure.empty()) {
    log << "step failure: " << traj.failure << "\n";
    return kExitStep;
  }
  const auto& last = traj.records.back();
  log << file << ": " << traj.records.size() - 1 << " steps, energy " << last.energy << ", hm " << last.hm << ", hc "
      << last.hc << "\n";
  return kExitOk;
}

}  // namespace

Trajectory simulate(const DeRhamComplex& cx, const SimParams& params, int steps, const StateCallback& on_state) {
  Integrator integ(cx, params);
  return simulate(integ, vortex_initial_state(integ), steps, on_state);
}

Trajectory simulate(const Integrator& integ, MhdState initial, int steps, const StateCallback& on_state) {
  const auto& cx = integ.complex();
  Trajectory out;
  MhdState s = std::move(initial);
  double hm = state_magnetic_helicity(cx, s.B);
  out.records.push_back(make_record(integ, s, hm));
  if (on_state) on_state(s);
  for (int k = 0; k < steps; ++k) {
    PicardReport rep;
    MhdState s1;
    try {
      s1 = integ.step(s, &rep);
    } catch (const StepFailure& e) {
      out.failure = e.what();
      break;
    } catch (const SolverFailure& e) {
      out.failure = "step " + std::to_string(s.step + 1) + ": " + e.what();
      break;
    }
    const double hm1 = state_magnetic_helicity(cx, s1.B);
    auto rec = make_record(integ, s1, hm1);
    rec.res_energy = energy_identity_residual(integ, s, s1);
    const auto hr = helicity_identity_residuals(integ, s, s1, hm, hm1);
    rec.res_hm = hr.r_m;
    rec.res_hc = hr.r_c;
    rec.picard_iters = rep.iterations;
    rec.inner_iters = rep.inner_iterations;
    out.records.push_back(rec);
    if (on_state) on_state(s1);
    s = std::move(s1);
    hm = hm1;
  }
  out.final_state = std::move(s);
  return out;
}

int run_experiment(const RunConfig& cfg, std::ostream& log) {
  std::filesystem::create_directories(cfg.output_dir);
  write_text_file(join(cfg.output_dir, "manifest"), config_to_text(cfg));
  switch (cfg.experiment) {
    case Experiment::Conserve:
      return timeseries_run(cfg, cfg.sim, "timeseries.csv", log);
    case Experiment::Compare: {
      SimParams main = cfg.sim, ref = cfg.sim;
      main.scheme = Scheme::Main;
      ref.scheme = Scheme::Reference;
      const int a = timeseries_run(cfg, main, "timeseries_main.csv", log);
      if (a != kExitOk) return a;
      return timeseries_run(cfg, ref, "timeseries_reference.csv", log);
    }
    case Experiment::Converge: {
      const mms::Coefficients k{cfg.sim.re_inv, cfg.sim.rm_inv, cfg.sim.coupling};
      const auto check = mms::validate_sources(k);
      log << "source check: momentum " << check.momentum_error << ", induction " << check.induction_error << "\n";
      if (!check.passed) {
        log << "source check failed\n";
        return kExitOracle;
      }
      try {
        const auto rows = mms::run_convergence(cfg.meshes, cfg.sim.dt, cfg.sim.t_end, k, cfg.sim);
        write_text_file(join(cfg.output_dir, "convergence.csv"), error_table_csv(rows));
      } catch (const StepFailure& e) {
        log << "step failure: " << e.what() << "\n";
        return kExitStep;
      } catch (const SolverFailure& e) {
        log << "solver failure: " << e.what() << "\n";
        return kExitStep;
      }
      log << "convergence.csv written for " << cfg.meshes.size() << " meshes\n";
      return kExitOk;
    }
    case Experiment::Solve: {
      const int every = cfg.dump_every;
      const int last = cfg.num_steps();
      FieldDump dump = [&](const DeRhamComplex& cx, const MhdState& s) {
        if (s.step == 0 || s.step == last || (every > 0 && s.step % every == 0)) {
          char name[32];
          std::snprintf(name, sizeof name, "fields_%06d.vtk", s.step);
          write_text_file(join(cfg.output_dir, name), fields_vtk(cx, s));
        }
      };
      return timeseries_run(cfg, cfg.sim, "timeseries.csv", log, dump);
    }
  }
  return kExitFailure;
}

}  // namespace mhd
