// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "mhd/assembly.hpp"
#include "mhd/diagnostics.hpp"
#include "mhd/experiments.hpp"
#include "mhd/mms.hpp"
#include "mhd/problems.hpp"

using namespace mhd;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vec3 abc_field(const Vec3& x) {
  const double t = 2.0 * M_PI;
  return {std::sin(t * x[2]) + std::cos(t * x[1]), std::sin(t * x[0]) + std::cos(t * x[2]),
          std::sin(t * x[1]) + std::cos(t * x[0])};
}

SimParams vortex_params(double re_inv, double rm_inv) {
  SimParams p;
  p.n = 8;
  p.dt = 1.0 / 200.0;
  p.t_end = 1.0;
  p.re_inv = re_inv;
  p.rm_inv = rm_inv;
  p.picard_tol = 1e-10;
  p.krylov_tol = 1e-12;
  return p;
}

void ideal_run() {
  const auto t0 = std::chrono::steady_clock::now();
  DeRhamComplex cx(8);
  const auto p = vortex_params(0.0, 0.0);
  std::vector<double> div_raw;
  const auto traj = simulate(cx, p, 200, [&](const MhdState& s) { div_raw.push_back(div_max_raw(cx, s.B)); });
  const double elapsed = seconds_since(t0);
  if (!traj.failure.empty() || traj.records.size() != 201) {
    const std::string why = "run failed: " + traj.failure;
    report(1, "exact discrete Gauss law", false, why);
    report(2, "energy identity", false, why);
    report(3, "ideal helicity conservation", false, why);
    return;
  }
  double div_growth = 0.0, div_scaled = 0.0;
  for (std::size_t k = 0; k < div_raw.size(); ++k) div_growth = std::max(div_growth, div_raw[k] - div_raw[0]);
  for (const auto& r : traj.records) div_scaled = std::max(div_scaled, r.div_b_max);
  report(1, "exact discrete Gauss law",
         div_raw[0] <= 1e-10 && div_growth <= 1e-13 && elapsed <= 300.0,
         "max|DB0| = " + fmt("%.3e", div_raw[0]) + ", max growth = " + fmt("%.3e", div_growth) +
             " (volume-scaled max " + fmt("%.3e", div_scaled) + "), " + fmt("%.0f s", elapsed));

  const double e0 = traj.records[0].energy;
  double res = 0.0, drift = 0.0;
  for (const auto& r : traj.records) {
    res = std::max(res, r.res_energy);
    drift = std::max(drift, std::abs(r.energy - e0));
  }
  report(2, "energy identity", res <= 1e-8 * e0 && drift <= 1e-7 * e0,
         "E0 = " + fmt("%.6e", e0) + ", max residual/E0 = " + fmt("%.3e", res / e0) + ", max drift/E0 = " +
             fmt("%.3e", drift / e0));

  double dhm = 0.0, dhc = 0.0;
  for (const auto& r : traj.records) {
    dhm = std::max(dhm, std::abs(r.hm - traj.records[0].hm));
    dhc = std::max(dhc, std::abs(r.hc - traj.records[0].hc));
  }
  report(3, "ideal helicity conservation", dhm <= 1e-8 && dhc <= 1e-7,
         "H_m0 = " + fmt("%.3e", traj.records[0].hm) + ", max|dH_m| = " + fmt("%.3e", dhm) + ", H_c0 = " +
             fmt("%.3e", traj.records[0].hc) + ", max|dH_c| = " + fmt("%.3e", dhc));
}

void resistive_runs() {
  bool ok = true;
  std::string detail;
  for (double re_inv : {1e-3, 1e-4}) {
    DeRhamComplex cx(8);
    const auto p = vortex_params(re_inv, 1e-7);
    std::vector<double> scale;
    const auto traj = simulate(cx, p, 200, [&](const MhdState& s) { scale.push_back(field_scale(cx, s)); });
    if (!traj.failure.empty()) {
      ok = false;
      detail += "Re^-1=" + fmt("%g", re_inv) + " failed: " + traj.failure + "; ";
      continue;
    }
    double rm = 0.0, rc = 0.0, dhm = 0.0, dhc = 0.0;
    for (std::size_t k = 1; k < traj.records.size(); ++k) {
      const auto& r = traj.records[k];
      rm = std::max(rm, r.res_hm / scale[k]);
      rc = std::max(rc, r.res_hc / scale[k]);
      dhm = std::max(dhm, std::abs(r.hm - traj.records[0].hm));
      dhc = std::max(dhc, std::abs(r.hc - traj.records[0].hc));
    }
    // H_m near-constant, H_c visibly evolving.
    const bool run_ok = rm <= 1e-7 && rc <= 1e-7 && dhm <= 1e-8 && dhc >= 1e-6 && dhc >= 10.0 * dhm;
    ok = ok && run_ok;
    detail += "Re^-1=" + fmt("%g", re_inv) + ": r_m/scale " + fmt("%.2e", rm) + ", r_c/scale " + fmt("%.2e", rc) +
              ", |dH_m| " + fmt("%.2e", dhm) + ", |dH_c| " + fmt("%.2e", dhc) + "; ";
  }
  report(4, "helicity balance with resistivity", ok, detail);
}

void convergence() {
  const mms::Coefficients k{1e-4, 1e-4, 1.0};
  const auto gate = mms::validate_sources(k);
  if (!gate.passed) {
    report(5, "convergence orders", false, "source oracle failed");
    return;
  }
  const auto t0 = std::chrono::steady_clock::now();
  SimParams base;
  base.picard_tol = 1e-10;
  base.krylov_tol = 1e-12;
  const auto rows = mms::run_convergence({4, 8, 16}, 0.01, 1.0, k, base);
  const double reference_errors[3][3] = {{1.60e-3, 4.15e-4, 2.15e-4}, {7.80e-4, 2.18e-4, 1.24e-4}, {3.40e-4, 1.05e-4, 6.44e-5}};
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double e[3] = {r.err_b, r.err_u, r.err_p};
    for (int c = 0; c < 3; ++c) ok = ok && e[c] <= 3.0 * reference_errors[i][c] && e[c] >= reference_errors[i][c] / 3.0;
    if (i > 0) {
      for (double o : {r.order_b, r.order_u, r.order_p}) ok = ok && o >= 0.75 && o <= 1.3;
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "h=1/%d: %.2e (%.2f) %.2e (%.2f) %.2e (%.2f); ", static_cast<int>(1.0 / r.h + 0.5),
                  r.err_b, r.order_b, r.err_u, r.order_u, r.err_p, r.order_p);
    detail += buf;
  }
  detail += fmt("%.0f s", seconds_since(t0));
  report(5, "convergence orders", ok, detail);
}

void pollution() {
  SimParams p;
  p.n = 8;
  p.dt = 1.0 / 1000.0;
  p.t_end = 0.5;
  p.re_inv = 1.0 / 5000.0;
  p.rm_inv = 1.0 / 5000.0;
  p.coupling = 0.01;
  p.picard_tol = 1e-10;
  p.krylov_tol = 1e-12;
  DeRhamComplex cx(8);
  double drift[2] = {0.0, 0.0};
  std::string detail;
  bool ok = true;
  for (int s = 0; s < 2; ++s) {
    p.scheme = s == 0 ? Scheme::Main : Scheme::Reference;
    const auto traj = simulate(cx, p, 500);
    if (!traj.failure.empty()) {
      ok = false;
      detail += to_string(p.scheme) + " failed: " + traj.failure + "; ";
      continue;
    }
    for (const auto& r : traj.records) drift[s] = std::max(drift[s], std::abs(r.hm - traj.records[0].hm));
  }
  ok = ok && drift[1] >= 10.0 * drift[0];
  detail += "max|dH_m| main " + fmt("%.3e", drift[0]) + ", reference " + fmt("%.3e", drift[1]);
  // The vortex data has H_m = 0 by mirror symmetry. Helical data shows the balance-law defect
  // of the reference scheme directly (reported, not gated).
  double defect[2] = {0.0, 0.0};
  for (int s = 0; s < 2; ++s) {
    p.scheme = s == 0 ? Scheme::Main : Scheme::Reference;
    Integrator integ(cx, p);
    const auto a = interpolate(cx, SpaceKind::Curl, VectorField(abc_field));
    FieldVector b{SpaceKind::Div, cx.curl() * std::span<const double>(a.values)};
    if (s == 1) b = l2_project(cx, b, SpaceKind::Curl);
    auto u0 = solenoidal_part(cx, l2_project(cx, SpaceKind::Curl, VectorField(vortex_velocity)));
    std::vector<double> scale;
    const auto traj = simulate(integ, integ.initial_state(std::move(u0), std::move(b)), 50,
                               [&](const MhdState& st) { scale.push_back(field_scale(cx, st)); });
    for (std::size_t k = 1; k < traj.records.size(); ++k) defect[s] = std::max(defect[s], traj.records[k].res_hm / scale[k]);
  }
  detail += "; helical data, max r_m/scale over 50 steps: main " + fmt("%.2e", defect[0]) + ", reference " +
            fmt("%.2e", defect[1]);
  report(6, "pollution comparison", ok, detail);
}

void saddle_solves() {
  bool ok = true;
  std::string detail;
  for (std::size_t n : {4, 8, 16}) {
    DeRhamComplex cx(n);
    SimParams p;
    p.n = n;
    p.dt = 1.0;
    p.krylov_tol = 1e-10;
    p.krylov_max = 600;
    Integrator integ(cx, p);
    auto F = load_vector(cx, SpaceKind::Curl, VectorField([](const Vec3& x) {
                           return vortex_velocity(x) + bubble_potential_gradient(x);
                         }));
    cx.space(SpaceKind::Curl).pin(F);
    const std::vector<double> g(cx.space(SpaceKind::Grad).num_dofs(), 0.0);
    SolverReport rep;
    try {
      rep = integ.solve_velocity_pressure(F, g).report;
    } catch (const std::exception& e) {
      ok = false;
      detail += "n=" + std::to_string(n) + " failed: " + e.what() + "; ";
      continue;
    }
    bool monotone = true;
    for (std::size_t i = 1; i < rep.history.size(); ++i) monotone = monotone && rep.history[i] <= rep.history[i - 1];
    ok = ok && rep.converged && rep.iterations <= 600 && monotone;
    detail += "n=" + std::to_string(n) + ": " + std::to_string(rep.iterations) + " its, residual " +
              fmt("%.2e", rep.relative_residual) + (monotone ? "" : " (non-monotone)") + "; ";
  }
  report(7, "velocity-pressure MINRES", ok, detail);
}

void properties() {
  DeRhamComplex cx(3);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  auto random_field = [&](SpaceKind k) {
    std::vector<double> v(cx.space(k).num_dofs());
    for (auto& x : v) x = unif(rng);
    cx.space(k).pin(v);
    return FieldVector{k, v};
  };
  const double exact_cg = multiply(cx.curl(), cx.grad()).drop_zeros().max_abs();
  const double exact_dc = multiply(cx.div(), cx.curl()).drop_zeros().max_abs();

  double adj = 0.0, proj = 0.0, anti = 0.0, ortho = 0.0, gauge = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto b = random_field(SpaceKind::Div);
    const auto v = random_field(SpaceKind::Curl);
    const auto w = random_field(SpaceKind::Curl);
    const auto phi = random_field(SpaceKind::Grad);
    // (curl_h B, V) = (B, curl V) and (div_h v, phi) = -(v, grad phi).
    const auto j = discrete_curl(cx, b);
    const double lhs = cx.inner(SpaceKind::Curl, j.values, v.values);
    const double rhs = cx.inner(SpaceKind::Div, b.values, cx.curl() * std::span<const double>(v.values));
    adj = std::max(adj, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    const auto d = discrete_div(cx, v);
    const double l2 = cx.inner(SpaceKind::Grad, d.values, phi.values);
    const double r2 = -cx.inner(SpaceKind::Curl, v.values, cx.grad() * std::span<const double>(phi.values));
    adj = std::max(adj, std::abs(l2 - r2) / std::max(1.0, std::abs(l2)));
    // (Q_curl b, v) = (b, Q_div v).
    const auto qb = l2_project(cx, b, SpaceKind::Curl);
    const auto qv = l2_project(cx, v, SpaceKind::Div);
    const double pl = cx.inner(SpaceKind::Curl, qb.values, v.values);
    const double pr = cx.inner(SpaceKind::Div, b.values, qv.values);
    proj = std::max(proj, std::abs(pl - pr) / std::max(1.0, std::abs(pl)));
    const auto n1 = cross_form_vector(cx, v, w);
    const auto n2 = cross_form_vector(cx, w, v);
    anti = std::max(anti, vec::max_abs(vec::linear_combination(1.0, n1, 1.0, n2)));
    ortho = std::max(ortho, std::abs(vec::dot(v.values, n1)));
    // Gauge invariance of H_m for an exactly divergence-free field.
    const FieldVector bc{SpaceKind::Div, cx.curl() * std::span<const double>(w.values)};
    auto a = magnetic_potential(cx, bc);
    const double h0 = helicity_with_potential(cx, bc, a);
    vec::axpy(1.0, cx.grad() * std::span<const double>(phi.values), a.values);
    gauge = std::max(gauge, std::abs(helicity_with_potential(cx, bc, a) - h0));
  }
  const auto gate = mms::validate_sources({1e-4, 1e-4, 1.0});
  const bool ok = exact_cg == 0.0 && exact_dc == 0.0 && adj <= 1e-12 && proj <= 1e-12 && gauge <= 1e-11 &&
                  anti <= 1e-13 && ortho <= 1e-13 && gate.passed;
  report(8, "property suites", ok,
         "CG " + fmt("%g", exact_cg) + ", DC " + fmt("%g", exact_dc) + ", adjointness " + fmt("%.1e", adj) +
             ", projection symmetry " + fmt("%.1e", proj) + ", gauge " + fmt("%.1e", gauge) + ", antisymmetry " +
             fmt("%.1e", anti) + ", u.N(u,w) " + fmt("%.1e", ortho) + ", source oracle " +
             fmt("%.1e", std::max(gate.momentum_error, gate.induction_error)));
}

}  // namespace

int main() {
  properties();
  saddle_solves();
  ideal_run();
  resistive_runs();
  pollution();
  convergence();
  std::printf("%d failure(s)\n", failures);
  return failures;
}
