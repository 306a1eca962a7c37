#include "mhd/timestepper.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mhd/errors.hpp"

namespace mhd {

namespace {

std::vector<double> midpoint(const std::vector<double>& a, const std::vector<double>& b) {
  return vec::linear_combination(0.5, a, 0.5, b);
}

std::vector<double> difference(const std::vector<double>& a, const std::vector<double>& b) {
  return vec::linear_combination(1.0, a, -1.0, b);
}

const std::vector<double>* guess(const FieldVector& f) { return f.values.empty() ? nullptr : &f.values; }

}  // namespace

std::string to_string(Scheme s) { return s == Scheme::Main ? "main" : "reference"; }

Scheme scheme_from_string(const std::string& name) {
  if (name == "main") return Scheme::Main;
  if (name == "reference") return Scheme::Reference;
  throw std::invalid_argument("unknown scheme '" + name + "' (expected main or reference)");
}

void SimParams::validate() const {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be non-negative");
  if (re_inv < 0.0 || rm_inv < 0.0 || coupling < 0.0) {
    throw std::invalid_argument("re_inv, rm_inv and coupling must be non-negative");
  }
  if (!(picard_tol > 0.0) || picard_max < 1) throw std::invalid_argument("invalid Picard settings");
  if (!(krylov_tol > 0.0) || krylov_max < 1) throw std::invalid_argument("invalid Krylov settings");
}

Integrator::Integrator(const DeRhamComplex& cx, SimParams params, Sources sources)
    : cx_(cx), params_(params), sources_(std::move(sources)) {
  params_.validate();
  const auto& fe = cx_.space(SpaceKind::Curl).free_dofs();
  const auto& fv = cx_.space(SpaceKind::Grad).free_dofs();
  velocity_block_ = add(cx_.mass_free(SpaceKind::Curl), cx_.curl_curl_free(), 1.0 / params_.dt, 0.5 * params_.re_inv);
  const auto mg = multiply(cx_.mass(SpaceKind::Curl), cx_.grad()).submatrix(fe, fv);
  const std::size_t ne = fe.size();
  std::vector<Triplet> t;
  t.reserve(velocity_block_.nnz() + 2 * mg.nnz());
  for (std::size_t i = 0; i < velocity_block_.rows(); ++i) {
    for (std::size_t k = velocity_block_.row_ptr()[i]; k < velocity_block_.row_ptr()[i + 1]; ++k) {
      t.push_back({i, velocity_block_.col_idx()[k], velocity_block_.values()[k]});
    }
  }
  for (std::size_t i = 0; i < mg.rows(); ++i) {
    for (std::size_t k = mg.row_ptr()[i]; k < mg.row_ptr()[i + 1]; ++k) {
      t.push_back({i, ne + mg.col_idx()[k], mg.values()[k]});
      t.push_back({ne + mg.col_idx()[k], i, mg.values()[k]});
    }
  }
  saddle_ = SparseMatrix::from_triplets(ne + fv.size(), ne + fv.size(), std::move(t));
  // The Schur complement of the saddle matrix is exactly dt * G^T M1 G because K G = 0.
  saddle_prec_ = block_diagonal_preconditioner(velocity_block_, cx_.grad_laplacian_free(), 1.0 / params_.dt,
                                               params_.pressure_sweeps);
  if (params_.scheme == Scheme::Reference) {
    magnetic_block_ =
        add(cx_.mass_free(SpaceKind::Curl), cx_.curl_curl_free(), 1.0 / params_.dt, 0.5 * params_.rm_inv);
    magnetic_prec_ = jacobi_preconditioner(magnetic_block_);
  }
}

MhdState Integrator::initial_state(FieldVector u0, FieldVector b0) const {
  const SpaceKind bkind = params_.scheme == Scheme::Main ? SpaceKind::Div : SpaceKind::Curl;
  if (u0.space != SpaceKind::Curl || u0.values.size() != cx_.space(SpaceKind::Curl).num_dofs()) {
    throw std::invalid_argument("initial velocity must be a Curl field");
  }
  if (b0.space != bkind || b0.values.size() != cx_.space(bkind).num_dofs()) {
    throw std::invalid_argument("initial magnetic field must be a " + to_string(bkind) + " field");
  }
  MhdState s;
  s.u = std::move(u0);
  s.B = std::move(b0);
  s.P = {SpaceKind::Grad, std::vector<double>(cx_.space(SpaceKind::Grad).num_dofs(), 0.0)};
  if (params_.scheme == Scheme::Main) {
    main_auxiliaries(s.u.values, s.B.values, s);
  } else {
    const auto cu = cx_.curl() * std::span<const double>(s.u.values);
    s.omega = {SpaceKind::Curl, cx_.solve_mass(SpaceKind::Curl, cx_.mixed_mass() * std::span<const double>(cu))};
    s.j = {SpaceKind::Div, cx_.curl() * std::span<const double>(s.B.values)};
    s.H = s.B;
    s.E = {SpaceKind::Curl, std::vector<double>(s.u.values.size(), 0.0)};
  }
  return s;
}

void Integrator::main_auxiliaries(const std::vector<double>& u_mid, const std::vector<double>& b_mid,
                                  MhdState& out) const {
  const FieldVector b{SpaceKind::Div, b_mid};
  const FieldVector u{SpaceKind::Curl, u_mid};
  out.H = l2_project(cx_, b, SpaceKind::Curl, guess(out.H));
  out.j = discrete_curl(cx_, b, guess(out.j));
  const auto q = cx_.solve_mass(SpaceKind::Curl, cross_form_vector(cx_, u, out.H));
  out.E = {SpaceKind::Curl, vec::linear_combination(params_.rm_inv, out.j.values, -1.0, q)};
  const auto cu = cx_.curl() * std::span<const double>(u_mid);
  out.omega = {SpaceKind::Curl, cx_.solve_mass(SpaceKind::Curl, cx_.mixed_mass() * std::span<const double>(cu),
                                               guess(out.omega))};
}

SaddleSolution Integrator::solve_velocity_pressure(std::span<const double> F, std::span<const double> constraint,
                                                   const std::vector<double>* u_guess,
                                                   const std::vector<double>* p_guess) const {
  const auto& se = cx_.space(SpaceKind::Curl);
  const auto& sv = cx_.space(SpaceKind::Grad);
  if (F.size() != se.num_dofs() || constraint.size() != sv.num_dofs()) {
    throw std::invalid_argument("solve_velocity_pressure: load vectors have wrong length");
  }
  const std::size_t ne = se.num_free(), np = sv.num_free();
  std::vector<double> rhs(ne + np), x(ne + np, 0.0);
  for (std::size_t i = 0; i < ne; ++i) rhs[i] = F[se.free_dofs()[i]];
  for (std::size_t i = 0; i < np; ++i) rhs[ne + i] = constraint[sv.free_dofs()[i]];
  if (u_guess) {
    for (std::size_t i = 0; i < ne; ++i) x[i] = (*u_guess)[se.free_dofs()[i]];
  }
  if (p_guess) {
    for (std::size_t i = 0; i < np; ++i) x[ne + i] = (*p_guess)[sv.free_dofs()[i]];
  }
  SaddleSolution sol;
  sol.report = minres(saddle_, rhs, x, KrylovOptions{params_.krylov_tol, params_.krylov_max, 200}, saddle_prec_);
  if (!sol.report.converged) {
    throw SolverFailure("velocity-pressure MINRES did not converge: relative residual " +
                        std::to_string(sol.report.relative_residual) + " after " +
                        std::to_string(sol.report.iterations) + " iterations");
  }
  sol.u.assign(se.num_dofs(), 0.0);
  sol.p.assign(sv.num_dofs(), 0.0);
  for (std::size_t i = 0; i < ne; ++i) sol.u[se.free_dofs()[i]] = x[i];
  for (std::size_t i = 0; i < np; ++i) sol.p[sv.free_dofs()[i]] = x[ne + i];
  return sol;
}

std::vector<double> Integrator::advance_magnetic(std::span<const double> b_n, std::span<const double> e_mid,
                                                 const std::vector<double>* induction) const {
  const auto ce = cx_.curl() * e_mid;
  std::vector<double> b(b_n.begin(), b_n.end());
  vec::axpy(-params_.dt, ce, b);
  if (induction) vec::axpy(params_.dt, *induction, b);
  return b;
}

std::vector<double> Integrator::momentum_load(double t) const {
  if (!sources_.momentum) return std::vector<double>(cx_.space(SpaceKind::Curl).num_dofs(), 0.0);
  auto f = load_vector(cx_, SpaceKind::Curl, VectorField([&](const Vec3& x) { return sources_.momentum(x, t); }));
  cx_.space(SpaceKind::Curl).pin(f);
  return f;
}

std::vector<double> Integrator::constraint_load(double t, std::span<const double> u_n) const {
  // G^T M1 u^{n+1} = 2 (w, grad Q) - G^T M1 u^n
  const auto mu = cx_.mass(SpaceKind::Curl) * u_n;
  auto c = cx_.grad().transpose_times(mu);
  vec::scale(-1.0, c);
  if (sources_.constraint_velocity) {
    const auto w = load_vector(cx_, SpaceKind::Curl,
                               VectorField([&](const Vec3& x) { return sources_.constraint_velocity(x, t); }));
    vec::axpy(2.0, cx_.grad().transpose_times(w), c);
  }
  cx_.space(SpaceKind::Grad).pin(c);
  return c;
}

MhdState Integrator::step(const MhdState& s, PicardReport* report) const {
  return params_.scheme == Scheme::Main ? step_main(s, report) : step_reference(s, report);
}

MhdState Integrator::step_main(const MhdState& s, PicardReport* report) const {
  const double dt = params_.dt;
  const double tm = s.t + 0.5 * dt;
  const auto& un = s.u.values;
  const auto& bn = s.B.values;
  const auto& m1 = cx_.mass(SpaceKind::Curl);

  // Terms of the velocity right-hand side that do not change during the sweeps.
  auto base = m1 * std::span<const double>(un);
  vec::scale(1.0 / dt, base);
  if (params_.re_inv != 0.0) vec::axpy(-0.5 * params_.re_inv, cx_.curl_curl() * std::span<const double>(un), base);
  vec::axpy(1.0, momentum_load(tm), base);
  const auto constraint = constraint_load(tm, un);
  std::optional<std::vector<double>> induction;
  if (sources_.induction) {
    const auto g = load_vector(cx_, SpaceKind::Div, VectorField([&](const Vec3& x) { return sources_.induction(x, tm); }));
    induction = cx_.solve_mass(SpaceKind::Div, g);
  }

  PicardReport rep;
  MhdState out = s;
  std::vector<double> uk = un, bk = bn, pk = s.P.values;
  std::vector<double> q_guess;
  for (int k = 1; k <= params_.picard_max; ++k) {
    auto umid = midpoint(un, uk);
    auto bmid = midpoint(bn, bk);
    const FieldVector uf{SpaceKind::Curl, umid};
    out.H = l2_project(cx_, FieldVector{SpaceKind::Div, bmid}, SpaceKind::Curl, guess(out.H));
    out.j = discrete_curl(cx_, FieldVector{SpaceKind::Div, bmid}, guess(out.j));
    const auto q = cx_.solve_mass(SpaceKind::Curl, cross_form_vector(cx_, uf, out.H), q_guess.empty() ? nullptr : &q_guess);
    q_guess = q;
    const auto e = vec::linear_combination(params_.rm_inv, out.j.values, -1.0, q);
    auto bnew = advance_magnetic(bn, e, induction ? &*induction : nullptr);

    bmid = midpoint(bn, bnew);
    out.H = l2_project(cx_, FieldVector{SpaceKind::Div, bmid}, SpaceKind::Curl, guess(out.H));
    out.j = discrete_curl(cx_, FieldVector{SpaceKind::Div, bmid}, guess(out.j));
    const auto cu = cx_.curl() * std::span<const double>(umid);
    out.omega = {SpaceKind::Curl,
                 cx_.solve_mass(SpaceKind::Curl, cx_.mixed_mass() * std::span<const double>(cu), guess(out.omega))};

    auto rhs = base;
    vec::axpy(1.0, cross_form_vector(cx_, uf, out.omega), rhs);
    if (params_.coupling != 0.0) vec::axpy(params_.coupling, cross_form_vector(cx_, out.j, out.H), rhs);
    auto sol = solve_velocity_pressure(rhs, constraint, &uk, &pk);
    rep.inner_iterations += sol.report.iterations;

    const double du = cx_.norm(SpaceKind::Curl, difference(sol.u, uk));
    const double db = cx_.norm(SpaceKind::Div, difference(bnew, bk));
    const double diff = (du + db) / dt;
    rep.differences.push_back(diff);
    rep.iterations = k;
    uk = std::move(sol.u);
    bk = std::move(bnew);
    pk = std::move(sol.p);
    if (diff < params_.picard_tol) {
      rep.converged = true;
      break;
    }
  }
  if (report) *report = rep;
  if (!rep.converged) {
    throw StepFailure("Picard iteration did not converge in step " + std::to_string(s.step + 1) +
                          " (last difference " + std::to_string(rep.differences.back()) + ")",
                      s.step + 1);
  }
  out.u = {SpaceKind::Curl, std::move(uk)};
  out.B = {SpaceKind::Div, std::move(bk)};
  out.P = {SpaceKind::Grad, std::move(pk)};
  main_auxiliaries(midpoint(un, out.u.values), midpoint(bn, out.B.values), out);
  out.t = s.t + dt;
  out.step = s.step + 1;
  return out;
}

MhdState Integrator::step_reference(const MhdState& s, PicardReport* report) const {
  if (params_.scheme != Scheme::Reference) throw std::logic_error("integrator not configured for the reference scheme");
  const double dt = params_.dt;
  const double tm = s.t + 0.5 * dt;
  const auto& un = s.u.values;
  const auto& bn = s.B.values;
  const auto& m1 = cx_.mass(SpaceKind::Curl);
  const auto& fe = cx_.space(SpaceKind::Curl);

  auto base = m1 * std::span<const double>(un);
  vec::scale(1.0 / dt, base);
  if (params_.re_inv != 0.0) vec::axpy(-0.5 * params_.re_inv, cx_.curl_curl() * std::span<const double>(un), base);
  vec::axpy(1.0, momentum_load(tm), base);
  const auto constraint = constraint_load(tm, un);

  auto bbase = m1 * std::span<const double>(bn);
  vec::scale(1.0 / dt, bbase);
  if (params_.rm_inv != 0.0) vec::axpy(-0.5 * params_.rm_inv, cx_.curl_curl() * std::span<const double>(bn), bbase);

  PicardReport rep;
  MhdState out = s;
  std::vector<double> uk = un, bk = bn, pk = s.P.values;
  for (int k = 1; k <= params_.picard_max; ++k) {
    const auto umid = midpoint(un, uk);
    auto bmid = midpoint(bn, bk);
    const FieldVector uf{SpaceKind::Curl, umid};
    auto brhs = bbase;
    vec::axpy(1.0, mixed_cross_form_vector(cx_, uf, FieldVector{SpaceKind::Curl, bmid}), brhs);
    auto bf = fe.restrict_to_free(bk);
    const auto brep = cg(magnetic_block_, fe.restrict_to_free(brhs), bf,
                         KrylovOptions{params_.krylov_tol, params_.krylov_max, 200}, magnetic_prec_);
    if (!brep.converged) throw SolverFailure("magnetic CG solve did not converge");
    rep.inner_iterations += brep.iterations;
    auto bnew = fe.extend_from_free(bf);

    bmid = midpoint(bn, bnew);
    const auto cu = cx_.curl() * std::span<const double>(umid);
    out.omega = {SpaceKind::Curl,
                 cx_.solve_mass(SpaceKind::Curl, cx_.mixed_mass() * std::span<const double>(cu), guess(out.omega))};
    const FieldVector curl_b{SpaceKind::Div, cx_.curl() * std::span<const double>(bmid)};
    auto rhs = base;
    vec::axpy(1.0, cross_form_vector(cx_, uf, out.omega), rhs);
    if (params_.coupling != 0.0) {
      vec::axpy(params_.coupling, cross_form_vector(cx_, curl_b, FieldVector{SpaceKind::Curl, bmid}), rhs);
    }
    auto sol = solve_velocity_pressure(rhs, constraint, &uk, &pk);
    rep.inner_iterations += sol.report.iterations;

    const double du = cx_.norm(SpaceKind::Curl, difference(sol.u, uk));
    const double db = cx_.norm(SpaceKind::Curl, difference(bnew, bk));
    const double diff = (du + db) / dt;
    rep.differences.push_back(diff);
    rep.iterations = k;
    uk = std::move(sol.u);
    bk = std::move(bnew);
    pk = std::move(sol.p);
    if (diff < params_.picard_tol) {
      rep.converged = true;
      break;
    }
  }
  if (report) *report = rep;
  if (!rep.converged) {
    throw StepFailure("Picard iteration did not converge in step " + std::to_string(s.step + 1) +
                          " (last difference " + std::to_string(rep.differences.back()) + ")",
                      s.step + 1);
  }
  out.u = {SpaceKind::Curl, std::move(uk)};
  out.B = {SpaceKind::Curl, std::move(bk)};
  out.P = {SpaceKind::Grad, std::move(pk)};
  const auto umid = midpoint(un, out.u.values);
  const auto bmid = midpoint(bn, out.B.values);
  const auto cu = cx_.curl() * std::span<const double>(umid);
  out.omega = {SpaceKind::Curl, cx_.solve_mass(SpaceKind::Curl, cx_.mixed_mass() * std::span<const double>(cu))};
  out.H = {SpaceKind::Curl, bmid};
  out.j = {SpaceKind::Div, cx_.curl() * std::span<const double>(bmid)};
  out.E = {SpaceKind::Curl, std::vector<double>(umid.size(), 0.0)};
  out.t = s.t + dt;
  out.step = s.step + 1;
  return out;
}

}  // namespace mhd
