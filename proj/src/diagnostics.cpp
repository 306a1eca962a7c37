#include "mhd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mhd/assembly.hpp"
#include "mhd/errors.hpp"

namespace mhd {

namespace {

std::vector<double> midpoint(const std::vector<double>& a, const std::vector<double>& b) {
  return vec::linear_combination(0.5, a, 0.5, b);
}

std::vector<double> weak_divergence(const DeRhamComplex& cx, const FieldVector& b) {
  const auto mb = cx.mass(SpaceKind::Curl) * std::span<const double>(b.values);
  auto d = cx.grad().transpose_times(mb);
  cx.space(SpaceKind::Grad).pin(d);
  return d;
}

}  // namespace

DivNorms div_norms(const DeRhamComplex& cx, const FieldVector& b) {
  DivNorms out;
  if (b.space == SpaceKind::Curl) {
    const auto d = weak_divergence(cx, b);
    out.l2 = vec::norm(d);
    out.max = vec::max_abs(d);
    return out;
  }
  if (b.space != SpaceKind::Div) throw std::invalid_argument("div_norms: field must be a Div or Curl field");
  const auto db = cx.div() * std::span<const double>(b.values);
  double s = 0.0;
  for (std::size_t t = 0; t < db.size(); ++t) {
    const double vol = cx.geometry()[t].volume;
    s += db[t] * db[t] / vol;
    out.max = std::max(out.max, std::abs(db[t]) / vol);
  }
  out.l2 = std::sqrt(s);
  return out;
}

double div_max_raw(const DeRhamComplex& cx, const FieldVector& b) {
  if (b.space != SpaceKind::Div) throw std::invalid_argument("div_max_raw: field must be a Div field");
  return vec::max_abs(cx.div() * std::span<const double>(b.values));
}

double weak_div_max(const DeRhamComplex& cx, const FieldVector& b) {
  if (b.space != SpaceKind::Curl) throw std::invalid_argument("weak_div_max: field must be a Curl field");
  return vec::max_abs(weak_divergence(cx, b));
}

FieldVector magnetic_potential(const DeRhamComplex& cx, const FieldVector& b, const PotentialOptions& opt,
                               SolverReport* report) {
  if (b.space != SpaceKind::Div) throw std::invalid_argument("magnetic_potential: field must be a Div field");
  const double dmax = div_max_raw(cx, b);
  const double bmax = vec::max_abs(b.values);
  if (dmax > opt.div_threshold * std::max(1.0, bmax)) {
    throw PreconditionViolation("magnetic helicity undefined: max |D B| = " + std::to_string(dmax));
  }
  const auto& se = cx.space(SpaceKind::Curl);
  const auto mb = cx.mass(SpaceKind::Div) * std::span<const double>(b.values);
  const auto rhs = se.restrict_to_free(cx.curl().transpose_times(mb));
  std::vector<double> x(rhs.size(), 0.0);
  SolverReport rep;
  if (!rhs.empty()) {
    rep = gmres(cx.curl_curl_free(), rhs, x, KrylovOptions{opt.tol, opt.max_iterations, 200},
                ssor_preconditioner(cx.curl_curl_free()));
  } else {
    rep.converged = true;
  }
  if (report) *report = rep;
  if (!rep.converged) {
    throw SolverFailure("vector potential GMRES did not converge: relative residual " +
                        std::to_string(rep.relative_residual));
  }
  return {SpaceKind::Curl, se.extend_from_free(x)};
}

double helicity_with_potential(const DeRhamComplex& cx, const FieldVector& b, const FieldVector& a) {
  const auto xb = cx.mixed_mass() * std::span<const double>(b.values);
  return vec::dot(a.values, xb);
}

double magnetic_helicity(const DeRhamComplex& cx, const FieldVector& b, const PotentialOptions& opt,
                         FieldVector* potential) {
  const auto a = magnetic_potential(cx, b, opt);
  const double h = helicity_with_potential(cx, b, a);
  if (potential) *potential = a;
  return h;
}

double state_magnetic_helicity(const DeRhamComplex& cx, const FieldVector& b, const PotentialOptions& opt) {
  if (b.space == SpaceKind::Curl) return magnetic_helicity(cx, divfree_project(cx, b), opt);
  return magnetic_helicity(cx, b, opt);
}

double cross_helicity(const DeRhamComplex& cx, const FieldVector& u, const FieldVector& b) {
  if (u.space != SpaceKind::Curl) throw std::invalid_argument("cross_helicity: velocity must be a Curl field");
  if (b.space == SpaceKind::Div) return helicity_with_potential(cx, b, u);
  if (b.space == SpaceKind::Curl) return cx.inner(SpaceKind::Curl, u.values, b.values);
  throw std::invalid_argument("cross_helicity: magnetic field must be a Div or Curl field");
}

FieldVector divfree_project(const DeRhamComplex& cx, const FieldVector& b, double tol, SolverReport* report) {
  std::vector<double> load;
  if (b.space == SpaceKind::Div) {
    load = cx.mass(SpaceKind::Div) * std::span<const double>(b.values);
  } else if (b.space == SpaceKind::Curl) {
    load = cx.mixed_mass().transpose_times(b.values);
  } else {
    throw std::invalid_argument("divfree_project: field must be a Curl or Div field");
  }
  const auto& sf = cx.space(SpaceKind::Div);
  const auto& ff = sf.free_dofs();
  const std::size_t nf = ff.size();
  const std::size_t nc = cx.mesh().num_cells();
  // Multiplier of cell 0 is pinned; the remaining cells keep their order.
  std::vector<std::size_t> cells;
  for (std::size_t t = 1; t < nc; ++t) cells.push_back(t);
  const auto& m2 = cx.mass_free(SpaceKind::Div);
  const auto dd = cx.div().submatrix(cells, ff);
  std::vector<Triplet> trip;
  for (std::size_t i = 0; i < m2.rows(); ++i) {
    for (std::size_t k = m2.row_ptr()[i]; k < m2.row_ptr()[i + 1]; ++k) trip.push_back({i, m2.col_idx()[k], m2.values()[k]});
  }
  for (std::size_t i = 0; i < dd.rows(); ++i) {
    for (std::size_t k = dd.row_ptr()[i]; k < dd.row_ptr()[i + 1]; ++k) {
      trip.push_back({nf + i, dd.col_idx()[k], dd.values()[k]});
      trip.push_back({dd.col_idx()[k], nf + i, dd.values()[k]});
    }
  }
  const auto sys = SparseMatrix::from_triplets(nf + cells.size(), nf + cells.size(), std::move(trip));
  // Schur complement approximation D diag(M2)^-1 D^T.
  const auto dm = m2.diagonal_entries();
  std::vector<double> inv(dm.size());
  for (std::size_t i = 0; i < dm.size(); ++i) inv[i] = 1.0 / dm[i];
  const auto schur = multiply(dd, multiply(SparseMatrix::diagonal(inv), dd.transpose()));
  const auto prec = block_diagonal_preconditioner(m2, schur, 1.0, 2);
  std::vector<double> rhs(nf + cells.size(), 0.0), x(nf + cells.size(), 0.0);
  for (std::size_t i = 0; i < nf; ++i) rhs[i] = load[ff[i]];
  const auto rep = minres(sys, rhs, x, KrylovOptions{tol, 20000, 200}, prec);
  if (report) *report = rep;
  if (!rep.converged) {
    throw SolverFailure("divergence-free projection did not converge: relative residual " +
                        std::to_string(rep.relative_residual));
  }
  x.resize(nf);
  return {SpaceKind::Div, sf.extend_from_free(x)};
}

HelicityBound helicity_energy_bound(const DeRhamComplex& cx, const FieldVector& b, const PotentialOptions& opt) {
  HelicityBound out;
  out.b_norm2 = cx.inner(SpaceKind::Div, b.values, b.values);
  if (out.b_norm2 == 0.0) return out;
  out.hm = magnetic_helicity(cx, b, opt);
  out.ratio = out.hm / out.b_norm2;
  return out;
}

double energy(const DeRhamComplex& cx, const MhdState& s, double coupling) {
  return 0.5 * cx.inner(SpaceKind::Curl, s.u.values, s.u.values) +
         0.5 * coupling * cx.inner(s.B.space, s.B.values, s.B.values);
}

double field_scale(const DeRhamComplex& cx, const MhdState& s) {
  return cx.inner(SpaceKind::Curl, s.u.values, s.u.values) + cx.inner(s.B.space, s.B.values, s.B.values);
}

double energy_identity_residual(const Integrator& integ, const MhdState& s0, const MhdState& s1) {
  const auto& cx = integ.complex();
  const auto& p = integ.params();
  const double dt = s1.t - s0.t;
  const double tm = s0.t + 0.5 * dt;
  const auto um = midpoint(s0.u.values, s1.u.values);
  const auto bm = midpoint(s0.B.values, s1.B.values);
  const SpaceKind bk = s1.B.space;
  const double du = (cx.inner(SpaceKind::Curl, s1.u.values, s1.u.values) - cx.inner(SpaceKind::Curl, s0.u.values, s0.u.values)) /
                    (2.0 * dt);
  const auto dbv = vec::linear_combination(1.0 / dt, s1.B.values, -1.0 / dt, s0.B.values);
  const double db = cx.inner(bk, dbv, bm);
  const double visc = vec::dot(um, cx.curl_curl() * std::span<const double>(um));
  double ohm = 0.0;
  if (bk == SpaceKind::Div) {
    ohm = cx.inner(SpaceKind::Curl, s1.j.values, s1.j.values);
  } else {
    ohm = vec::dot(bm, cx.curl_curl() * std::span<const double>(bm));
  }
  double work = 0.0;
  if (integ.sources().momentum) {
    const auto f = load_vector(cx, SpaceKind::Curl, VectorField([&](const Vec3& x) { return integ.sources().momentum(x, tm); }));
    work = vec::dot(f, um);
  }
  return std::abs(du + p.coupling * db + p.re_inv * visc + p.coupling * p.rm_inv * ohm - work);
}

HelicityResiduals helicity_identity_residuals(const Integrator& integ, const MhdState& s0, const MhdState& s1,
                                              double hm0, double hm1) {
  const auto& cx = integ.complex();
  const auto& p = integ.params();
  const double dt = s1.t - s0.t;
  const double tm = s0.t + 0.5 * dt;
  const auto um = midpoint(s0.u.values, s1.u.values);
  const auto cu = cx.curl() * std::span<const double>(um);
  HelicityResiduals r;
  const double hc0 = cross_helicity(cx, s0.u, s0.B);
  const double hc1 = cross_helicity(cx, s1.u, s1.B);
  std::vector<double> h, f;
  if (integ.sources().momentum) {
    f = load_vector(cx, SpaceKind::Curl, VectorField([&](const Vec3& x) { return integ.sources().momentum(x, tm); }));
  }
  if (s1.B.space == SpaceKind::Div) {
    h = s1.H.values;
    const auto& j = s1.j.values;
    r.rhs_m = -2.0 * p.rm_inv * cx.inner(SpaceKind::Curl, h, j);
    const double curl_u_j = vec::dot(j, cx.mixed_mass() * std::span<const double>(cu));
    const double omega_j = cx.inner(SpaceKind::Curl, s1.omega.values, j);
    const double visc = vec::dot(um, cx.curl_curl() * std::span<const double>(h));
    const double force = f.empty() ? 0.0 : vec::dot(f, h);
    r.rhs_c = -p.re_inv * visc - p.rm_inv * curl_u_j + force;
    r.rhs_c_omega = -p.re_inv * visc - p.rm_inv * omega_j + force;
  } else {
    h = midpoint(s0.B.values, s1.B.values);
    const auto a = cx.curl() * std::span<const double>(h);
    r.rhs_m = -2.0 * p.rm_inv * vec::dot(h, cx.mixed_mass() * std::span<const double>(a));
    const double curl_u_j = vec::dot(cu, cx.mass(SpaceKind::Div) * std::span<const double>(a));
    const double visc = vec::dot(um, cx.curl_curl() * std::span<const double>(h));
    const double force = f.empty() ? 0.0 : vec::dot(f, h);
    r.rhs_c = -p.re_inv * visc - p.rm_inv * curl_u_j + force;
    r.rhs_c_omega = r.rhs_c;
  }
  r.r_m = std::abs((hm1 - hm0) / dt - r.rhs_m);
  r.r_c = std::abs((hc1 - hc0) / dt - r.rhs_c);
  return r;
}

DiagnosticsRecord make_record(const Integrator& integ, const MhdState& s, double hm) {
  const auto& cx = integ.complex();
  DiagnosticsRecord rec;
  rec.step = s.step;
  rec.time = s.t;
  rec.energy = energy(cx, s, integ.params().coupling);
  rec.hm = hm;
  rec.hc = cross_helicity(cx, s.u, s.B);
  const auto dn = div_norms(cx, s.B);
  rec.div_b_l2 = dn.l2;
  rec.div_b_max = dn.max;
  return rec;
}

}  // namespace mhd
