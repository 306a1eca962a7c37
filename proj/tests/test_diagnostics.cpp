#include "doctest.h"

#include <cmath>

#include "mhd/assembly.hpp"
#include "mhd/diagnostics.hpp"
#include "mhd/errors.hpp"
#include "mhd/problems.hpp"

using namespace mhd;

namespace {

Vec3 field_a(const Vec3& x) {
  return {std::cos(x[1] + 2.0 * x[2]), x[0] * x[2] * x[2], std::sin(2.0 * x[0]) * x[1]};
}

Vec3 field_c(const Vec3& x) { return {x[1], std::exp(x[2]) * x[0], std::cos(x[0] * x[1])}; }

FieldVector curl_of(const DeRhamComplex& cx, const VectorField& a) {
  const auto ah = interpolate(cx, SpaceKind::Curl, a);
  return {SpaceKind::Div, cx.curl() * std::span<const double>(ah.values)};
}

// Div part of b by the potential route: C A with (C A, C psi) = (b, C psi).
std::vector<double> project_by_potential(const DeRhamComplex& cx, const FieldVector& b) {
  const auto& se = cx.space(SpaceKind::Curl);
  std::vector<double> load = b.space == SpaceKind::Div ? cx.mass(SpaceKind::Div) * std::span<const double>(b.values)
                                                       : cx.mixed_mass().transpose_times(b.values);
  const auto rhs = se.restrict_to_free(cx.curl().transpose_times(load));
  std::vector<double> x(rhs.size(), 0.0);
  const auto rep = gmres(cx.curl_curl_free(), rhs, x, KrylovOptions{1e-13, 5000, 200},
                         ssor_preconditioner(cx.curl_curl_free()));
  REQUIRE(rep.converged);
  const auto a = se.extend_from_free(x);
  return cx.curl() * std::span<const double>(a);
}

}  // namespace

TEST_CASE("divergence norms") {
  DeRhamComplex cx(3);
  const auto b = curl_of(cx, field_a);
  CHECK(div_max_raw(cx, b) < 1e-14);
  const auto d = div_norms(cx, b);
  CHECK(d.max < 1e-11);
  // A field with known divergence 3: the identity map.
  const auto v = interpolate(cx, SpaceKind::Div, VectorField([](const Vec3& x) { return x; }), false);
  const auto dv = div_norms(cx, v);
  CHECK(dv.max == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(dv.l2 == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(div_max_raw(cx, FieldVector{SpaceKind::Curl, {}}), std::invalid_argument);
}

TEST_CASE("vector potential reproduces B and helicity is gauge invariant") {
  DeRhamComplex cx(3);
  const auto b = curl_of(cx, field_a);
  SolverReport rep;
  const auto a = magnetic_potential(cx, b, {}, &rep);
  CHECK(rep.converged);
  const auto ca = cx.curl() * std::span<const double>(a.values);
  CHECK(vec::max_abs(vec::linear_combination(1.0, ca, -1.0, b.values)) < 1e-10 * vec::max_abs(b.values));
  const double h = helicity_with_potential(cx, b, a);
  CHECK(std::abs(h) > 1e-3);
  const auto phi = interpolate(cx, SpaceKind::Grad, ScalarField(bubble_potential));
  auto shifted = a;
  vec::axpy(2.5, cx.grad() * std::span<const double>(phi.values), shifted.values);
  CHECK(std::abs(helicity_with_potential(cx, b, shifted) - h) < 1e-11);
  // The interpolated potential itself is another gauge.
  const auto ah = interpolate(cx, SpaceKind::Curl, VectorField(field_a));
  CHECK(std::abs(helicity_with_potential(cx, b, ah) - h) < 1e-10);
  CHECK(magnetic_helicity(cx, b) == doctest::Approx(h).epsilon(1e-12));
}

TEST_CASE("helicity is quadratic and bounded by the magnetic energy") {
  DeRhamComplex cx(2);
  const auto b1 = curl_of(cx, field_a);
  const auto b2 = curl_of(cx, field_c);
  const double h1 = magnetic_helicity(cx, b1);
  const double h2 = magnetic_helicity(cx, b2);
  FieldVector sum = b1;
  vec::axpy(1.0, b2.values, sum.values);
  const double h12 = magnetic_helicity(cx, sum);
  auto scaled = b1;
  vec::scale(-3.0, scaled.values);
  CHECK(magnetic_helicity(cx, scaled) == doctest::Approx(9.0 * h1).epsilon(1e-10));
  // Mixed term is symmetric: (A1, B2) = (A2, B1).
  const auto a1 = magnetic_potential(cx, b1);
  const auto a2 = magnetic_potential(cx, b2);
  const double m12 = helicity_with_potential(cx, b2, a1);
  const double m21 = helicity_with_potential(cx, b1, a2);
  CHECK(m12 == doctest::Approx(m21).epsilon(1e-9));
  CHECK(h12 == doctest::Approx(h1 + h2 + 2.0 * m12).epsilon(1e-9));
  for (const FieldVector* b : {&b1, &b2, static_cast<const FieldVector*>(&sum)}) {
    const auto bound = helicity_energy_bound(cx, *b);
    // |H| <= ||A|| ||B|| <= ||B||^2 / lambda_1 with lambda_1 of curl curl above pi^2 on the cube.
    CHECK(std::abs(bound.ratio) <= 1.0 / M_PI);
  }
}

TEST_CASE("helicity of a field that is not divergence free is refused") {
  DeRhamComplex cx(2);
  const auto v = interpolate(cx, SpaceKind::Div, VectorField([](const Vec3& x) { return Vec3{x[0] * (1 - x[0]), 0, 0}; }));
  CHECK_THROWS_AS(magnetic_helicity(cx, v), PreconditionViolation);
}

TEST_CASE("divergence-free projection") {
  DeRhamComplex cx(3);
  const auto b = curl_of(cx, field_a);
  const auto pb = divfree_project(cx, b);
  CHECK(vec::max_abs(vec::linear_combination(1.0, pb.values, -1.0, b.values)) < 1e-10);

  const auto v = l2_project(cx, SpaceKind::Curl, VectorField(field_c));
  SolverReport rep;
  const auto pv = divfree_project(cx, v, 1e-13, &rep);
  CHECK(rep.converged);
  CHECK(div_max_raw(cx, pv) < 1e-12);
  const auto oracle = project_by_potential(cx, v);
  CHECK(vec::max_abs(vec::linear_combination(1.0, pv.values, -1.0, oracle)) < 1e-9 * vec::max_abs(oracle));
  // Residual is orthogonal to divergence-free fields.
  const auto r = vec::linear_combination(1.0, cx.mixed_mass().transpose_times(v.values), -1.0,
                                         cx.mass(SpaceKind::Div) * std::span<const double>(pv.values));
  CHECK(std::abs(vec::dot(r, b.values)) < 1e-10 * vec::norm(b.values) * vec::norm(r) + 1e-13);
}

TEST_CASE("cross helicity in both spaces") {
  DeRhamComplex cx(2);
  const auto u = l2_project(cx, SpaceKind::Curl, VectorField(field_c));
  const auto b = curl_of(cx, field_a);
  const auto bc = l2_project(cx, b, SpaceKind::Curl);
  // (u, B) = (u, Q B) for the L2 projection Q onto Curl.
  CHECK(cross_helicity(cx, u, b) == doctest::Approx(cross_helicity(cx, u, bc)).epsilon(1e-11));
  CHECK_THROWS_AS(cross_helicity(cx, b, b), std::invalid_argument);
}

TEST_CASE("records carry the state diagnostics") {
  DeRhamComplex cx(2);
  SimParams p;
  p.n = 2;
  p.coupling = 0.5;
  Integrator integ(cx, p);
  const auto s = vortex_initial_state(integ);
  const auto rec = make_record(integ, s, 0.25);
  CHECK(rec.step == 0);
  CHECK(rec.hm == 0.25);
  CHECK(rec.energy == doctest::Approx(0.5 * cx.inner(SpaceKind::Curl, s.u.values, s.u.values) +
                                      0.25 * cx.inner(SpaceKind::Div, s.B.values, s.B.values)));
  CHECK(rec.div_b_max < 1e-9);
}
