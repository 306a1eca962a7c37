#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "mhd/assembly.hpp"
#include "mhd/de_rham.hpp"
#include "mhd/quadrature.hpp"

using namespace mhd;

namespace {

std::vector<double> random_field(const DeRhamComplex& cx, SpaceKind k, unsigned seed, bool pin = true) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(cx.space(k).num_dofs());
  for (double& x : v) x = u(gen);
  if (pin) cx.space(k).pin(v);
  return v;
}

}  // namespace

TEST_CASE("mass matrices") {
  const DeRhamComplex cx1(1);
  SUBCASE("P1 local mass from the closed form") {
    // M_ij = |K| (1 + delta_ij) / 20 on every cell.
    std::vector<Triplet> t;
    for (std::size_t c = 0; c < cx1.mesh().num_cells(); ++c) {
      const double vol = cx1.geometry()[c].volume;
      CHECK(vol == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          t.push_back({cx1.mesh().cell(c)[i], cx1.mesh().cell(c)[j], vol * (i == j ? 2.0 : 1.0) / 20.0});
        }
      }
    }
    const auto ref = SparseMatrix::from_triplets(8, 8, t);
    CHECK(add(ref, cx1.mass(SpaceKind::Grad), 1.0, -1.0).max_abs() < 1e-15);
    CHECK(1.0 / 6.0 * 2.0 / 20.0 == doctest::Approx(1.0 / 60.0));
  }
  SUBCASE("L2 mass is the cell volume diagonal") {
    const auto& m3 = cx1.mass(SpaceKind::L2);
    CHECK(m3.nnz() == 6);
    for (std::size_t c = 0; c < 6; ++c) CHECK(m3.at(c, c) == cx1.geometry()[c].volume);
  }
  SUBCASE("symmetric positive definite") {
    const DeRhamComplex cx(3);
    for (int k = 0; k < 4; ++k) {
      const auto kind = static_cast<SpaceKind>(k);
      CHECK(symmetry_defect(cx.mass(kind)) <= 1e-14);
      for (unsigned s = 0; s < 20; ++s) {
        const auto x = random_field(cx, kind, 40 + s);
        CHECK(cx.inner(kind, x, x) > 0.0);
      }
    }
  }
  SUBCASE("constant field norm") {
    for (std::size_t n : {1, 2, 4}) {
      const DeRhamComplex cx(n);
      const auto c = interpolate(cx, SpaceKind::Curl, [](const Vec3&) { return Vec3{1.0, 0.0, 0.0}; }, false);
      CHECK(cx.inner(SpaceKind::Curl, c.values, c.values) == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
  SUBCASE("mixed mass agrees with a direct quadrature") {
    const DeRhamComplex cx(2);
    const auto a = random_field(cx, SpaceKind::Curl, 1, false);
    const auto b = random_field(cx, SpaceKind::Div, 2, false);
    const FieldVector fa{SpaceKind::Curl, a}, fb{SpaceKind::Div, b};
    const auto q = tet_rule(6);
    double direct = 0.0;
    for (std::size_t t = 0; t < cx.mesh().num_cells(); ++t) {
      for (std::size_t i = 0; i < q.size(); ++i) {
        direct += q.weights[i] * 6.0 * cx.geometry()[t].volume *
                  dot(evaluate_vector(cx, fa, t, q.points[i]), evaluate_vector(cx, fb, t, q.points[i]));
      }
    }
    const auto xb = cx.mixed_mass() * std::span<const double>(b);
    CHECK(vec::dot(a, xb) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("cross form vectors") {
  const DeRhamComplex cx(2);
  const FieldVector a{SpaceKind::Curl, random_field(cx, SpaceKind::Curl, 11)};
  const FieldVector b{SpaceKind::Curl, random_field(cx, SpaceKind::Curl, 12)};
  const FieldVector f{SpaceKind::Div, random_field(cx, SpaceKind::Div, 13)};
  CHECK(vec::max_abs(cross_form_vector(cx, a, a)) == 0.0);
  const auto rab = cross_form_vector(cx, a, b);
  const auto rba = cross_form_vector(cx, b, a);
  for (std::size_t i = 0; i < rab.size(); ++i) CHECK(rab[i] == -rba[i]);
  CHECK(std::abs(vec::dot(a.values, rab)) <= 1e-13 * vec::norm(rab) * vec::norm(a.values));
  CHECK(std::abs(vec::dot(b.values, rab)) <= 1e-13 * vec::norm(rab) * vec::norm(b.values));
  const auto raf = cross_form_vector(cx, a, f);
  CHECK(std::abs(vec::dot(a.values, raf)) <= 1e-13 * vec::norm(raf) * vec::norm(a.values));
  CHECK(vec::max_abs(mixed_cross_form_vector(cx, a, a)) == 0.0);
  CHECK_THROWS_AS(cross_form_vector(cx, FieldVector{SpaceKind::Grad, std::vector<double>(27)}, a),
                  std::invalid_argument);

  SUBCASE("mixed form against a brute-force quadrature") {
    const DeRhamComplex c1(1);
    const FieldVector x{SpaceKind::Curl, random_field(c1, SpaceKind::Curl, 21, false)};
    const FieldVector y{SpaceKind::Curl, random_field(c1, SpaceKind::Curl, 22, false)};
    const auto r = mixed_cross_form_vector(c1, x, y);
    const auto q = tet_rule(6);
    std::vector<double> ref(c1.mesh().num_edges(), 0.0);
    for (std::size_t t = 0; t < c1.mesh().num_cells(); ++t) {
      const auto& g = c1.geometry()[t];
      for (std::size_t i = 0; i < q.size(); ++i) {
        const Vec3 xy = cross(evaluate_vector(c1, x, t, q.points[i]), evaluate_vector(c1, y, t, q.points[i]));
        for (int k = 0; k < 6; ++k) {
          ref[c1.mesh().cell_edges(t)[k]] += q.weights[i] * 6.0 * g.volume * dot(xy, whitney::edge_curl(g, k));
        }
      }
    }
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == doctest::Approx(ref[i]).epsilon(1e-12).scale(1.0));
  }
  SUBCASE("curl of a gradient gives no Lorentz force") {
    std::mt19937 gen(4);
    const auto phi = random_field(cx, SpaceKind::Grad, 31, false);
    const auto gphi = cx.grad() * std::span<const double>(phi);
    const FieldVector bb{SpaceKind::Curl, gphi};
    const FieldVector curl_b{SpaceKind::Div, cx.curl() * std::span<const double>(gphi)};
    CHECK(vec::max_abs(curl_b.values) <= 1e-14);
    CHECK(vec::max_abs(cross_form_vector(cx, curl_b, bb)) <= 1e-13);
  }
  SUBCASE("constant fields on one cube") {
    const DeRhamComplex c1(1);
    const auto ex = interpolate(c1, SpaceKind::Curl, [](const Vec3&) { return Vec3{1, 0, 0}; }, false);
    const auto ey = interpolate(c1, SpaceKind::Curl, [](const Vec3&) { return Vec3{0, 1, 0}; }, false);
    const auto r = cross_form_vector(c1, ex, ey);
    const auto ref = load_vector(c1, SpaceKind::Curl, [](const Vec3&) { return Vec3{0, 0, 1}; });
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(std::abs(r[i] - ref[i]) < 1e-14);
  }
}

TEST_CASE("load vectors") {
  const DeRhamComplex cx(3);
  CHECK(vec::max_abs(load_vector(cx, SpaceKind::Curl, [](const Vec3&) { return Vec3{0, 0, 0}; })) == 0.0);
  const auto l = load_vector(cx, SpaceKind::Curl, [](const Vec3&) { return Vec3{1, 0, 0}; });
  const auto e = interpolate(cx, SpaceKind::Curl, [](const Vec3&) { return Vec3{1, 0, 0}; }, false);
  CHECK(vec::dot(l, e.values) == doctest::Approx(1.0).epsilon(1e-12));
  const auto lg = load_vector(cx, SpaceKind::Curl, [](const Vec3&) { return Vec3{1, 2, -1}; });
  const auto p = interpolate(cx, SpaceKind::Grad, [](const Vec3& x) { return x[0] + 2 * x[1] - x[2]; }, false);
  const auto gp = cx.grad() * std::span<const double>(p.values);
  const auto mgp = cx.mass(SpaceKind::Curl) * std::span<const double>(gp);
  for (std::size_t i = 0; i < lg.size(); ++i) CHECK(std::abs(lg[i] - mgp[i]) < 1e-12);
  const auto ls = load_vector(cx, SpaceKind::Grad, [](const Vec3&) { return 1.0; });
  double s = 0.0;
  for (double v : ls) s += v;
  CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("projections and discrete operators") {
  const DeRhamComplex cx(3);
  SUBCASE("idempotence and zero") {
    const FieldVector u{SpaceKind::Curl, random_field(cx, SpaceKind::Curl, 51)};
    const auto pu = l2_project(cx, u, SpaceKind::Curl);
    for (std::size_t i = 0; i < u.values.size(); ++i) CHECK(std::abs(pu.values[i] - u.values[i]) < 1e-12);
    const auto z = l2_project(cx, SpaceKind::Div, [](const Vec3&) { return Vec3{0, 0, 0}; });
    CHECK(vec::max_abs(z.values) == 0.0);
    const auto f = l2_project(cx, SpaceKind::Curl, [](const Vec3& x) { return Vec3{x[1] * x[2], 0.0, std::sin(x[0])}; });
    const auto ff = l2_project(cx, f, SpaceKind::Curl);
    for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(std::abs(ff.values[i] - f.values[i]) < 1e-12);
  }
  SUBCASE("projection onto Curl is self-adjoint") {
    for (unsigned s = 0; s < 5; ++s) {
      const FieldVector a{SpaceKind::Div, random_field(cx, SpaceKind::Div, 60 + s)};
      const FieldVector b{SpaceKind::Div, random_field(cx, SpaceKind::Div, 70 + s)};
      const auto qa = l2_project(cx, a, SpaceKind::Curl);
      const auto qb = l2_project(cx, b, SpaceKind::Curl);
      const double lhs = vec::dot(qa.values, cx.mixed_mass() * std::span<const double>(b.values));
      const double rhs = vec::dot(qb.values, cx.mixed_mass() * std::span<const double>(a.values));
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
  SUBCASE("discrete curl defining relation") {
    const FieldVector zero{SpaceKind::Div, std::vector<double>(cx.space(SpaceKind::Div).num_dofs(), 0.0)};
    CHECK(vec::max_abs(discrete_curl(cx, zero).values) == 0.0);
    const auto w = random_field(cx, SpaceKind::Curl, 81);
    const FieldVector b{SpaceKind::Div, cx.curl() * std::span<const double>(w)};
    const auto j = discrete_curl(cx, b);
    CHECK(cx.inner(SpaceKind::Curl, j.values, w) ==
          doctest::Approx(cx.inner(SpaceKind::Div, b.values, b.values)).epsilon(1e-10));
    for (unsigned s = 0; s < 20; ++s) {
      const FieldVector bb{SpaceKind::Div, random_field(cx, SpaceKind::Div, 90 + s)};
      const auto v = random_field(cx, SpaceKind::Curl, 120 + s);
      const auto jj = discrete_curl(cx, bb);
      const auto cv = cx.curl() * std::span<const double>(v);
      CHECK(std::abs(cx.inner(SpaceKind::Curl, jj.values, v) - cx.inner(SpaceKind::Div, bb.values, cv)) < 1e-10);
    }
  }
  SUBCASE("discrete div of a gradient") {
    const FieldVector zero{SpaceKind::Curl, std::vector<double>(cx.space(SpaceKind::Curl).num_dofs(), 0.0)};
    CHECK(vec::max_abs(discrete_div(cx, zero).values) == 0.0);
    const auto phi = random_field(cx, SpaceKind::Grad, 7);
    const FieldVector v{SpaceKind::Curl, cx.grad() * std::span<const double>(phi)};
    const auto d = discrete_div(cx, v);
    CHECK(cx.inner(SpaceKind::Grad, d.values, phi) ==
          doctest::Approx(-cx.inner(SpaceKind::Curl, v.values, v.values)).epsilon(1e-10));
  }
}
