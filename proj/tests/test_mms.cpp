#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "mhd/assembly.hpp"
#include "mhd/mms.hpp"

using namespace mhd;

TEST_CASE("profile derivatives agree with difference quotients") {
  const double d = 1e-5;
  for (int k = 0; k < 4; ++k) {
    for (double s : {0.1, 0.37, 0.8}) {
      const double fd = (mms::h(k, s + d) - mms::h(k, s - d)) / (2 * d);
      CHECK(mms::h(k + 1, s) == doctest::Approx(fd).epsilon(1e-8));
    }
  }
  CHECK(mms::h(0, 0.0) == 0.0);
  CHECK(mms::h(1, 1.0) == 0.0);
  CHECK(mms::h(5, 0.3) == 0.0);
}

TEST_CASE("magnetic field equals the vorticity and is solenoidal") {
  const double d = 1e-4;
  for (const Vec3& x : {Vec3{0.2, 0.3, 0.7}, Vec3{0.55, 0.1, 0.45}}) {
    const double t = 0.4;
    auto part = [&](auto f, int c, int m) {
      Vec3 p = x, q = x;
      p[m] += d;
      q[m] -= d;
      return (f(p, t)[c] - f(q, t)[c]) / (2 * d);
    };
    const Vec3 w{part(mms::velocity, 2, 1) - part(mms::velocity, 1, 2),
                 part(mms::velocity, 0, 2) - part(mms::velocity, 2, 0),
                 part(mms::velocity, 1, 0) - part(mms::velocity, 0, 1)};
    const Vec3 b = mms::magnetic(x, t);
    for (int c = 0; c < 3; ++c) CHECK(w[c] == doctest::Approx(b[c]).epsilon(1e-6));
    const double divb = part(mms::magnetic, 0, 0) + part(mms::magnetic, 1, 1) + part(mms::magnetic, 2, 2);
    CHECK(std::abs(divb) < 1e-9);
    const double divu = part(mms::velocity, 0, 0) + part(mms::velocity, 1, 1) + part(mms::velocity, 2, 2);
    CHECK(mms::divergence_velocity(x, t) == doctest::Approx(divu).epsilon(1e-6));
  }
}

TEST_CASE("closed-form sources match finite differences of the exact fields") {
  const mms::Coefficients k{0.7, 0.3, 1.3};
  const auto check = mms::validate_sources(k);
  CHECK(check.passed);
  CHECK(check.momentum_error < 1e-6);
  CHECK(check.induction_error < 1e-6);
  const mms::Coefficients small{1e-4, 1e-4, 1.0};
  CHECK(mms::validate_sources(small).passed);
}

TEST_CASE("source check detects perturbed coefficients") {
  const mms::Coefficients truth{0.7, 0.3, 1.3};
  for (int which = 0; which < 3; ++which) {
    auto used = truth;
    (which == 0 ? used.re_inv : which == 1 ? used.rm_inv : used.coupling) *= 1.0 + 1e-3;
    CHECK_FALSE(mms::validate_sources_against(used, truth).passed);
  }
}

TEST_CASE("difference oracle converges at sixth order") {
  const mms::Coefficients k{0.7, 0.3, 1.3};
  const auto coarse = mms::validate_sources(k, 20, 4e-2, 4e-2, 1.0);
  const auto fine = mms::validate_sources(k, 20, 2e-2, 2e-2, 1.0);
  const double rate = std::log2(coarse.momentum_error / fine.momentum_error);
  CHECK(rate > 5.5);
  CHECK(rate < 6.5);
  CHECK(std::log2(coarse.induction_error / fine.induction_error) > 5.5);
}

TEST_CASE("integrator sources carry the exact velocity as constraint data") {
  const auto s = mms::sources({});
  REQUIRE(s.any());
  const Vec3 x{0.3, 0.6, 0.2};
  const Vec3 w = s.constraint_velocity(x, 0.25);
  const Vec3 u = mms::velocity(x, 0.25);
  CHECK(w[0] == u[0]);
  CHECK(w[2] == u[2]);
}

TEST_CASE("coarse convergence run reduces all errors") {
  const auto rows = mms::run_convergence({2, 4}, 0.05, 0.2, {1e-4, 1e-4, 1.0});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].order_b == 0.0);
  CHECK(rows[1].err_b < rows[0].err_b);
  CHECK(rows[1].err_u < rows[0].err_u);
  CHECK(rows[1].err_p < rows[0].err_p);
  CHECK(rows[1].steps == 4);
  CHECK_THROWS_AS(mms::run_convergence({2}, 0.3, 1.0, {}), std::invalid_argument);
}

TEST_CASE("boundary traces of the exact solution vanish") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Vec3 x{unif(rng), unif(rng), unif(rng)};
    const int axis = i % 3;
    x[axis] = (i / 3) % 2 == 0 ? 0.0 : 1.0;
    const double t = unif(rng);
    Vec3 nrm{0, 0, 0};
    nrm[axis] = 1.0;
    const Vec3 u = mms::velocity(x, t);
    const Vec3 uxn = cross(u, nrm);
    worst = std::max({worst, std::abs(uxn[0]), std::abs(uxn[1]), std::abs(uxn[2])});
    worst = std::max(worst, std::abs(dot(mms::magnetic(x, t), nrm)));
    worst = std::max(worst, std::abs(mms::total_pressure(x, t)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("sources reduce to the inviscid uncoupled form") {
  const mms::Coefficients zero{0.0, 0.0, 0.0};
  CHECK(mms::validate_sources(zero, 10).passed);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const Vec3 x{unif(rng), unif(rng), unif(rng)};
    const double t = unif(rng);
    const Vec3 expected = mms::velocity_dt(x, t) - cross(mms::velocity(x, t), mms::magnetic(x, t)) +
                          mms::total_pressure_gradient(x, t);
    const Vec3 f = mms::momentum_source(zero, x, t);
    for (int c = 0; c < 3; ++c) CHECK(f[c] == doctest::Approx(expected[c]).epsilon(1e-14));
  }
}
