#include "mhd/problems.hpp"

#include <cmath>
#include <numbers>

namespace mhd {

namespace {
constexpr double kPi = std::numbers::pi;
}

Vec3 vortex_velocity(const Vec3& x) {
  const double zz = x[2] * (x[2] - 1.0);
  return {-std::sin(kPi * (x[0] - 0.5)) * std::cos(kPi * (x[1] - 0.5)) * zz,
          std::cos(kPi * (x[0] - 0.5)) * std::sin(kPi * (x[1] - 0.5)) * zz, 0.0};
}

Vec3 vortex_magnetic(const Vec3& x) {
  return {-std::sin(kPi * x[0]) * std::cos(kPi * x[1]), std::cos(kPi * x[0]) * std::sin(kPi * x[1]), 0.0};
}

Vec3 vortex_magnetic_potential(const Vec3& x) {
  return {0.0, 0.0, -std::sin(kPi * x[0]) * std::sin(kPi * x[1]) / kPi};
}

FieldVector vortex_magnetic_div(const DeRhamComplex& cx) {
  const auto a = interpolate(cx, SpaceKind::Curl, VectorField(vortex_magnetic_potential));
  return {SpaceKind::Div, cx.curl() * std::span<const double>(a.values)};
}

MhdState vortex_initial_state(const Integrator& integ) {
  const auto& cx = integ.complex();
  auto u0 = solenoidal_part(cx, l2_project(cx, SpaceKind::Curl, VectorField(vortex_velocity)));
  auto b0 = vortex_magnetic_div(cx);
  if (integ.params().scheme == Scheme::Reference) b0 = l2_project(cx, b0, SpaceKind::Curl);
  return integ.initial_state(std::move(u0), std::move(b0));
}

double bubble_potential(const Vec3& x) {
  return std::sin(kPi * x[0]) * std::sin(kPi * x[1]) * std::sin(kPi * x[2]);
}

Vec3 bubble_potential_gradient(const Vec3& x) {
  const double sx = std::sin(kPi * x[0]), sy = std::sin(kPi * x[1]), sz = std::sin(kPi * x[2]);
  const double cx = std::cos(kPi * x[0]), cy = std::cos(kPi * x[1]), cz = std::cos(kPi * x[2]);
  return {kPi * cx * sy * sz, kPi * sx * cy * sz, kPi * sx * sy * cz};
}

}  // namespace mhd
