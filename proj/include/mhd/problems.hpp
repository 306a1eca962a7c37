#pragma once

#include "mhd/assembly.hpp"
#include "mhd/timestepper.hpp"

namespace mhd {

/// Cellular initial data on the unit cube.
Vec3 vortex_velocity(const Vec3& x);
Vec3 vortex_magnetic(const Vec3& x);

/// vortex_magnetic = curl of this potential, which vanishes tangentially on the boundary.
Vec3 vortex_magnetic_potential(const Vec3& x);
/// C applied to the Curl interpolant of the potential; equals the Div interpolant of
/// vortex_magnetic by the commuting property, with D B = 0 exactly.
FieldVector vortex_magnetic_div(const DeRhamComplex& cx);

/// u^0: L2 projection of vortex_velocity onto Curl with the discrete gradient part removed.
/// B^0: vortex_magnetic_div for the main scheme, its L2 projection onto Curl otherwise.
MhdState vortex_initial_state(const Integrator& integ);

/// phi = sin(pi x) sin(pi y) sin(pi z) and its gradient.
double bubble_potential(const Vec3& x);
Vec3 bubble_potential_gradient(const Vec3& x);

}  // namespace mhd
