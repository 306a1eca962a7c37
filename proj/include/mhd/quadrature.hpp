#pragma once

#include <array>
#include <vector>

namespace mhd {

/// Quadrature on a reference simplex in barycentric form.
///
/// Weights sum to the reference measure (1 on [0,1], 1/2 on the unit triangle, 1/6 on the
/// unit tetrahedron), so a physical integral is sum_q w_q f(x_q) * |K| / |K_ref|.
struct QuadratureRule {
  int dim = 0;
  int degree = 0;
  std::vector<std::array<double, 4>> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  double reference_measure() const;
};

/// Gauss nodes and weights on [-1, 1] for the weight (1 - x)^alpha (1 + x)^beta.
void gauss_jacobi(int npoints, double alpha, double beta, std::vector<double>& nodes, std::vector<double>& weights);

QuadratureRule segment_rule(int degree);
/// Degree 8 uses the 16-point symmetric Dunavant rule; other degrees a collapsed product rule.
QuadratureRule triangle_rule(int degree);
QuadratureRule tet_rule(int degree);

}  // namespace mhd
