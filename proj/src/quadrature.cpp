#include "mhd/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace mhd {

double QuadratureRule::reference_measure() const {
  switch (dim) {
    case 1: return 1.0;
    case 2: return 0.5;
    case 3: return 1.0 / 6.0;
    default: throw std::logic_error("quadrature rule without dimension");
  }
}

// Golub-Welsch on the Jacobi three-term recurrence.
void gauss_jacobi(int npoints, double alpha, double beta, std::vector<double>& nodes, std::vector<double>& weights) {
  if (npoints < 1) throw std::invalid_argument("gauss_jacobi: need at least one point");
  const int m = npoints;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
  const double ab = alpha + beta;
  for (int k = 0; k < m; ++k) {
    const double s = 2.0 * k + ab;
    jac(k, k) = (k == 0) ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (s * (s + 2.0));
    if (k + 1 < m) {
      const double kk = k + 1.0;
      const double t = 2.0 * kk + ab;
      const double off = std::sqrt(4.0 * kk * (kk + alpha) * (kk + beta) * (kk + ab) / (t * t * (t + 1.0) * (t - 1.0)));
      jac(k, k + 1) = off;
      jac(k + 1, k) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
  const double mu0 = std::pow(2.0, ab + 1.0) * std::tgamma(alpha + 1.0) * std::tgamma(beta + 1.0) / std::tgamma(ab + 2.0);
  nodes.resize(static_cast<std::size_t>(m));
  weights.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    nodes[static_cast<std::size_t>(i)] = eig.eigenvalues()(i);
    const double v0 = eig.eigenvectors()(0, i);
    weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
  }
}

namespace {

int points_for_degree(int degree) { return std::max(1, (degree + 2) / 2); }

// Maps Gauss-Jacobi data for (1-t)^alpha on [-1,1] onto u in [0,1] with weight (1-u)^alpha.
void unit_interval_rule(int npoints, double alpha, std::vector<double>& u, std::vector<double>& w) {
  gauss_jacobi(npoints, alpha, 0.0, u, w);
  const double scale = std::pow(0.5, alpha + 1.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = 0.5 * (1.0 + u[i]);
    w[i] *= scale;
  }
}

QuadratureRule dunavant8() {
  QuadratureRule q;
  q.dim = 2;
  q.degree = 8;
  auto add = [&q](double a, double b, double c, double w) {
    q.points.push_back({a, b, c, 0.0});
    q.weights.push_back(0.5 * w);
  };
  auto orbit3 = [&add](double a, double w) {
    const double b = 1.0 - 2.0 * a;
    add(a, a, b, w);
    add(a, b, a, w);
    add(b, a, a, w);
  };
  auto orbit6 = [&add](double a, double b, double w) {
    const double c = 1.0 - a - b;
    add(a, b, c, w);
    add(a, c, b, w);
    add(b, a, c, w);
    add(b, c, a, w);
    add(c, a, b, w);
    add(c, b, a, w);
  };
  add(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.144315607677787);
  orbit3(0.459292588292723, 0.095091634267285);
  orbit3(0.170569307751760, 0.103217370534718);
  orbit3(0.050547228317031, 0.032458497623198);
  orbit6(0.008394777409958, 0.263112829634638, 0.027230314174435);
  return q;
}

}  // namespace

QuadratureRule segment_rule(int degree) {
  QuadratureRule q;
  q.dim = 1;
  q.degree = degree;
  std::vector<double> u, w;
  unit_interval_rule(points_for_degree(degree), 0.0, u, w);
  for (std::size_t i = 0; i < u.size(); ++i) {
    q.points.push_back({1.0 - u[i], u[i], 0.0, 0.0});
    q.weights.push_back(w[i]);
  }
  return q;
}

QuadratureRule triangle_rule(int degree) {
  if (degree == 8) return dunavant8();
  QuadratureRule q;
  q.dim = 2;
  q.degree = degree;
  const int m = points_for_degree(degree);
  std::vector<double> u, wu, v, wv;
  unit_interval_rule(m, 1.0, u, wu);
  unit_interval_rule(m, 0.0, v, wv);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      const double x = u[i];
      const double y = v[j] * (1.0 - u[i]);
      q.points.push_back({1.0 - x - y, x, y, 0.0});
      q.weights.push_back(wu[i] * wv[j]);
    }
  }
  return q;
}

QuadratureRule tet_rule(int degree) {
  QuadratureRule q;
  q.dim = 3;
  q.degree = degree;
  const int m = points_for_degree(degree);
  std::vector<double> u, wu, v, wv, s, ws;
  unit_interval_rule(m, 2.0, u, wu);
  unit_interval_rule(m, 1.0, v, wv);
  unit_interval_rule(m, 0.0, s, ws);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      for (std::size_t k = 0; k < s.size(); ++k) {
        const double x = u[i];
        const double y = v[j] * (1.0 - u[i]);
        const double z = s[k] * (1.0 - u[i]) * (1.0 - v[j]);
        q.points.push_back({1.0 - x - y - z, x, y, z});
        q.weights.push_back(wu[i] * wv[j] * ws[k]);
      }
    }
  }
  return q;
}

}  // namespace mhd
