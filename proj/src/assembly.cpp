#include "mhd/assembly.hpp"

#include <cmath>
#include <stdexcept>

#include "mhd/errors.hpp"
#include "mhd/krylov.hpp"
#include "mhd/quadrature.hpp"

namespace mhd {

namespace {

constexpr double kRefTetVolume = 1.0 / 6.0;

struct LocalDofs {
  std::array<std::size_t, 6> index{};
  int count = 0;
};

LocalDofs local_dofs(const Mesh& mesh, SpaceKind kind, std::size_t t) {
  LocalDofs d;
  switch (kind) {
    case SpaceKind::Grad:
      d.count = 4;
      for (int k = 0; k < 4; ++k) d.index[k] = mesh.cell(t)[k];
      break;
    case SpaceKind::Curl:
      d.count = 6;
      for (int k = 0; k < 6; ++k) d.index[k] = mesh.cell_edges(t)[k];
      break;
    case SpaceKind::Div:
      d.count = 4;
      for (int k = 0; k < 4; ++k) d.index[k] = mesh.cell_faces(t)[k];
      break;
    case SpaceKind::L2:
      d.count = 1;
      d.index[0] = t;
      break;
  }
  return d;
}

bool is_vector_space(SpaceKind k) { return k == SpaceKind::Curl || k == SpaceKind::Div; }

// Basis values on one cell at one point; scalar spaces use component 0.
void basis_values(const CellGeometry& g, SpaceKind kind, const Barycentric& l, std::array<Vec3, 6>& out) {
  switch (kind) {
    case SpaceKind::Grad:
      for (int k = 0; k < 4; ++k) out[k] = {l[k], 0.0, 0.0};
      break;
    case SpaceKind::Curl:
      for (int k = 0; k < 6; ++k) out[k] = whitney::edge(g, l, k);
      break;
    case SpaceKind::Div:
      for (int k = 0; k < 4; ++k) out[k] = whitney::face(g, l, k);
      break;
    case SpaceKind::L2:
      out[0] = {1.0, 0.0, 0.0};
      break;
  }
}

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_field(const DeRhamComplex& cx, const FieldVector& f) {
  require(f.values.size() == cx.space(f.space).num_dofs(), "field length does not match its space");
}

}  // namespace

SparseMatrix mass_matrix(const Mesh& mesh, const std::vector<CellGeometry>& geometry, SpaceKind kind, int degree) {
  const std::size_t n = mesh.num_entities(carrier_dimension(kind));
  if (kind == SpaceKind::L2) {
    std::vector<double> vol(mesh.num_cells());
    for (std::size_t t = 0; t < vol.size(); ++t) vol[t] = geometry[t].volume;
    return SparseMatrix::diagonal(vol);
  }
  const auto q = tet_rule(degree);
  std::vector<Triplet> trip;
  std::array<Vec3, 6> phi;
  for (std::size_t t = 0; t < mesh.num_cells(); ++t) {
    const auto& g = geometry[t];
    const auto dofs = local_dofs(mesh, kind, t);
    double local[6][6] = {};
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      basis_values(g, kind, q.points[iq], phi);
      const double w = q.weights[iq] * g.volume / kRefTetVolume;
      for (int i = 0; i < dofs.count; ++i) {
        for (int j = 0; j < dofs.count; ++j) local[i][j] += w * dot(phi[i], phi[j]);
      }
    }
    for (int i = 0; i < dofs.count; ++i) {
      for (int j = 0; j < dofs.count; ++j) trip.push_back({dofs.index[i], dofs.index[j], local[i][j]});
    }
  }
  return SparseMatrix::from_triplets(n, n, std::move(trip));
}

SparseMatrix mixed_mass_matrix(const Mesh& mesh, const std::vector<CellGeometry>& geometry, int degree) {
  const auto q = tet_rule(degree);
  std::vector<Triplet> trip;
  std::array<Vec3, 6> we, wf;
  for (std::size_t t = 0; t < mesh.num_cells(); ++t) {
    const auto& g = geometry[t];
    double local[6][4] = {};
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      basis_values(g, SpaceKind::Curl, q.points[iq], we);
      basis_values(g, SpaceKind::Div, q.points[iq], wf);
      const double w = q.weights[iq] * g.volume / kRefTetVolume;
      for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 4; ++j) local[i][j] += w * dot(we[i], wf[j]);
      }
    }
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 4; ++j) trip.push_back({mesh.cell_edges(t)[i], mesh.cell_faces(t)[j], local[i][j]});
    }
  }
  return SparseMatrix::from_triplets(mesh.num_edges(), mesh.num_faces(), std::move(trip));
}

Vec3 evaluate_vector(const DeRhamComplex& cx, const FieldVector& f, std::size_t t, const Barycentric& l) {
  require(is_vector_space(f.space), "evaluate_vector: field is not a Curl or Div field");
  const auto& g = cx.geometry()[t];
  Vec3 v{0.0, 0.0, 0.0};
  if (f.space == SpaceKind::Curl) {
    const auto& e = cx.mesh().cell_edges(t);
    for (int k = 0; k < 6; ++k) v += f.values[e[k]] * whitney::edge(g, l, k);
  } else {
    const auto& fc = cx.mesh().cell_faces(t);
    for (int k = 0; k < 4; ++k) v += f.values[fc[k]] * whitney::face(g, l, k);
  }
  return v;
}

double evaluate_scalar(const DeRhamComplex& cx, const FieldVector& f, std::size_t t, const Barycentric& l) {
  if (f.space == SpaceKind::L2) return f.values[t];
  require(f.space == SpaceKind::Grad, "evaluate_scalar: field is not a Grad or L2 field");
  const auto& c = cx.mesh().cell(t);
  double s = 0.0;
  for (int k = 0; k < 4; ++k) s += f.values[c[k]] * l[k];
  return s;
}

Vec3 evaluate_gradient(const DeRhamComplex& cx, const FieldVector& f, std::size_t t) {
  require(f.space == SpaceKind::Grad, "evaluate_gradient: field is not a Grad field");
  const auto& c = cx.mesh().cell(t);
  Vec3 v{0.0, 0.0, 0.0};
  for (int k = 0; k < 4; ++k) v += f.values[c[k]] * cx.geometry()[t].grad_lambda[k];
  return v;
}

std::vector<double> load_vector(const DeRhamComplex& cx, SpaceKind kind, const VectorField& f, int degree) {
  require(is_vector_space(kind), "load_vector: vector source needs a Curl or Div test space");
  const auto& mesh = cx.mesh();
  const auto q = tet_rule(degree);
  std::vector<double> r(cx.space(kind).num_dofs(), 0.0);
  std::array<Vec3, 6> phi;
  for (std::size_t t = 0; t < mesh.num_cells(); ++t) {
    const auto& g = cx.geometry()[t];
    const auto dofs = local_dofs(mesh, kind, t);
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      basis_values(g, kind, q.points[iq], phi);
      const Vec3 fx = f(g.point(q.points[iq]));
      const double w = q.weights[iq] * g.volume / kRefTetVolume;
      for (int i = 0; i < dofs.count; ++i) r[dofs.index[i]] += w * dot(fx, phi[i]);
    }
  }
  return r;
}

std::vector<double> load_vector(const DeRhamComplex& cx, SpaceKind kind, const ScalarField& f, int degree) {
  require(!is_vector_space(kind), "load_vector: scalar source needs a Grad or L2 test space");
  const auto& mesh = cx.mesh();
  const auto q = tet_rule(degree);
  std::vector<double> r(cx.space(kind).num_dofs(), 0.0);
  std::array<Vec3, 6> phi;
  for (std::size_t t = 0; t < mesh.num_cells(); ++t) {
    const auto& g = cx.geometry()[t];
    const auto dofs = local_dofs(mesh, kind, t);
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      basis_values(g, kind, q.points[iq], phi);
      const double fx = f(g.point(q.points[iq]));
      const double w = q.weights[iq] * g.volume / kRefTetVolume;
      for (int i = 0; i < dofs.count; ++i) r[dofs.index[i]] += w * fx * phi[i][0];
    }
  }
  return r;
}

std::vector<double> cross_form_vector(const DeRhamComplex& cx, const FieldVector& a, const FieldVector& b,
                                      int degree) {
  require(is_vector_space(a.space) && is_vector_space(b.space), "cross_form_vector: fields must be Curl or Div");
  check_field(cx, a);
  check_field(cx, b);
  const auto& mesh = cx.mesh();
  const auto q = tet_rule(degree);
  std::vector<double> r(mesh.num_edges(), 0.0);
  for (std::size_t t = 0; t < mesh.num_cells(); ++t) {
    const auto& g = cx.geometry()[t];
    const auto& e = mesh.cell_edges(t);
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      const auto& l = q.points[iq];
      const Vec3 axb = cross(evaluate_vector(cx, a, t, l), evaluate_vector(cx, b, t, l));
      const double w = q.weights[iq] * g.volume / kRefTetVolume;
      for (int k = 0; k < 6; ++k) r[e[k]] += w * dot(axb, whitney::edge(g, l, k));
    }
  }
  return r;
}

std::vector<double> mixed_cross_form_vector(const DeRhamComplex& cx, const FieldVector& a, const FieldVector& b,
                                            int degree) {
  require(is_vector_space(a.space) && is_vector_space(b.space), "mixed_cross_form_vector: fields must be Curl or Div");
  check_field(cx, a);
  check_field(cx, b);
  const auto& mesh = cx.mesh();
  const auto q = tet_rule(degree);
  std::vector<double> r(mesh.num_edges(), 0.0);
  for (std::size_t t = 0; t < mesh.num_cells(); ++t) {
    const auto& g = cx.geometry()[t];
    const auto& e = mesh.cell_edges(t);
    Vec3 integral{0.0, 0.0, 0.0};
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      const auto& l = q.points[iq];
      const double w = q.weights[iq] * g.volume / kRefTetVolume;
      integral += w * cross(evaluate_vector(cx, a, t, l), evaluate_vector(cx, b, t, l));
    }
    for (int k = 0; k < 6; ++k) r[e[k]] += dot(integral, whitney::edge_curl(g, k));
  }
  return r;
}

FieldVector interpolate(const DeRhamComplex& cx, SpaceKind kind, const VectorField& f, bool pin_boundary,
                        int degree) {
  require(is_vector_space(kind), "interpolate: vector field needs a Curl or Div space");
  const auto& mesh = cx.mesh();
  FieldVector out{kind, std::vector<double>(cx.space(kind).num_dofs(), 0.0)};
  if (kind == SpaceKind::Curl) {
    const auto q = segment_rule(degree < 0 ? kEdgeTraceDegree : degree);
    for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
      const Vec3& xa = mesh.vertex(mesh.edge(e)[0]);
      const Vec3& xb = mesh.vertex(mesh.edge(e)[1]);
      const Vec3 tvec = xb - xa;
      double s = 0.0;
      for (std::size_t iq = 0; iq < q.size(); ++iq) {
        s += q.weights[iq] * dot(f(q.points[iq][0] * xa + q.points[iq][1] * xb), tvec);
      }
      out.values[e] = s;
    }
  } else {
    const auto q = triangle_rule(degree < 0 ? kTraceDegree : degree);
    for (std::size_t fi = 0; fi < mesh.num_faces(); ++fi) {
      const auto& fv = mesh.face(fi);
      const Vec3& xa = mesh.vertex(fv[0]);
      const Vec3& xb = mesh.vertex(fv[1]);
      const Vec3& xc = mesh.vertex(fv[2]);
      const Vec3 nvec = cross(xb - xa, xc - xa);
      double s = 0.0;
      for (std::size_t iq = 0; iq < q.size(); ++iq) {
        const auto& p = q.points[iq];
        s += q.weights[iq] * dot(f(p[0] * xa + p[1] * xb + p[2] * xc), nvec);
      }
      out.values[fi] = s;
    }
  }
  if (pin_boundary) cx.space(kind).pin(out.values);
  return out;
}

FieldVector interpolate(const DeRhamComplex& cx, SpaceKind kind, const ScalarField& f, bool pin_boundary,
                        int degree) {
  require(!is_vector_space(kind), "interpolate: scalar field needs a Grad or L2 space");
  const auto& mesh = cx.mesh();
  FieldVector out{kind, std::vector<double>(cx.space(kind).num_dofs(), 0.0)};
  if (kind == SpaceKind::Grad) {
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v) out.values[v] = f(mesh.vertex(v));
    if (pin_boundary) cx.space(kind).pin(out.values);
  } else {
    const auto q = tet_rule(degree < 0 ? kTraceDegree : degree);
    for (std::size_t t = 0; t < mesh.num_cells(); ++t) {
      const auto& g = cx.geometry()[t];
      double s = 0.0;
      for (std::size_t iq = 0; iq < q.size(); ++iq) s += q.weights[iq] * f(g.point(q.points[iq]));
      out.values[t] = s / kRefTetVolume;
    }
  }
  return out;
}

FieldVector l2_project(const DeRhamComplex& cx, SpaceKind target, const VectorField& f, int degree) {
  const auto rhs = load_vector(cx, target, f, degree);
  return {target, cx.solve_mass(target, rhs)};
}

FieldVector l2_project(const DeRhamComplex& cx, SpaceKind target, const ScalarField& f, int degree) {
  const auto rhs = load_vector(cx, target, f, degree);
  return {target, cx.solve_mass(target, rhs)};
}

FieldVector l2_project(const DeRhamComplex& cx, const FieldVector& source, SpaceKind target,
                       const std::vector<double>* guess) {
  check_field(cx, source);
  std::vector<double> rhs;
  if (source.space == target) {
    rhs = cx.mass(target) * std::span<const double>(source.values);
  } else if (source.space == SpaceKind::Div && target == SpaceKind::Curl) {
    rhs = cx.mixed_mass() * std::span<const double>(source.values);
  } else if (source.space == SpaceKind::Curl && target == SpaceKind::Div) {
    rhs = cx.mixed_mass().transpose_times(source.values);
  } else {
    throw std::invalid_argument("l2_project: unsupported pair " + to_string(source.space) + " -> " +
                                to_string(target));
  }
  return {target, cx.solve_mass(target, rhs, guess)};
}

FieldVector discrete_curl(const DeRhamComplex& cx, const FieldVector& b, const std::vector<double>* guess) {
  require(b.space == SpaceKind::Div, "discrete_curl: field must lie in the Div space");
  check_field(cx, b);
  const auto mb = cx.mass(SpaceKind::Div) * std::span<const double>(b.values);
  const auto rhs = cx.curl().transpose_times(mb);
  return {SpaceKind::Curl, cx.solve_mass(SpaceKind::Curl, rhs, guess)};
}

FieldVector discrete_div(const DeRhamComplex& cx, const FieldVector& v) {
  require(v.space == SpaceKind::Curl, "discrete_div: field must lie in the Curl space");
  check_field(cx, v);
  const auto mv = cx.mass(SpaceKind::Curl) * std::span<const double>(v.values);
  auto rhs = cx.grad().transpose_times(mv);
  vec::scale(-1.0, rhs);
  return {SpaceKind::Grad, cx.solve_mass(SpaceKind::Grad, rhs)};
}

FieldVector solenoidal_part(const DeRhamComplex& cx, const FieldVector& v) {
  require(v.space == SpaceKind::Curl, "solenoidal_part: field must lie in the Curl space");
  check_field(cx, v);
  const auto& sv = cx.space(SpaceKind::Grad);
  const auto mv = cx.mass(SpaceKind::Curl) * std::span<const double>(v.values);
  const auto rhs = sv.restrict_to_free(cx.grad().transpose_times(mv));
  std::vector<double> phi(rhs.size(), 0.0);
  const auto& lap = cx.grad_laplacian_free();
  const auto rep = cg(lap, rhs, phi, KrylovOptions{1e-14, 20000, 200}, ssor_preconditioner(lap));
  if (!rep.converged) throw SolverFailure("solenoidal_part: Poisson solve did not converge");
  const auto g = cx.grad() * std::span<const double>(sv.extend_from_free(phi));
  return {SpaceKind::Curl, vec::linear_combination(1.0, v.values, -1.0, g)};
}

double l2_error(const DeRhamComplex& cx, const FieldVector& fh, const VectorField& f, int degree) {
  require(is_vector_space(fh.space), "l2_error: vector reference needs a Curl or Div field");
  const auto q = tet_rule(degree);
  double s = 0.0;
  for (std::size_t t = 0; t < cx.mesh().num_cells(); ++t) {
    const auto& g = cx.geometry()[t];
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      const Vec3 d = f(g.point(q.points[iq])) - evaluate_vector(cx, fh, t, q.points[iq]);
      s += q.weights[iq] * g.volume / kRefTetVolume * dot(d, d);
    }
  }
  return std::sqrt(s);
}

double l2_error(const DeRhamComplex& cx, const FieldVector& fh, const ScalarField& f, int degree) {
  require(!is_vector_space(fh.space), "l2_error: scalar reference needs a Grad or L2 field");
  const auto q = tet_rule(degree);
  double s = 0.0;
  for (std::size_t t = 0; t < cx.mesh().num_cells(); ++t) {
    const auto& g = cx.geometry()[t];
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      const double d = f(g.point(q.points[iq])) - evaluate_scalar(cx, fh, t, q.points[iq]);
      s += q.weights[iq] * g.volume / kRefTetVolume * d * d;
    }
  }
  return std::sqrt(s);
}

double h1_error(const DeRhamComplex& cx, const FieldVector& ph, const ScalarField& p, const VectorField& grad_p,
                int degree) {
  require(ph.space == SpaceKind::Grad, "h1_error: field must lie in the Grad space");
  const auto q = tet_rule(degree);
  double s = 0.0;
  for (std::size_t t = 0; t < cx.mesh().num_cells(); ++t) {
    const auto& g = cx.geometry()[t];
    const Vec3 gh = evaluate_gradient(cx, ph, t);
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      const Vec3 x = g.point(q.points[iq]);
      const double d = p(x) - evaluate_scalar(cx, ph, t, q.points[iq]);
      const Vec3 dg = grad_p(x) - gh;
      s += q.weights[iq] * g.volume / kRefTetVolume * (d * d + dot(dg, dg));
    }
  }
  return std::sqrt(s);
}

}  // namespace mhd
