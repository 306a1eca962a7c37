#include "mhd/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mhd/assembly.hpp"

namespace mhd {

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void append_mesh(std::ostringstream& out, const Mesh& mesh, const std::string& title) {
  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    const auto& x = mesh.vertex(v);
    out << num(x[0]) << ' ' << num(x[1]) << ' ' << num(x[2]) << '\n';
  }
  out << "CELLS " << mesh.num_cells() << ' ' << 5 * mesh.num_cells() << '\n';
  for (std::size_t t = 0; t < mesh.num_cells(); ++t) {
    const auto& c = mesh.cell(t);
    out << "4 " << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3] << '\n';
  }
  out << "CELL_TYPES " << mesh.num_cells() << '\n';
  for (std::size_t t = 0; t < mesh.num_cells(); ++t) out << "10\n";
}

}  // namespace

std::string format_record(const DiagnosticsRecord& r) {
  std::string s = std::to_string(r.step);
  for (double x : {r.time, r.energy, r.hm, r.hc, r.div_b_l2, r.div_b_max, r.res_energy, r.res_hm, r.res_hc}) {
    s += ',' + num(x);
  }
  s += ',' + std::to_string(r.picard_iters) + ',' + std::to_string(r.inner_iters);
  return s;
}

std::string timeseries_csv(const std::vector<DiagnosticsRecord>& records) {
  std::string out = std::string(kTimeseriesHeader) + '\n';
  for (const auto& r : records) out += format_record(r) + '\n';
  return out;
}

std::string error_table_csv(const std::vector<mms::ConvergenceRow>& rows) {
  std::string out = std::string(kErrorTableHeader) + '\n';
  for (const auto& r : rows) {
    out += num(r.h) + ',' + num(r.err_b) + ',' + num(r.order_b) + ',' + num(r.err_u) + ',' + num(r.order_u) + ',' +
           num(r.err_p) + ',' + num(r.order_p) + '\n';
  }
  return out;
}

std::string mesh_vtk(const Mesh& mesh) {
  std::ostringstream out;
  append_mesh(out, mesh, "Kuhn mesh n=" + std::to_string(mesh.subdivisions()));
  return out.str();
}

std::string fields_vtk(const DeRhamComplex& cx, const MhdState& s) {
  const auto& mesh = cx.mesh();
  std::ostringstream out;
  append_mesh(out, mesh, "step " + std::to_string(s.step) + " t=" + num(s.t));
  std::vector<Vec3> u(mesh.num_vertices(), Vec3{0, 0, 0});
  std::vector<int> count(mesh.num_vertices(), 0);
  for (std::size_t t = 0; t < mesh.num_cells(); ++t) {
    for (int k = 0; k < 4; ++k) {
      Barycentric l{0, 0, 0, 0};
      l[k] = 1.0;
      const auto v = mesh.cell(t)[k];
      u[v] += evaluate_vector(cx, s.u, t, l);
      ++count[v];
    }
  }
  out << "POINT_DATA " << mesh.num_vertices() << "\nVECTORS u double\n";
  for (std::size_t v = 0; v < u.size(); ++v) {
    const Vec3 a = (1.0 / count[v]) * u[v];
    out << num(a[0]) << ' ' << num(a[1]) << ' ' << num(a[2]) << '\n';
  }
  if (!s.P.values.empty()) {
    out << "SCALARS P double 1\nLOOKUP_TABLE default\n";
    for (double p : s.P.values) out << num(p) << '\n';
  }
  out << "CELL_DATA " << mesh.num_cells() << "\nVECTORS B double\n";
  const Barycentric centroid{0.25, 0.25, 0.25, 0.25};
  for (std::size_t t = 0; t < mesh.num_cells(); ++t) {
    const Vec3 b = evaluate_vector(cx, s.B, t, centroid);
    out << num(b[0]) << ' ' << num(b[1]) << ' ' << num(b[2]) << '\n';
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace mhd
