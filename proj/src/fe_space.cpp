#include "mhd/fe_space.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace mhd {

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Grad: return "grad";
    case SpaceKind::Curl: return "curl";
    case SpaceKind::Div: return "div";
    case SpaceKind::L2: return "l2";
  }
  return "?";
}

SpaceKind space_kind_from_string(const std::string& name) {
  if (name == "grad") return SpaceKind::Grad;
  if (name == "curl") return SpaceKind::Curl;
  if (name == "div") return SpaceKind::Div;
  if (name == "l2") return SpaceKind::L2;
  throw std::invalid_argument("unknown space '" + name + "'");
}

FeSpace::FeSpace(const Mesh& mesh, SpaceKind kind) : kind_(kind) {
  const int dim = carrier_dimension(kind);
  num_dofs_ = mesh.num_entities(dim);
  free_index_.assign(num_dofs_, kNotFree);
  for (std::size_t i = 0; i < num_dofs_; ++i) {
    if (kind != SpaceKind::L2 && mesh.is_boundary(dim, i)) {
      constrained_.push_back(i);
    } else {
      free_index_[i] = free_.size();
      free_.push_back(i);
    }
  }
}

std::vector<double> FeSpace::restrict_to_free(const std::vector<double>& full) const {
  if (full.size() != num_dofs_) throw std::invalid_argument("restrict_to_free: wrong vector length");
  std::vector<double> out(free_.size());
  for (std::size_t i = 0; i < free_.size(); ++i) out[i] = full[free_[i]];
  return out;
}

std::vector<double> FeSpace::extend_from_free(const std::vector<double>& free) const {
  if (free.size() != free_.size()) throw std::invalid_argument("extend_from_free: wrong vector length");
  std::vector<double> out(num_dofs_, 0.0);
  for (std::size_t i = 0; i < free_.size(); ++i) out[free_[i]] = free[i];
  return out;
}

void FeSpace::pin(std::vector<double>& full) const {
  for (std::size_t d : constrained_) full[d] = 0.0;
}

void write_field_csv(const FieldVector& f, std::ostream& out) {
  out << "dof_index,value\n";
  char buf[64];
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", f.values[i]);
    out << i << ',' << buf << '\n';
  }
}

FieldVector read_field_csv(SpaceKind space, std::istream& in) {
  FieldVector f{space, {}};
  std::string line;
  if (!std::getline(in, line) || line != "dof_index,value") {
    throw std::invalid_argument("field csv: missing header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("field csv: malformed line '" + line + "'");
    const std::size_t idx = std::stoul(line.substr(0, comma));
    if (idx != f.values.size()) throw std::invalid_argument("field csv: indices must be consecutive");
    f.values.push_back(std::stod(line.substr(comma + 1)));
  }
  return f;
}

}  // namespace mhd
