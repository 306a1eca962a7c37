#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mhd/mesh.hpp"

namespace mhd {

enum class SpaceKind { Grad = 0, Curl = 1, Div = 2, L2 = 3 };

std::string to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& name);
inline int carrier_dimension(SpaceKind kind) { return static_cast<int>(kind); }

/// Lowest-order space with homogeneous boundary conditions imposed by DOF pinning.
class FeSpace {
 public:
  FeSpace() = default;
  FeSpace(const Mesh& mesh, SpaceKind kind);

  SpaceKind kind() const { return kind_; }
  std::size_t num_dofs() const { return num_dofs_; }
  std::size_t num_free() const { return free_.size(); }
  const std::vector<std::size_t>& free_dofs() const { return free_; }
  const std::vector<std::size_t>& constrained_dofs() const { return constrained_; }
  bool is_constrained(std::size_t dof) const { return free_index_[dof] == kNotFree; }
  /// Position of dof in free_dofs(), or kNotFree.
  std::size_t free_index(std::size_t dof) const { return free_index_[dof]; }

  std::vector<double> restrict_to_free(const std::vector<double>& full) const;
  std::vector<double> extend_from_free(const std::vector<double>& free) const;
  void pin(std::vector<double>& full) const;

  static constexpr std::size_t kNotFree = static_cast<std::size_t>(-1);

 private:
  SpaceKind kind_ = SpaceKind::Grad;
  std::size_t num_dofs_ = 0;
  std::vector<std::size_t> free_;
  std::vector<std::size_t> constrained_;
  std::vector<std::size_t> free_index_;
};

struct FieldVector {
  SpaceKind space = SpaceKind::Grad;
  std::vector<double> values;
};

/// CSV with header dof_index,value.
void write_field_csv(const FieldVector& f, std::ostream& out);
FieldVector read_field_csv(SpaceKind space, std::istream& in);

}  // namespace mhd
