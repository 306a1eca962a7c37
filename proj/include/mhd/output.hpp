#pragma once

#include <string>
#include <vector>

#include "mhd/diagnostics.hpp"
#include "mhd/mms.hpp"

namespace mhd {

/// Frozen header of the time-series CSV.
inline constexpr const char* kTimeseriesHeader =
    "step,time,energy,hm,hc,div_b_l2,div_b_max,res_energy,res_hm,res_hc,picard_iters,inner_iters";
inline constexpr const char* kErrorTableHeader = "h,err_b_l2,order_b,err_u_l2,order_u,err_p_h1,order_p";

std::string format_record(const DiagnosticsRecord& r);
std::string timeseries_csv(const std::vector<DiagnosticsRecord>& records);
std::string error_table_csv(const std::vector<mms::ConvergenceRow>& rows);

/// Legacy ASCII VTK unstructured grid of the mesh (cell type 10).
std::string mesh_vtk(const Mesh& mesh);
/// Mesh plus vertex vectors u (average over incident cells of the Curl field at the vertex),
/// vertex scalars P and cell vectors B at the centroids.
std::string fields_vtk(const DeRhamComplex& cx, const MhdState& s);

/// Writes text with LF line endings; throws std::runtime_error on I/O failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace mhd
