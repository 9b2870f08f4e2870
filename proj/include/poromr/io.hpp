#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "poromr/mesh.hpp"

namespace poromr {

// Shortest round-trip decimal form, locale-independent; throws IoError on
// non-finite input (no NaN/Inf ever reaches a CSV).
std::string format_number(double v);

// Like format_number, but NaN becomes the undefined-value marker "-" (used
// for undefined rates and not-applicable diagnostics).
std::string format_or_marker(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);

// Legacy ASCII VTK (version 3.0) unstructured grid carrying the pressure as
// vertex scalars and the displacement restricted to vertices as vectors.
void write_vtk(const std::string& path, const Mesh& mesh, const Eigen::VectorXd& p_vertex,
               const Eigen::VectorXd& u_coeffs);

void ensure_directory(const std::string& path);

}  // namespace poromr
