#include "poromr/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "poromr/errors.hpp"

namespace poromr {

std::string format_number(double v) {
  if (!std::isfinite(v)) throw IoError("refusing to write non-finite value");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_or_marker(double v) {
  if (std::isnan(v)) return "-";
  return format_number(v);
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw IoError("csv row width mismatch in " + path);
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_vtk(const std::string& path, const Mesh& mesh, const Eigen::VectorXd& p_vertex,
               const Eigen::VectorXd& u_coeffs) {
  const auto nv = static_cast<Eigen::Index>(mesh.vertices.size());
  if (p_vertex.size() != nv || u_coeffs.size() < 2 * nv)
    throw IoError("vtk field sizes do not match the mesh");
  for (Eigen::Index i = 0; i < nv; ++i)
    if (!std::isfinite(p_vertex[i]) || !std::isfinite(u_coeffs[2 * i]) ||
        !std::isfinite(u_coeffs[2 * i + 1]))
      throw IoError("refusing to write non-finite field to " + path);

  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);

  out << "# vtk DataFile Version 3.0\n";
  out << "poromr snapshot\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nv << " double\n";
  for (const auto& v : mesh.vertices)
    out << format_number(v[0]) << " " << format_number(v[1]) << " 0\n";

  const size_t nt = mesh.triangles.size();
  out << "CELLS " << nt << " " << 4 * nt << "\n";
  for (const auto& t : mesh.triangles) out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
  out << "CELL_TYPES " << nt << "\n";
  for (size_t t = 0; t < nt; ++t) out << "5\n";

  out << "POINT_DATA " << nv << "\n";
  out << "SCALARS p double 1\n";
  out << "LOOKUP_TABLE default\n";
  for (Eigen::Index i = 0; i < nv; ++i) out << format_number(p_vertex[i]) << "\n";
  out << "VECTORS u double\n";
  for (Eigen::Index i = 0; i < nv; ++i)
    out << format_number(u_coeffs[2 * i]) << " " << format_number(u_coeffs[2 * i + 1]) << " 0\n";

  if (!out) throw IoError("write failed: " + path);
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw IoError("cannot create directory " + path + ": " + ec.message());
}

}  // namespace poromr
