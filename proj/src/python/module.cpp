#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "poromr/diagnostics.hpp"
#include "poromr/driver.hpp"
#include "poromr/mesh.hpp"
#include "poromr/params.hpp"

namespace py = pybind11;
using namespace poromr;

namespace {

py::dict mesh_info(int n) {
  const Mesh mesh = build_unit_square_mesh(n);
  const SpacePair sp = build_spaces(mesh);
  py::dict d;
  d["n"] = mesh.n;
  d["h"] = mesh.h;
  d["vertices"] = mesh.vertices.size();
  d["triangles"] = mesh.triangles.size();
  d["boundary_edges"] = mesh.boundary_edges.size();
  d["p2_nodes"] = sp.n_nodes;
  d["scalar_dofs"] = sp.n_scalar;
  d["vector_dofs"] = sp.n_vector;
  return d;
}

RunConfig make_config(const std::string& case_name, int n, double dt, int m, double T,
                      int theta, const std::string& output_dir) {
  RunConfig cfg;
  cfg.case_name = case_name;
  cfg.n_list = {n};
  cfg.dt = dt;
  cfg.m_list = {m};
  cfg.T = T;
  cfg.theta = theta;
  cfg.output_dir = output_dir;
  validate(cfg);
  return cfg;
}

py::dict summarize(const RunArtifacts& art, const RunConfig& cfg) {
  const SpacePair sp = build_spaces(build_unit_square_mesh(cfg.n_list.front()));
  const auto& last = art.trajectory.coarse.back();
  py::dict d;
  d["csv"] = art.trajectory_csv;
  d["rows"] = art.trajectory.coarse.size();
  d["final_time"] = last.time;
  d["u_l2_final"] = p2_field_l2(sp, last.u);
  d["p_l2_final"] = p1_field_l2(sp, last.p);
  d["stokes_solves"] = art.trajectory.stokes_solves;
  d["diffusion_solves"] = art.trajectory.diffusion_solves;
  d["advisory_triggered"] = art.trajectory.advisory.triggered;
  d["energy_max_residual"] =
      art.energy.applicable ? py::cast(art.energy.max_residual) : py::none();
  d["conservation_max_residual"] =
      art.conservation.applicable ? py::cast(art.conservation.max_eta_residual) : py::none();
  d["vtk_files"] = art.vtk_files;
  return d;
}

py::dict run_simple(const std::string& case_name, int n, double dt, int m, double T, int theta,
                    const std::string& output_dir) {
  const RunConfig cfg = make_config(case_name, n, dt, m, T, theta, output_dir);
  return summarize(run_case(cfg), cfg);
}

py::dict run_config_file(const std::string& path) {
  const RunConfig cfg = parse_config(path);
  return summarize(run_case(cfg), cfg);
}

py::list study_config_file(const std::string& path) {
  const RunConfig cfg = parse_config(path);
  py::list out;
  for (const StudyTable& table : convergence_study(cfg)) {
    py::dict d;
    d["m"] = table.m;
    d["csv"] = table.csv_path;
    py::list rows;
    for (const StudyRow& row : table.rows) {
      py::dict r;
      r["n"] = row.n;
      r["h"] = row.h;
      r["err_u_l2"] = row.errors.u_linf_l2;
      r["err_u_h1"] = row.errors.u_linf_h1;
      r["err_p_l2h1"] = row.errors.p_l2_h1;
      r["wall_s"] = row.wall_s;
      rows.append(r);
    }
    d["rows"] = rows;
    d["rate_u_l2"] = table.rate_u_l2;
    d["rate_u_h1"] = table.rate_u_h1;
    d["rate_p"] = table.rate_p;
    out.append(d);
  }
  return out;
}

py::dict bench_config_file(const std::string& path) {
  const RunConfig cfg = parse_config(path);
  const BenchResult res = timing_compare(cfg);
  py::dict d;
  d["csv"] = res.csv_path;
  py::list rows;
  for (const BenchRow& row : res.rows) {
    py::dict r;
    r["m"] = row.m;
    r["wall_s"] = row.wall_s;
    r["speedup_vs_m1"] = row.speedup_vs_m1;
    r["setup_s"] = row.setup_s;
    r["stokes_solves"] = row.stokes_solves;
    r["diffusion_solves"] = row.diffusion_solves;
    rows.append(r);
  }
  d["rows"] = rows;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "multirate solver for fluid-saturated poroelasticity (reformulated system)";
  m.attr("__version__") = "0.1.0";

  m.def("mesh_info", &mesh_info, py::arg("n"),
        "sizes of the structured unit-square triangulation and its FE spaces");

  m.def(
      "derive_lame",
      [](double E, double nu) {
        const LameParams lp = derive_lame(E, nu);
        return std::make_pair(lp.lambda, lp.mu);
      },
      py::arg("E"), py::arg("nu"), "plane-strain Lame parameters (lambda, mu)");

  m.def(
      "derive_kappas",
      [](double alpha, double lambda, double c0) {
        const Kappas k = derive_kappas(alpha, lambda, c0);
        return std::make_tuple(k.k1, k.k2, k.k3);
      },
      py::arg("alpha"), py::arg("lambda_"), py::arg("c0"),
      "coefficients (kappa1, kappa2, kappa3) of the inverse variable change");

  m.def(
      "to_reformulated",
      [](double p, double q, double E, double nu, double c0, double alpha) {
        const PhysicalParams pp = params_from_young_poisson(E, nu, c0, alpha, 1.0);
        return to_reformulated(p, q, pp);
      },
      py::arg("p"), py::arg("q"), py::arg("E"), py::arg("nu"), py::arg("c0"), py::arg("alpha"),
      "(xi, eta) from (p, q)");

  m.def("run", &run_simple, py::arg("case"), py::arg("n"), py::arg("dt"), py::arg("m") = 1,
        py::arg("T") = 0.0, py::arg("theta") = 0, py::arg("output_dir") = "out",
        "single run; returns a summary dict and writes trajectory.csv");
  m.def("run_config", &run_config_file, py::arg("path"), "single run from a TOML config");
  m.def("study_config", &study_config_file, py::arg("path"),
        "convergence study from a TOML config");
  m.def("bench_config", &bench_config_file, py::arg("path"),
        "timing comparison from a TOML config");
}
