#include "poromr/driver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "poromr/errors.hpp"
#include "poromr/io.hpp"

namespace poromr {

namespace {

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw SolverError(std::string("non-finite ") + what + " in results");
  return v;
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir + "/" + name;
}

MultirateSolver make_solver(const RunConfig& cfg, int n, int m) {
  const TimeGrid grid{cfg.dt, m, cfg.T, cfg.theta};
  return MultirateSolver(configured_case(cfg), n, grid, cfg.solver);
}

}  // namespace

RunArtifacts run_case(const RunConfig& cfg) {
  RunArtifacts art;
  const int n = cfg.n_list.front();
  const int m = cfg.m_list.front();

  const MultirateSolver solver(configured_case(cfg), n, TimeGrid{cfg.dt, m, cfg.T, cfg.theta},
                               cfg.solver);
  art.trajectory = solver.run();
  art.energy = energy_report(solver, art.trajectory);
  art.conservation = conservation_report(solver, art.trajectory);

  const SparseMat& M1 = solver.mass_scalar();
  const SparseMat& M2 = solver.mass_vector();

  ensure_directory(cfg.output_dir);
  CsvTable csv;
  csv.header = {"time",   "u_L2",          "p_L2",
                "xi_L2",  "eta_L2",        "energy_residual",
                "conservation_residual"};
  for (size_t l = 0; l < art.trajectory.coarse.size(); ++l) {
    const auto& s = art.trajectory.coarse[l];
    std::vector<std::string> row;
    row.push_back(format_number(checked(s.time, "time")));
    row.push_back(format_number(checked(std::sqrt(s.u.dot(M2 * s.u)), "u norm")));
    row.push_back(format_number(checked(std::sqrt(s.p.dot(M1 * s.p)), "p norm")));
    row.push_back(format_number(checked(std::sqrt(s.xi.dot(M1 * s.xi)), "xi norm")));
    row.push_back(format_number(checked(std::sqrt(s.eta.dot(M1 * s.eta)), "eta norm")));
    if (art.energy.applicable)
      row.push_back(format_number(
          checked(l == 0 ? 0.0 : art.energy.residual[l - 1], "energy residual")));
    else
      row.push_back("-");
    if (art.conservation.applicable)
      row.push_back(format_number(checked(art.conservation.eta_residual[l],
                                          "conservation residual")));
    else
      row.push_back("-");
    csv.rows.push_back(std::move(row));
  }
  art.trajectory_csv = join_path(cfg.output_dir, "trajectory.csv");
  write_csv(art.trajectory_csv, csv);

  if (cfg.emit_vtk) {
    const Mesh& mesh = solver.spaces().mesh;
    for (size_t l = 0; l < art.trajectory.coarse.size(); ++l) {
      const auto& s = art.trajectory.coarse[l];
      std::ostringstream name;
      name << "snapshot_" << l << ".vtk";
      const std::string path = join_path(cfg.output_dir, name.str());
      write_vtk(path, mesh, s.p, s.u);
      art.vtk_files.push_back(path);
    }
  }
  return art;
}

std::vector<StudyTable> convergence_study(const RunConfig& cfg) {
  if (cfg.n_list.size() < 2)
    throw std::invalid_argument("convergence_study: need at least two meshes");

  const CaseDefinition base = configured_case(cfg);
  const bool has_exact = base.exact.has_value();

  // reference run for cases without an exact solution, shared by all tables
  std::unique_ptr<MultirateSolver> ref_solver;
  Trajectory ref_traj;
  if (!has_exact) {
    for (int n : cfg.n_list)
      if (cfg.reference_n % n != 0 || cfg.reference_n <= n)
        throw std::invalid_argument(
            "convergence_study: reference_n must be a proper multiple of every n");
    ref_solver = std::make_unique<MultirateSolver>(base, cfg.reference_n,
                                                   TimeGrid{cfg.dt, 1, cfg.T, cfg.theta},
                                                   cfg.solver);
    ref_traj = ref_solver->run();
  }

  ensure_directory(cfg.output_dir);
  std::vector<StudyTable> tables;
  for (int m : cfg.m_list) {
    StudyTable table;
    table.m = m;

    std::vector<double> hs, eu2, euh, ep;
    for (int n : cfg.n_list) {
      const MultirateSolver solver = make_solver(cfg, n, m);
      const Trajectory traj = solver.run();

      StudyRow row;
      row.n = n;
      row.h = solver.spaces().mesh.h;
      row.wall_s = traj.setup_seconds + traj.loop_seconds;
      row.errors = has_exact ? errors_vs_exact(solver, traj)
                             : errors_vs_reference(solver, traj, *ref_solver, ref_traj);
      checked(row.errors.u_linf_l2, "u error");
      checked(row.errors.u_linf_h1, "u error");
      checked(row.errors.p_l2_h1, "p error");

      hs.push_back(row.h);
      eu2.push_back(row.errors.u_linf_l2);
      euh.push_back(row.errors.u_linf_h1);
      ep.push_back(row.errors.p_l2_h1);
      table.rows.push_back(std::move(row));
    }

    table.rate_u_l2 = convergence_rates(eu2, hs);
    table.rate_u_h1 = convergence_rates(euh, hs);
    table.rate_p = convergence_rates(ep, hs);

    CsvTable csv;
    csv.header = {"h",         "err_u_L2", "rate_u_L2", "err_u_H1",
                  "rate_u_H1", "err_p_L2H1", "rate_p",  "wall_s"};
    for (size_t i = 0; i < table.rows.size(); ++i) {
      const StudyRow& row = table.rows[i];
      std::vector<std::string> cells;
      cells.push_back(format_number(row.h));
      cells.push_back(format_number(row.errors.u_linf_l2));
      cells.push_back(i == 0 ? "-" : format_or_marker(table.rate_u_l2[i - 1]));
      cells.push_back(format_number(row.errors.u_linf_h1));
      cells.push_back(i == 0 ? "-" : format_or_marker(table.rate_u_h1[i - 1]));
      cells.push_back(format_number(row.errors.p_l2_h1));
      cells.push_back(i == 0 ? "-" : format_or_marker(table.rate_p[i - 1]));
      cells.push_back(format_number(row.wall_s));
      csv.rows.push_back(std::move(cells));
    }
    std::ostringstream name;
    name << "convergence_m" << m << ".csv";
    table.csv_path = join_path(cfg.output_dir, name.str());
    write_csv(table.csv_path, csv);
    tables.push_back(std::move(table));
  }
  return tables;
}

BenchResult timing_compare(const RunConfig& cfg) {
  if (cfg.m_list.size() < 2)
    throw std::invalid_argument("timing_compare: need at least two values of m");
  if (std::find(cfg.m_list.begin(), cfg.m_list.end(), 1) == cfg.m_list.end())
    throw std::invalid_argument("timing_compare: the m list must contain 1 (the baseline)");

  const int n = cfg.n_list.front();
  BenchResult result;
  double wall_m1 = 0;

  for (int m : cfg.m_list) {
    const MultirateSolver solver = make_solver(cfg, n, m);
    (void)solver.run();  // warm-up
    std::vector<double> walls(3);
    BenchRow row;
    row.m = m;
    for (double& w : walls) {
      const Trajectory traj = solver.run();
      w = traj.loop_seconds;
      row.setup_s = traj.setup_seconds;
      row.stokes_solves = traj.stokes_solves;
      row.diffusion_solves = traj.diffusion_solves;
    }
    std::sort(walls.begin(), walls.end());
    row.wall_s = walls[1];
    if (m == 1) wall_m1 = row.wall_s;
    result.rows.push_back(row);
  }

  for (BenchRow& row : result.rows)
    row.speedup_vs_m1 = row.m == 1 ? 1.0 : wall_m1 / row.wall_s;

  ensure_directory(cfg.output_dir);
  CsvTable csv;
  csv.header = {"m", "wall_s", "speedup_vs_m1", "setup_s"};
  for (const BenchRow& row : result.rows)
    csv.rows.push_back({std::to_string(row.m), format_number(row.wall_s),
                        format_number(row.speedup_vs_m1), format_number(row.setup_s)});
  result.csv_path = join_path(cfg.output_dir, "timing.csv");
  write_csv(result.csv_path, csv);
  return result;
}

}  // namespace poromr
