#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "poromr/driver.hpp"
#include "poromr/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

poromr::RunConfig load(const std::string& path) {
  poromr::RunConfig cfg = poromr::parse_config(path);
  if (const char* dir = std::getenv("POROMR_OUTPUT_DIR")) cfg.output_dir = dir;
  return cfg;
}

int do_run(const std::string& path) {
  const poromr::RunConfig cfg = load(path);
  const poromr::RunArtifacts art = poromr::run_case(cfg);
  std::cout << "wrote " << art.trajectory_csv << " (" << art.trajectory.coarse.size()
            << " rows)\n";
  for (const auto& f : art.vtk_files) std::cout << "wrote " << f << "\n";
  if (art.trajectory.advisory.triggered)
    std::cout << "note: " << art.trajectory.advisory.message << "\n";
  if (art.energy.applicable)
    std::cout << "energy identity max residual: " << art.energy.max_residual << "\n";
  if (art.conservation.applicable)
    std::cout << "mass balance max residual: " << art.conservation.max_eta_residual << "\n";
  return 0;
}

int do_study(const std::string& path) {
  const poromr::RunConfig cfg = load(path);
  for (const auto& table : poromr::convergence_study(cfg)) {
    std::cout << "wrote " << table.csv_path << "\n";
    for (size_t i = 0; i + 1 < table.rows.size(); ++i)
      std::cout << "  h " << table.rows[i].h << " -> " << table.rows[i + 1].h
                << ": rate_u_L2 " << table.rate_u_l2[i] << ", rate_u_H1 " << table.rate_u_h1[i]
                << ", rate_p " << table.rate_p[i] << "\n";
  }
  return 0;
}

int do_bench(const std::string& path) {
  const poromr::RunConfig cfg = load(path);
  const poromr::BenchResult res = poromr::timing_compare(cfg);
  std::cout << "wrote " << res.csv_path << "\n";
  for (const auto& row : res.rows)
    std::cout << "  m=" << row.m << ": " << row.wall_s << " s, speedup " << row.speedup_vs_m1
              << " (setup " << row.setup_s << " s)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"poromr: multirate solver for the reformulated poroelasticity system"};
  app.require_subcommand(1);

  std::string run_cfg, study_cfg, bench_cfg;
  CLI::App* run = app.add_subcommand("run", "single run; writes trajectory.csv");
  run->add_option("--config", run_cfg, "TOML config path")->required();
  CLI::App* study = app.add_subcommand("study", "convergence study over the n list");
  study->add_option("--config", study_cfg, "TOML config path")->required();
  CLI::App* bench = app.add_subcommand("bench", "timing comparison over the m list");
  bench->add_option("--config", bench_cfg, "TOML config path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return do_run(run_cfg);
    if (study->parsed()) return do_study(study_cfg);
    return do_bench(bench_cfg);
  } catch (const poromr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const poromr::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const poromr::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const poromr::IterationError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
