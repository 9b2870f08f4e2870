#pragma once

#include <memory>
#include <string>
#include <vector>

#include "poromr/config.hpp"
#include "poromr/diagnostics.hpp"

namespace poromr {

// Experiment drivers shared by the command-line tool, the python bindings
// and the acceptance suite. All CSV formats are fixed here.

struct RunArtifacts {
  Trajectory trajectory;
  EnergyReport energy;
  ConservationReport conservation;
  std::string trajectory_csv;
  std::vector<std::string> vtk_files;
};

// Single run at the first n and first m of the config; writes
// trajectory.csv (and per-snapshot VTK files when enabled) to output_dir.
RunArtifacts run_case(const RunConfig& cfg);

struct StudyRow {
  int n = 0;
  double h = 0;
  ErrorTable errors;
  double wall_s = 0;
};

struct StudyTable {
  int m = 1;
  std::vector<StudyRow> rows;
  std::vector<double> rate_u_l2, rate_u_h1, rate_p;  // pairwise; NaN = undefined
  std::string csv_path;
};

// One table (and one CSV) per m in the config; errors against the exact
// solution when the case has one, otherwise against an n = reference_n,
// m = 1 reference run shared across the study.
std::vector<StudyTable> convergence_study(const RunConfig& cfg);

struct BenchRow {
  int m = 1;
  double wall_s = 0;  // median of 3 timed repetitions, time loop only
  double speedup_vs_m1 = 1;
  double setup_s = 0;
  long stokes_solves = 0;
  long diffusion_solves = 0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::string csv_path;
};

// Timing comparison across the config's m list (which must contain 1);
// protocol per m: one warm-up run, then the median of three.
BenchResult timing_compare(const RunConfig& cfg);

}  // namespace poromr
