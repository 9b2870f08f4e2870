#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "poromr/cases.hpp"
#include "poromr/scheme.hpp"

namespace poromr {

// Minimal TOML reader covering what the run configs use: comments, bare
// keys, [table] headers, basic strings, integers, floats, booleans and
// single-line homogeneous numeric arrays. Anything else is rejected with a
// diagnostic naming the offending line.
struct TomlValue {
  enum class Kind { string, integer, real, boolean, array };
  Kind kind = Kind::string;
  std::string str;
  long long integer = 0;
  double real = 0;
  bool boolean = false;
  std::vector<double> array;
  bool array_integral = false;  // every element written as an integer
};

// keys are flattened as "table.key"
using TomlTable = std::map<std::string, TomlValue>;

TomlTable parse_toml(const std::string& text);
TomlTable parse_toml_file(const std::string& path);

struct ParamOverrides {
  std::optional<double> E, nu, c0, alpha, k, mu_f;
};

struct RunConfig {
  std::string case_name;
  std::vector<int> n_list;  // several entries select study mode
  double dt = 0;
  std::vector<int> m_list = {1};  // several entries select timing mode
  double T = 0;
  int theta = 0;
  std::string output_dir = "out";
  bool emit_vtk = false;
  unsigned long seed = 0;
  int reference_n = 64;  // self-convergence reference mesh for cases without exact solutions
  ParamOverrides overrides;
  SolverOptions solver;

  bool study_mode() const { return n_list.size() > 1; }
  bool bench_mode() const { return m_list.size() > 1; }
};

// Reads and validates; throws ConfigError with the key name on any problem.
RunConfig parse_config(const std::string& path);
RunConfig config_from_table(const TomlTable& table);
void validate(const RunConfig& cfg);

// The named case with parameter overrides applied consistently (manufactured
// sources are rebuilt from the effective parameters).
CaseDefinition configured_case(const RunConfig& cfg);

}  // namespace poromr
