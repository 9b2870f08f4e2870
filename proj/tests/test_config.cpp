#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "poromr/config.hpp"
#include "poromr/errors.hpp"

using namespace poromr;

namespace {

// config_from_table should reject `text` with a ConfigError whose message
// mentions `needle`
void expect_rejected(const std::string& text, const std::string& needle) {
  try {
    config_from_table(parse_toml(text));
    FAIL_CHECK("accepted: " << text);
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK_MESSAGE(what.find(needle) != std::string::npos,
                  "message '" << what << "' lacks '" << needle << "'");
  }
}

void expect_parse_error(const std::string& text, const std::string& needle) {
  try {
    parse_toml(text);
    FAIL_CHECK("parsed: " << text);
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK_MESSAGE(what.find(needle) != std::string::npos,
                  "message '" << what << "' lacks '" << needle << "'");
  }
}

const char* kMinimal =
    "case = \"test1\"\n"
    "n = 8\n"
    "dt = 1e-4\n"
    "T = 1e-3\n";

}  // namespace

TEST_CASE("toml reader covers the value kinds the configs use") {
  const TomlTable t = parse_toml(
      "# run preset\n"
      "case = \"test1\"  # trailing comment\n"
      "n = 8\n"
      "dt = 1e-4 # fine step\n"
      "emit_vtk = true\n"
      "m = [1, 5]\n"
      "weights = [0.5, 1.5]\n"
      "\n"
      "[params]\n"
      "E = 2e-4\n");

  CHECK(t.at("case").kind == TomlValue::Kind::string);
  CHECK(t.at("case").str == "test1");
  CHECK(t.at("n").kind == TomlValue::Kind::integer);
  CHECK(t.at("n").integer == 8);
  CHECK(t.at("dt").kind == TomlValue::Kind::real);
  CHECK(t.at("dt").real == doctest::Approx(1e-4).epsilon(1e-15));
  CHECK(t.at("emit_vtk").boolean);
  REQUIRE(t.at("m").kind == TomlValue::Kind::array);
  CHECK(t.at("m").array == std::vector<double>{1, 5});
  CHECK(t.at("m").array_integral);
  CHECK_FALSE(t.at("weights").array_integral);
  CHECK(t.at("params.E").real == doctest::Approx(2e-4).epsilon(1e-15));
  CHECK(t.count("E") == 0);  // lives under the table prefix only
}

TEST_CASE("toml reader rejects what it does not understand, with line numbers") {
  expect_parse_error("a = 1\na = 2\n", "line 2");
  expect_parse_error("a = 1\na = 2\n", "duplicate");
  expect_parse_error("this is not toml\n", "line 1");
  expect_parse_error("x = \"unterminated\n", "unterminated");
  expect_parse_error("x = [1, 2\n", "array");
  expect_parse_error("[params\n", "table header");
  expect_parse_error("x = \"a\" junk\n", "trailing");
  expect_parse_error("x =\n", "missing value");
  expect_parse_error("x = nan\n", "non-finite");
  expect_parse_error("x = inf\n", "non-finite");
  expect_parse_error("x = [1, \"a\"]\n", "numeric");
}

TEST_CASE("minimal config fills in the documented defaults") {
  const RunConfig cfg = config_from_table(parse_toml(kMinimal));
  CHECK(cfg.case_name == "test1");
  CHECK(cfg.n_list == std::vector<int>{8});
  CHECK(cfg.dt == doctest::Approx(1e-4).epsilon(1e-15));
  CHECK(cfg.T == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK(cfg.theta == 0);
  CHECK(cfg.m_list == std::vector<int>{1});
  CHECK(cfg.output_dir == "out");
  CHECK_FALSE(cfg.emit_vtk);
  CHECK(cfg.seed == 0);
  CHECK(cfg.reference_n == 64);
  CHECK_FALSE(cfg.study_mode());
  CHECK_FALSE(cfg.bench_mode());
  CHECK_FALSE(cfg.solver.lagged_pressure_update);
  CHECK(cfg.solver.fixed_point_tol == doctest::Approx(1e-10).epsilon(1e-15));
  CHECK(cfg.solver.fixed_point_max_iter == 50);
  CHECK_FALSE(cfg.overrides.E.has_value());
}

TEST_CASE("list-valued n and m switch the run modes") {
  const RunConfig study = config_from_table(parse_toml(
      "case = \"test1\"\nn = [8, 16, 32]\ndt = 1e-4\nT = 1e-3\n"));
  CHECK(study.study_mode());
  CHECK_FALSE(study.bench_mode());
  CHECK(study.n_list == std::vector<int>{8, 16, 32});

  const RunConfig bench = config_from_table(parse_toml(
      "case = \"test1\"\nn = 16\ndt = 1e-4\nm = [1, 2, 5]\nT = 1e-3\n"));
  CHECK(bench.bench_mode());
  CHECK(bench.m_list == std::vector<int>{1, 2, 5});

  const RunConfig full = config_from_table(parse_toml(
      "case = \"test2\"\nn = 8\ndt = 1e-3\nm = 5\nT = 0.1\ntheta = 1\n"
      "output_dir = \"results\"\nemit_vtk = true\nseed = 42\nreference_n = 32\n"
      "[solver]\nlagged_pressure_update = true\nfixed_point_tol = 1e-8\n"
      "fixed_point_max_iter = 20\n"));
  CHECK(full.theta == 1);
  CHECK(full.output_dir == "results");
  CHECK(full.emit_vtk);
  CHECK(full.seed == 42);
  CHECK(full.reference_n == 32);
  CHECK(full.solver.lagged_pressure_update);
  CHECK(full.solver.fixed_point_tol == doctest::Approx(1e-8).epsilon(1e-15));
  CHECK(full.solver.fixed_point_max_iter == 20);
}

TEST_CASE("validation points at the offending key") {
  expect_rejected("case = \"test9\"\nn = 8\ndt = 1e-4\nT = 1e-3\n", "unknown case");
  expect_rejected("case = 3\nn = 8\ndt = 1e-4\nT = 1e-3\n", "case");
  expect_rejected("case = \"test1\"\nn = 0\ndt = 1e-4\nT = 1e-3\n", "'n'");
  expect_rejected("case = \"test1\"\nn = []\ndt = 1e-4\nT = 1e-3\n", "'n'");
  expect_rejected("case = \"test1\"\nn = 8\ndt = 0\nT = 1e-3\n", "'dt'");
  expect_rejected("case = \"test1\"\nn = 8\ndt = 1e-4\nT = 0\n", "'T'");
  expect_rejected("case = \"test1\"\nn = 8\ndt = 1e-4\nm = 0\nT = 1e-3\n", "'m'");
  expect_rejected("case = \"test1\"\nn = 8\ndt = 1e-4\ntheta = 2\nT = 1e-3\n", "theta");
  expect_rejected("case = \"test1\"\nn = 8\ndt = 3e-4\nT = 1e-3\n", "'T'");
  expect_rejected("case = \"test1\"\nn = 8\ndt = 1e-4\nT = 1e-3\nfoo = 1\n", "unknown key 'foo'");
  expect_rejected("case = \"test1\"\nn = 8\ndt = 1e-4\nT = 1e-3\nreference_n = 1\n",
                  "reference_n");
  expect_rejected(std::string(kMinimal) + "[params]\nc0 = 0\n", "kappa3");
  expect_rejected(std::string(kMinimal) + "[params]\nnu = 0.6\n", "params.nu");
  expect_rejected(std::string(kMinimal) + "[params]\nalpha = 1.5\n", "params.alpha");
  expect_rejected(std::string(kMinimal) + "[solver]\nfixed_point_max_iter = 0\n",
                  "fixed_point_max_iter");
  expect_rejected(std::string(kMinimal) + "[solver]\nfixed_point_tol = 0\n", "fixed_point_tol");
  expect_rejected("case = \"test1\"\nn = 8\ndt = 1e-4\nT = 1e-3\nm = \"five\"\n", "'m'");
}

TEST_CASE("parameter overrides rebuild the manufactured case consistently") {
  const RunConfig cfg =
      config_from_table(parse_toml(std::string(kMinimal) + "[params]\nE = 2e-4\n"));
  const CaseDefinition got = configured_case(cfg);
  const CaseDefinition want =
      test1_manufactured(params_from_young_poisson(2e-4, 0.4, 1e-5, 0.83, 1e-5));

  CHECK(got.params.E == doctest::Approx(2e-4).epsilon(1e-15));
  CHECK(got.params.lambda == doctest::Approx(want.params.lambda).epsilon(1e-14));
  CHECK(got.params.mu == doctest::Approx(want.params.mu).epsilon(1e-14));
  for (auto [x, y, t] : {std::array<double, 3>{0.3, 0.7, 0.5},
                         std::array<double, 3>{0.9, 0.1, 1.0}}) {
    const auto fg = got.body_force(x, y, t);
    const auto fw = want.body_force(x, y, t);
    CHECK(fg[0] == doctest::Approx(fw[0]).epsilon(1e-13));
    CHECK(fg[1] == doctest::Approx(fw[1]).epsilon(1e-13));
    CHECK(got.source(x, y, t) == doctest::Approx(want.source(x, y, t)).epsilon(1e-13));
  }

  // no override: the stock case comes back untouched
  const RunConfig plain = config_from_table(parse_toml(kMinimal));
  CHECK(configured_case(plain).params.E == doctest::Approx(1e-4).epsilon(1e-15));
}

TEST_CASE("config files round-trip through the filesystem") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "poromr_config_test";
  fs::create_directories(dir);
  const fs::path file = dir / "run.toml";
  {
    std::ofstream out(file);
    out << "case = \"test2\"\nn = 8\ndt = 1e-3\nm = 5\nT = 0.1\n";
  }
  const RunConfig cfg = parse_config(file.string());
  CHECK(cfg.case_name == "test2");
  CHECK(cfg.m_list == std::vector<int>{5});

  CHECK_THROWS_AS(parse_config((dir / "absent.toml").string()), ConfigError);
  fs::remove_all(dir);
}
