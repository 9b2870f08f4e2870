#include "poromr/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "poromr/errors.hpp"

namespace poromr {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

bool is_bare_key(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  return true;
}

bool parse_integer(const std::string& s, long long& out) {
  if (s.empty()) return false;
  size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  out = std::stoll(s);
  return true;
}

bool parse_real(const std::string& s, double& out) {
  std::istringstream is(s);
  is >> out;
  return static_cast<bool>(is) && is.eof();
}

TomlValue parse_scalar(const std::string& text, int line) {
  TomlValue v;
  if (text == "true" || text == "false") {
    v.kind = TomlValue::Kind::boolean;
    v.boolean = text == "true";
    return v;
  }
  long long i;
  if (parse_integer(text, i)) {
    v.kind = TomlValue::Kind::integer;
    v.integer = i;
    v.real = static_cast<double>(i);
    return v;
  }
  double d;
  if (parse_real(text, d)) {
    if (!std::isfinite(d)) fail(line, "non-finite number '" + text + "'");
    v.kind = TomlValue::Kind::real;
    v.real = d;
    return v;
  }
  // istreams reject inf/nan spellings; call them out rather than "cannot parse"
  std::string low = text;
  for (char& c : low) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (!low.empty() && (low[0] == '+' || low[0] == '-')) low.erase(0, 1);
  if (low == "nan" || low == "inf" || low == "infinity")
    fail(line, "non-finite number '" + text + "'");
  fail(line, "cannot parse value '" + text + "'");
}

TomlValue parse_value(const std::string& raw, int line) {
  std::string text = trim(raw);
  if (text.empty()) fail(line, "missing value");

  if (text[0] == '"') {
    std::string out;
    size_t i = 1;
    for (; i < text.size(); ++i) {
      if (text[i] == '\\' && i + 1 < text.size()) {
        const char c = text[++i];
        if (c == '"' || c == '\\')
          out.push_back(c);
        else
          fail(line, "unsupported escape in string");
      } else if (text[i] == '"') {
        break;
      } else {
        out.push_back(text[i]);
      }
    }
    if (i >= text.size()) fail(line, "unterminated string");
    const std::string rest = trim(text.substr(i + 1));
    if (!rest.empty() && rest[0] != '#') fail(line, "trailing characters after string");
    TomlValue v;
    v.kind = TomlValue::Kind::string;
    v.str = out;
    return v;
  }

  // strings are handled; anything else may carry a trailing comment
  const size_t hash = text.find('#');
  if (hash != std::string::npos) text = trim(text.substr(0, hash));
  if (text.empty()) fail(line, "missing value");

  if (text[0] == '[') {
    if (text.back() != ']') fail(line, "unterminated array");
    TomlValue v;
    v.kind = TomlValue::Kind::array;
    v.array_integral = true;
    const std::string inner = trim(text.substr(1, text.size() - 2));
    if (inner.empty()) return v;
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string entry = trim(item);
      if (!entry.empty() && (entry[0] == '"' || entry == "true" || entry == "false"))
        fail(line, "arrays must be numeric");
      const TomlValue el = parse_scalar(entry, line);
      if (el.kind == TomlValue::Kind::integer) {
        v.array.push_back(static_cast<double>(el.integer));
      } else if (el.kind == TomlValue::Kind::real) {
        v.array.push_back(el.real);
        v.array_integral = false;
      } else {
        fail(line, "arrays must be numeric");
      }
    }
    return v;
  }

  return parse_scalar(text, line);
}

}  // namespace

TomlTable parse_toml(const std::string& text) {
  TomlTable table;
  std::string prefix;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;

    if (s[0] == '[') {
      const size_t close = s.find(']');
      if (close == std::string::npos) fail(line, "unterminated table header");
      const std::string name = trim(s.substr(1, close - 1));
      if (!is_bare_key(name)) fail(line, "bad table name '" + name + "'");
      const std::string rest = trim(s.substr(close + 1));
      if (!rest.empty() && rest[0] != '#') fail(line, "trailing characters after table header");
      prefix = name + ".";
      continue;
    }

    const size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    if (!is_bare_key(key)) fail(line, "bad key '" + key + "'");
    const std::string full = prefix + key;
    if (table.count(full)) fail(line, "duplicate key '" + full + "'");
    table.emplace(full, parse_value(s.substr(eq + 1), line));
  }
  return table;
}

TomlTable parse_toml_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_toml(ss.str());
}

namespace {

class TableReader {
 public:
  explicit TableReader(const TomlTable& t) : table_(t) {}

  const TomlValue* find(const std::string& key) {
    used_.insert(key);
    const auto it = table_.find(key);
    return it == table_.end() ? nullptr : &it->second;
  }

  const TomlValue& require(const std::string& key) {
    const TomlValue* v = find(key);
    if (!v) throw ConfigError("config: missing required key '" + key + "'");
    return *v;
  }

  std::string get_string(const std::string& key) {
    const TomlValue& v = require(key);
    if (v.kind != TomlValue::Kind::string)
      throw ConfigError("config: key '" + key + "' must be a string");
    return v.str;
  }

  double get_real(const TomlValue& v, const std::string& key) {
    if (v.kind != TomlValue::Kind::real && v.kind != TomlValue::Kind::integer)
      throw ConfigError("config: key '" + key + "' must be a number");
    return v.real;
  }

  long long get_int(const TomlValue& v, const std::string& key) {
    if (v.kind != TomlValue::Kind::integer)
      throw ConfigError("config: key '" + key + "' must be an integer");
    return v.integer;
  }

  std::vector<int> get_int_list(const std::string& key) {
    const TomlValue& v = require(key);
    if (v.kind == TomlValue::Kind::integer) return {static_cast<int>(v.integer)};
    if (v.kind == TomlValue::Kind::array) {
      if (!v.array_integral || v.array.empty())
        throw ConfigError("config: key '" + key + "' must be an integer or integer array");
      std::vector<int> out;
      for (double d : v.array) out.push_back(static_cast<int>(std::llround(d)));
      return out;
    }
    throw ConfigError("config: key '" + key + "' must be an integer or integer array");
  }

  void check_all_used() const {
    for (const auto& [key, value] : table_) {
      (void)value;
      if (!used_.count(key)) throw ConfigError("config: unknown key '" + key + "'");
    }
  }

 private:
  const TomlTable& table_;
  std::set<std::string> used_;
};

}  // namespace

RunConfig config_from_table(const TomlTable& table) {
  TableReader r(table);
  RunConfig cfg;

  cfg.case_name = r.get_string("case");
  cfg.n_list = r.get_int_list("n");
  cfg.dt = r.get_real(r.require("dt"), "dt");
  cfg.T = r.get_real(r.require("T"), "T");
  if (const TomlValue* v = r.find("m")) {
    (void)v;
    cfg.m_list = r.get_int_list("m");
  }
  if (const TomlValue* v = r.find("theta")) cfg.theta = static_cast<int>(r.get_int(*v, "theta"));
  if (const TomlValue* v = r.find("output_dir")) {
    if (v->kind != TomlValue::Kind::string)
      throw ConfigError("config: key 'output_dir' must be a string");
    cfg.output_dir = v->str;
  }
  if (const TomlValue* v = r.find("emit_vtk")) {
    if (v->kind != TomlValue::Kind::boolean)
      throw ConfigError("config: key 'emit_vtk' must be a boolean");
    cfg.emit_vtk = v->boolean;
  }
  if (const TomlValue* v = r.find("seed"))
    cfg.seed = static_cast<unsigned long>(r.get_int(*v, "seed"));
  if (const TomlValue* v = r.find("reference_n"))
    cfg.reference_n = static_cast<int>(r.get_int(*v, "reference_n"));

  const auto opt_real = [&r](const char* key) -> std::optional<double> {
    if (const TomlValue* v = r.find(key)) return r.get_real(*v, key);
    return std::nullopt;
  };
  cfg.overrides.E = opt_real("params.E");
  cfg.overrides.nu = opt_real("params.nu");
  cfg.overrides.c0 = opt_real("params.c0");
  cfg.overrides.alpha = opt_real("params.alpha");
  cfg.overrides.k = opt_real("params.k");
  cfg.overrides.mu_f = opt_real("params.mu_f");

  if (const TomlValue* v = r.find("solver.lagged_pressure_update")) {
    if (v->kind != TomlValue::Kind::boolean)
      throw ConfigError("config: key 'solver.lagged_pressure_update' must be a boolean");
    cfg.solver.lagged_pressure_update = v->boolean;
  }
  if (const TomlValue* v = r.find("solver.fixed_point_tol"))
    cfg.solver.fixed_point_tol = r.get_real(*v, "solver.fixed_point_tol");
  if (const TomlValue* v = r.find("solver.fixed_point_max_iter"))
    cfg.solver.fixed_point_max_iter =
        static_cast<int>(r.get_int(*v, "solver.fixed_point_max_iter"));

  r.check_all_used();
  validate(cfg);
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  return config_from_table(parse_toml_file(path));
}

void validate(const RunConfig& cfg) {
  const auto bad = [](const std::string& what) { throw ConfigError("config: " + what); };

  if (cfg.case_name != "test1" && cfg.case_name != "test2" && cfg.case_name != "test3" &&
      cfg.case_name != "verification_neumann")
    bad("unknown case '" + cfg.case_name + "'");
  if (cfg.n_list.empty()) bad("key 'n' must list at least one mesh");
  for (int n : cfg.n_list)
    if (n < 1) bad("key 'n' entries must be >= 1");
  if (!(cfg.dt > 0)) bad("key 'dt' must be positive");
  if (!(cfg.T > 0)) bad("key 'T' must be positive");
  if (cfg.m_list.empty()) bad("key 'm' must list at least one rate");
  for (int m : cfg.m_list)
    if (m < 1) bad("key 'm' entries must be >= 1");
  if (cfg.theta != 0 && cfg.theta != 1) bad("key 'theta' must be 0 or 1");
  if (cfg.reference_n < 2) bad("key 'reference_n' must be >= 2");
  for (int m : cfg.m_list) {
    const TimeGrid grid{cfg.dt, m, cfg.T, cfg.theta};
    try {
      poromr::validate(grid);
    } catch (const std::invalid_argument& e) {
      bad(std::string(e.what()) + " (keys 'dt', 'm', 'T')");
    }
  }

  const ParamOverrides& o = cfg.overrides;
  if (o.E && !(*o.E > 0)) bad("key 'params.E' must be positive");
  if (o.nu && !(*o.nu > 0 && *o.nu < 0.5)) bad("key 'params.nu' must lie in (0, 1/2)");
  if (o.c0 && !(*o.c0 > 0))
    bad("key 'params.c0' must be positive: c0 = 0 degenerates kappa3 = c0/(alpha^2 + lambda*c0)");
  if (o.alpha && !(*o.alpha > 0 && *o.alpha <= 1)) bad("key 'params.alpha' must lie in (0, 1]");
  if (o.k && !(*o.k > 0)) bad("key 'params.k' must be positive");
  if (o.mu_f && !(*o.mu_f > 0)) bad("key 'params.mu_f' must be positive");

  if (!(cfg.solver.fixed_point_tol > 0)) bad("key 'solver.fixed_point_tol' must be positive");
  if (cfg.solver.fixed_point_max_iter < 1)
    bad("key 'solver.fixed_point_max_iter' must be >= 1");
}

CaseDefinition configured_case(const RunConfig& cfg) {
  const CaseDefinition base = case_by_name(cfg.case_name);
  const ParamOverrides& o = cfg.overrides;
  if (!o.E && !o.nu && !o.c0 && !o.alpha && !o.k && !o.mu_f) return base;

  const PhysicalParams& bp = base.params;
  const PhysicalParams pp = params_from_young_poisson(
      o.E.value_or(bp.E), o.nu.value_or(bp.nu), o.c0.value_or(bp.c0),
      o.alpha.value_or(bp.alpha), o.k.value_or(bp.K(0, 0)), o.mu_f.value_or(bp.mu_f));
  return case_by_name(cfg.case_name, pp);
}

}  // namespace poromr
