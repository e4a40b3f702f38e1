#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hamlag/error.hpp"

namespace hamlag::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorKind::ConfigError, message); }

void require_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!ok.count(key)) fail("unknown key '" + key + "' in " + where);
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + " must be an integer");
  return j.get<int>();
}

params::Angles angles(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) fail(where + " must be an array of three numbers");
  return {number(j[0], where), number(j[1], where), number(j[2], where)};
}

torus::Range range(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where + " must be [lo, hi]");
  torus::Range r{number(j[0], where), number(j[1], where)};
  if (!(r.lo <= r.hi)) fail(where + " must have lo <= hi");
  return r;
}

void parse_seed(const json& j, params::SeedParameters& seed) {
  require_keys(j, "seed", {"alpha", "a1", "a2", "c2_root_branch", "c2_sign"});
  if (j.contains("alpha")) seed.alpha = angles(j["alpha"], "seed.alpha");
  if (j.contains("a1")) seed.a1 = number(j["a1"], "seed.a1");
  if (j.contains("a2")) seed.a2 = number(j["a2"], "seed.a2");
  if (j.contains("c2_root_branch")) {
    const auto b = j["c2_root_branch"];
    if (b == "Minus") seed.c2_root_branch = params::C2Branch::Minus;
    else if (b == "Plus") seed.c2_root_branch = params::C2Branch::Plus;
    else fail("seed.c2_root_branch must be \"Minus\" or \"Plus\"");
  }
  if (j.contains("c2_sign")) {
    const auto s = j["c2_sign"];
    if (s == "Positive") seed.c2_sign = params::C2Sign::Positive;
    else if (s == "Negative") seed.c2_sign = params::C2Sign::Negative;
    else fail("seed.c2_sign must be \"Positive\" or \"Negative\"");
  }
}

void parse_grid(const json& j, verify::Grid& grid) {
  require_keys(j, "grid", {"nx", "ny", "y_extent", "x_samples"});
  if (j.contains("nx")) grid.nx = integer(j["nx"], "grid.nx");
  if (j.contains("ny")) grid.ny = integer(j["ny"], "grid.ny");
  if (j.contains("x_samples")) grid.x_samples = integer(j["x_samples"], "grid.x_samples");
  if (j.contains("y_extent")) grid.y_extent = number(j["y_extent"], "grid.y_extent");
  if (grid.nx < 2 || grid.ny < 2 || grid.x_samples < 2) fail("grid counts must be >= 2");
  if (!(grid.y_extent > 0.0)) fail("grid.y_extent must be positive");
}

void parse_export(const json& j, ExportConfig& ex) {
  require_keys(j, "export", {"format", "chart", "path"});
  if (j.contains("format")) {
    const auto f = j["format"];
    if (f == "csv") ex.format = ExportFormat::Csv;
    else if (f == "json") ex.format = ExportFormat::Json;
    else fail("export.format must be \"csv\" or \"json\"");
  }
  if (j.contains("chart")) {
    const auto c = j["chart"];
    if (c == "homogeneous") ex.chart = Chart::Homogeneous;
    else if (c == "affine0") ex.chart = Chart::Affine0;
    else if (c == "affine1") ex.chart = Chart::Affine1;
    else if (c == "affine2") ex.chart = Chart::Affine2;
    else fail("export.chart must be homogeneous, affine0, affine1 or affine2");
  }
  if (j.contains("path")) {
    if (!j["path"].is_string()) fail("export.path must be a string");
    ex.path = j["path"].get<std::string>();
  }
}

void parse_torus(const json& j, torus::SearchConfig& t) {
  require_keys(j, "torus", {"q_max", "tol", "closure_tol", "a1_range", "a2_range", "tau_range", "grid_counts",
                            "verify_top", "samples", "threads"});
  if (j.contains("q_max")) t.q_max = integer(j["q_max"], "torus.q_max");
  if (j.contains("tol")) t.tol = number(j["tol"], "torus.tol");
  if (j.contains("closure_tol")) t.closure_tol = number(j["closure_tol"], "torus.closure_tol");
  if (j.contains("a1_range")) t.a1 = range(j["a1_range"], "torus.a1_range");
  if (j.contains("a2_range")) t.a2 = range(j["a2_range"], "torus.a2_range");
  if (j.contains("tau_range")) t.tau = range(j["tau_range"], "torus.tau_range");
  if (j.contains("grid_counts")) {
    const auto& g = j["grid_counts"];
    if (!g.is_array() || g.size() != 3) fail("torus.grid_counts must be [n_a1, n_a2, n_tau]");
    t.n_a1 = integer(g[0], "torus.grid_counts");
    t.n_a2 = integer(g[1], "torus.grid_counts");
    t.n_tau = integer(g[2], "torus.grid_counts");
  }
  if (j.contains("verify_top")) t.verify_top = integer(j["verify_top"], "torus.verify_top");
  if (j.contains("samples")) t.samples = integer(j["samples"], "torus.samples");
  if (j.contains("threads")) t.threads = integer(j["threads"], "torus.threads");
  if (t.q_max < 1) fail("torus.q_max must be >= 1");
  if (!(t.tol > 0.0) || !(t.closure_tol > 0.0)) fail("torus tolerances must be positive");
  if (t.n_a1 < 1 || t.n_a2 < 1 || t.n_tau < 0) fail("torus.grid_counts out of range");
  if (t.samples < 1 || t.verify_top < 0 || t.threads < 1) fail("torus sampling options out of range");
}

void parse_oracle(const json& j, OracleConfig& o) {
  require_keys(j, "oracle", {"steps_per_period", "periods", "max_error", "energy_guard"});
  if (j.contains("steps_per_period")) o.options.steps_per_period = integer(j["steps_per_period"], "oracle.steps_per_period");
  if (j.contains("periods")) o.options.periods = integer(j["periods"], "oracle.periods");
  if (j.contains("max_error")) o.max_error = number(j["max_error"], "oracle.max_error");
  if (j.contains("energy_guard")) o.options.energy_guard = number(j["energy_guard"], "oracle.energy_guard");
  if (o.options.steps_per_period < 1 || o.options.periods < 1) fail("oracle step counts must be positive");
  if (!(o.max_error > 0.0) || !(o.options.energy_guard > 0.0)) fail("oracle tolerances must be positive");
}

void add_perturbation(JobConfig& config, const std::string& field, double factor) {
  if (field != "c2" && field != "a" && field != "a3" && field != "m") {
    fail("perturbation field must be one of c2, a, a3, m (got '" + field + "')");
  }
  if (!std::isfinite(factor)) fail("perturbation factor must be finite");
  config.perturb.emplace_back(field, factor);
}

}  // namespace

JobConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  require_keys(j, "config", {"seed", "grid", "tolerances", "minimal", "export", "torus", "oracle", "perturb"});

  JobConfig config;
  if (j.contains("seed")) parse_seed(j["seed"], config.seed);
  if (j.contains("grid")) parse_grid(j["grid"], config.suite.grid);
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    if (!t.is_object()) fail("tolerances must be an object");
    const auto& known = verify::default_tolerances();
    for (const auto& [name, value] : t.items()) {
      if (!known.count(name)) fail("unknown tolerance '" + name + "'");
      const double v = number(value, "tolerances." + name);
      if (!(v > 0.0)) fail("tolerance '" + name + "' must be positive");
      config.suite.tolerance_overrides[name] = v;
    }
  }
  if (j.contains("minimal")) {
    const auto& m = j["minimal"];
    require_keys(m, "minimal", {"alpha", "a1"});
    if (m.contains("alpha")) config.suite.minimal.alpha = angles(m["alpha"], "minimal.alpha");
    if (m.contains("a1")) config.suite.minimal.a1 = number(m["a1"], "minimal.a1");
  }
  if (j.contains("export")) parse_export(j["export"], config.export_);
  if (j.contains("torus")) parse_torus(j["torus"], config.torus);
  if (j.contains("oracle")) parse_oracle(j["oracle"], config.oracle);
  if (j.contains("perturb")) {
    const auto& p = j["perturb"];
    if (!p.is_object()) fail("perturb must be an object of field: factor");
    for (const auto& [field, value] : p.items()) add_perturbation(config, field, number(value, "perturb." + field));
  }

  config.torus.alpha = config.seed.alpha;
  config.torus.branch = config.seed.c2_root_branch;
  config.torus.sign = config.seed.c2_sign;
  return config;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

void apply_perturb_flag(JobConfig& config, const std::string& flag) {
  const auto eq = flag.find('=');
  if (eq == std::string::npos || eq == 0) fail("--perturb expects field=factor, got '" + flag + "'");
  const std::string field = flag.substr(0, eq);
  double factor = 0.0;
  try {
    std::size_t used = 0;
    factor = std::stod(flag.substr(eq + 1), &used);
    if (used != flag.size() - eq - 1) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    fail("--perturb factor is not a number in '" + flag + "'");
  }
  // Last wins: a flag replaces any earlier perturbation of the same field.
  std::erase_if(config.perturb, [&](const auto& p) { return p.first == field; });
  add_perturbation(config, field, factor);
}

std::string to_string(Chart chart) {
  switch (chart) {
    case Chart::Homogeneous: return "homogeneous";
    case Chart::Affine0: return "affine0";
    case Chart::Affine1: return "affine1";
    case Chart::Affine2: return "affine2";
  }
  return "homogeneous";
}

}  // namespace hamlag::cli
