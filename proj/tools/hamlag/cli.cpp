#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "hamlag/immersion.hpp"
#include "hamlag/oracle.hpp"
#include "hamlag/profile.hpp"
#include "hamlag/torus.hpp"
#include "hamlag/verify.hpp"
#include "serialize.hpp"

namespace hamlag::cli {

namespace {

struct Invocation {
  std::string command;
  std::string config_path;
  std::vector<std::string> perturb;
  std::string out_path;
};

params::ResolvedConstants resolve_with_perturbations(const JobConfig& config) {
  params::ResolvedConstants k = params::resolve(config.seed);
  for (const auto& [field, factor] : config.perturb) k = params::perturbed(k, field, factor);
  return k;
}

Json perturbations_json(const JobConfig& config) {
  Json j = Json::object();
  for (const auto& [field, factor] : config.perturb) j[field] = factor;
  return j;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_atomically(path, text);
  }
}

int cmd_resolve(const JobConfig& config, const Invocation& inv, std::ostream& out) {
  const auto k = resolve_with_perturbations(config);
  const auto v = params::vieta_constants(config.seed.alpha);
  const auto feas = params::feasibility(config.seed.a1, config.seed.a2, v);
  Json j = to_json(k);
  Json f;
  f["feasible"] = feas.feasible;
  f["P"] = feas.P;
  f["discriminant"] = feas.discriminant;
  j["feasibility"] = f;
  j["c2_squared_roots"] = params::solve_c2(config.seed.a1, config.seed.a2, v);
  j["perturbations"] = perturbations_json(config);
  emit(dump(j), inv.out_path, out);
  return kSuccess;
}

int cmd_verify(const JobConfig& config, const Invocation& inv, std::ostream& out) {
  const auto k = resolve_with_perturbations(config);
  const auto report = verify::run_suite(k, config.suite);
  Json j;
  j["constants"] = to_json(k);
  j["perturbations"] = perturbations_json(config);
  const Json report_json = to_json(report);
  for (const auto& [key, value] : report_json.items()) j[key] = value;
  emit(dump(j), inv.out_path, out);
  return report.all_pass() ? kSuccess : kVerificationFailure;
}

int cmd_sample(const JobConfig& config, const Invocation& inv, std::ostream& out, std::ostream& err) {
  const auto k = resolve_with_perturbations(config);
  const profile::RadialProfile p(k);
  const auto& alpha = p.alpha();
  const auto& grid = config.suite.grid;

  double y_extent = grid.y_extent;
  bool integer_angles = std::all_of(alpha.begin(), alpha.end(), [](double a) { return a == std::nearbyint(a); });
  if (integer_angles) y_extent = torus::y_period(alpha);

  const Chart chart = config.export_.chart;
  std::vector<std::string> columns = {"x", "y"};
  if (chart == Chart::Homogeneous) {
    for (const char* c : {"z1_re", "z1_im", "z2_re", "z2_im", "z3_re", "z3_im"}) columns.emplace_back(c);
  } else {
    for (const char* c : {"w1_re", "w1_im", "w2_re", "w2_im"}) columns.emplace_back(c);
  }

  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(grid.nx * grid.ny));
  int flagged = 0;
  for (int ix = 0; ix < grid.nx; ++ix) {
    const double x = p.period() * ix / (grid.nx - 1);
    const auto G = p.phases(x);
    std::array<double, 3> F{};
    for (int i = 0; i < 3; ++i) F[static_cast<std::size_t>(i)] = p.amplitude(i, x);
    for (int iy = 0; iy < grid.ny; ++iy) {
      const double y = y_extent * iy / (grid.ny - 1);
      immersion::Vec3c r;
      for (Eigen::Index j = 0; j < 3; ++j) {
        const auto i = static_cast<std::size_t>(j);
        r(j) = F[i] * std::polar(1.0, G[i] + alpha[i] * y);
      }
      const auto z = immersion::project(r).homogeneous();
      std::vector<double> row = {x, y};
      if (chart == Chart::Homogeneous) {
        for (Eigen::Index j = 0; j < 3; ++j) {
          row.push_back(z(j).real());
          row.push_back(z(j).imag());
        }
      } else {
        const Eigen::Index kchart = chart == Chart::Affine0 ? 0 : chart == Chart::Affine1 ? 1 : 2;
        const bool bad = std::abs(z(kchart)) < 1e-9;
        flagged += bad ? 1 : 0;
        for (Eigen::Index j = 0; j < 3; ++j) {
          if (j == kchart) continue;
          const immersion::Complex w = bad ? immersion::Complex(std::nan(""), std::nan("")) : z(j) / z(kchart);
          row.push_back(w.real());
          row.push_back(w.imag());
        }
      }
      rows.push_back(std::move(row));
    }
  }
  if (flagged > 0) err << "warning: " << flagged << " rows flagged (chart denominator below 1e-9)\n";

  std::string text;
  if (config.export_.format == ExportFormat::Csv) {
    std::ostringstream os;
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
      os << "\n";
    }
    text = os.str();
  } else {
    Json j;
    j["chart"] = to_string(chart);
    j["constants"] = to_json(k);
    j["columns"] = columns;
    Json jrows = Json::array();
    for (const auto& row : rows) {
      Json jr = Json::array();
      for (double v : row) jr.push_back(std::isfinite(v) ? Json(v) : Json(nullptr));
      jrows.push_back(std::move(jr));
    }
    j["rows"] = std::move(jrows);
    text = dump(j);
  }
  emit(text, inv.out_path.empty() ? config.export_.path : inv.out_path, out);
  return kSuccess;
}

int cmd_torus_search(const JobConfig& config, const Invocation& inv, std::ostream& out) {
  if (!config.perturb.empty()) {
    throw Error(ErrorKind::ConfigError, "torus-search does not accept perturbations");
  }
  const auto certs = torus::search(config.torus);
  emit(dump(to_json(certs)), inv.out_path, out);
  return kSuccess;
}

int cmd_oracle(const JobConfig& config, const Invocation& inv, std::ostream& out) {
  const auto k = resolve_with_perturbations(config);
  const profile::RadialProfile p(k);
  const auto study = oracle::convergence_study(p, config.oracle.options);

  oracle::OracleOptions shifted_options = config.oracle.options;
  shifted_options.x0 = 0.5 * p.period();
  const auto shifted = oracle::integrate_and_compare(p, shifted_options, k.seed.a2, 0.0);

  const bool pass = study.coarse.max_error <= config.oracle.max_error && shifted.max_error <= config.oracle.max_error;
  Json j;
  j["constants"] = to_json(k);
  j["perturbations"] = perturbations_json(config);
  j["periods"] = config.oracle.options.periods;
  j["steps_per_period"] = config.oracle.options.steps_per_period;
  j["result"] = to_json(study.coarse);
  j["half_step"] = to_json(study.fine);
  j["observed_order"] = study.observed_order;
  j["shifted_start"] = to_json(shifted);
  j["max_error_tolerance"] = config.oracle.max_error;
  j["pass"] = pass;
  emit(dump(j), inv.out_path, out);
  return pass ? kSuccess : kVerificationFailure;
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ConfigError:
    case ErrorKind::ModeError:
      return kConfigError;
    case ErrorKind::DomainError:
    case ErrorKind::DegenerateAngles:
    case ErrorKind::Infeasible:
    case ErrorKind::DegenerateProfile:
    case ErrorKind::NonrealProfile:
    case ErrorKind::SingularPhase:
    case ErrorKind::InconsistentBranch:
    case ErrorKind::RootFindFailure:
      return kParameterError;
    case ErrorKind::QuadratureError:
    case ErrorKind::FrameError:
    case ErrorKind::OracleInstability:
      return kVerificationFailure;
    case ErrorKind::EmptySearch:
    case ErrorKind::NoClosure:
      return kEmptySearch;
  }
  return kConfigError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hamiltonian-minimal Lagrangian tori in CP^2: construction and verification"};
  app.require_subcommand(1);
  Invocation inv;

  const auto add = [&](const std::string& name, const std::string& description) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", inv.config_path, "JSON job configuration")->required();
    sub->add_option("--perturb", inv.perturb, "Scale a resolved constant: field=factor (c2, a, a3, m)");
    sub->add_option("--out", inv.out_path, "Write output to this file instead of stdout");
    sub->callback([&inv, name] { inv.command = name; });
  };
  add("resolve", "Resolve all constants from the seed");
  add("verify", "Run the residual suite; exit 0 iff every check passes");
  add("sample", "Export a point cloud of the immersion");
  add("torus-search", "Search parameter space for closing tori");
  add("oracle", "Compare the closed-form profile with RK4 integration");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    JobConfig config = load_config(inv.config_path);
    for (const auto& flag : inv.perturb) apply_perturb_flag(config, flag);

    if (inv.command == "resolve") return cmd_resolve(config, inv, out);
    if (inv.command == "verify") return cmd_verify(config, inv, out);
    if (inv.command == "sample") return cmd_sample(config, inv, out, err);
    if (inv.command == "torus-search") return cmd_torus_search(config, inv, out);
    if (inv.command == "oracle") return cmd_oracle(config, inv, out);
    err << "ConfigError: unknown command\n";
    return kConfigError;
  } catch (const Error& e) {
    err << e.name() << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "ConfigError: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace hamlag::cli
