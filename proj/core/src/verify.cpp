#include "hamlag/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "hamlag/error.hpp"
#include "hamlag/immersion.hpp"

namespace hamlag::verify {

namespace {

using immersion::Complex;
using immersion::Mat3c;
using immersion::Vec3c;
using profile::RadialProfile;
using profile::RadialSample;

constexpr Complex kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) { return theta - kTwoPi * std::nearbyint(theta / kTwoPi); }

double max_abs(const Mat3c& m) { return m.cwiseAbs().maxCoeff(); }

std::string grid_label(const Grid& g, double T) {
  std::ostringstream os;
  os.precision(6);
  os << g.nx << "x" << g.ny << " over [0," << T << "]x[0," << g.y_extent << "]";
  return os.str();
}

std::string line_label(int n, double lo, double hi) {
  std::ostringstream os;
  os.precision(6);
  os << n << " x-samples over [" << lo << "," << hi << "]";
  return os.str();
}

ResidualEntry make_entry(const SuiteOptions& options, const std::string& name, double residual,
                         std::string grid, bool informational = false, double scale = 1.0) {
  ResidualEntry e;
  e.name = name;
  e.max_abs_residual = residual;
  e.grid = std::move(grid);
  e.tolerance = tolerance(options, name) * scale;
  // NaN residuals fail.
  e.pass = residual <= e.tolerance;
  e.informational = informational;
  return e;
}

double node(int i, int n, double extent) { return n > 1 ? extent * i / (n - 1) : 0.0; }

Mat3c frame_at(const RadialSample& s, const params::Angles& alpha, double y) {
  const auto l = immersion::lift(s, alpha, y);
  const double beta = -std::arg(immersion::angle_determinant(l, s.v));
  Mat3c R;
  const double scale = std::exp(-s.v);
  R.row(0) = std::polar(1.0, beta) * l.r.transpose();
  R.row(1) = scale * l.r_x.transpose();
  R.row(2) = scale * l.r_y.transpose();
  return R;
}

}  // namespace

bool ResidualReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const ResidualEntry& e) { return e.informational || e.pass; });
}

const ResidualEntry* ResidualReport::find(std::string_view name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> table = {
      {"algebraic_cubic_roots", 1e-10},
      {"algebraic_coefficient_match", 1e-9},
      {"radial_cubic_ode", 1e-9},
      {"metric_ode_squared_reading", 1e-9},
      {"metric_ode_literal_reading", 1e-9},
      {"amplitude_partition", 1e-12},
      {"profile_periodicity", 1e-10},
      {"phase_additivity", 2e-11},
      {"phase_rule_agreement", 1e-10},
      {"lift_unit_norm", 1e-12},
      {"horizontality", 1e-9},
      {"conformality", 1e-9},
      {"connection_f_g", 1e-7},
      {"su3_unitarity", 1e-10},
      {"su3_determinant", 1e-10},
      {"su3_algebra", 1e-12},
      {"structure_equation_x", 1e-6},
      {"structure_equation_y", 1e-6},
      {"lagrangian_angle_linearity", 1e-8},
      {"zero_curvature", 1e-8},
      {"compatibility_mixed_derivative", 1e-12},
      {"compatibility_codazzi", 1e-9},
      {"compatibility_gauss", 1e-8},
      {"component_ode_first_order", 1e-7},
      {"component_ode_second_order", 1e-6},
      {"component_ode_reduced", 1e-6},
      {"minimal_specialization", 1e-9},
      {"minimal_angle_constancy", 1e-8},
  };
  return table;
}

double tolerance(const SuiteOptions& options, const std::string& name) {
  const auto& defaults = default_tolerances();
  const auto it = defaults.find(name);
  if (it == defaults.end()) throw Error(ErrorKind::DomainError, "unknown check '" + name + "'");
  const auto ov = options.tolerance_overrides.find(name);
  if (ov == options.tolerance_overrides.end()) return it->second;
  if (!(ov->second > 0.0)) throw Error(ErrorKind::DomainError, "tolerance for '" + name + "' must be positive");
  return ov->second;
}

std::vector<ResidualEntry> check_algebraic(const params::ResolvedConstants& k, const SuiteOptions& options) {
  const auto cubic = params::cubic_root_residuals(k);
  const auto coeff = params::coefficient_mismatch(k);
  return {
      make_entry(options, "algebraic_cubic_roots", *std::max_element(cubic.begin(), cubic.end()),
                 "3 angles (relative)"),
      make_entry(options, "algebraic_coefficient_match", *std::max_element(coeff.begin(), coeff.end()),
                 "3 coefficients (relative)"),
  };
}

std::vector<ResidualEntry> check_radial(const RadialProfile& p, const SuiteOptions& options) {
  const auto& k = p.constants();
  const double a1 = k.seed.a1;
  const double a2 = k.seed.a2;
  const double T = p.period();
  std::vector<ResidualEntry> out;

  // Cubic ODE in h over two periods.
  constexpr int kOdePoints = 1000;
  double cubic_ode = 0.0;
  double metric_squared = 0.0;
  double metric_literal = 0.0;
  const double sum_sq = k.c1 * k.c1 + k.c2 * k.c2;
  for (int i = 0; i < kOdePoints; ++i) {
    const double x = node(i, kOdePoints, 2.0 * T);
    const double h = p.h(x);
    const double hp = p.h_prime(x);
    cubic_ode = std::max(cubic_ode, std::abs(hp * hp + 4.0 * (h - a1) * (h - a2) * (h + k.a3)));
    const double vp = hp / (2.0 * h);
    const double common = -sum_sq / (h * h) + (k.a * k.c2 - k.b * k.c1) / h - h - k.c;
    metric_squared = std::max(metric_squared, std::abs(vp * vp - (common - 0.25 * k.a * k.a)));
    metric_literal = std::max(metric_literal, std::abs(vp * vp - (common - 0.25 * k.a)));
  }
  const std::string ode_grid = line_label(kOdePoints, 0.0, 2.0 * T);
  out.push_back(make_entry(options, "radial_cubic_ode", cubic_ode, ode_grid, false, std::max(1.0, a1 * a1 * a1)));
  out.push_back(make_entry(options, "metric_ode_squared_reading", metric_squared, ode_grid, true));
  out.push_back(make_entry(options, "metric_ode_literal_reading", metric_literal, ode_grid, true));

  const int n = options.grid.x_samples;
  double partition = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = node(i, n, T);
    double sum = 0.0;
    for (int j = 0; j < 3; ++j) sum += p.amplitude_squared(j, x);
    partition = std::max(partition, std::abs(sum - 1.0));
  }
  out.push_back(make_entry(options, "amplitude_partition", partition, line_label(n, 0.0, T)));

  constexpr int kPeriodicPoints = 100;
  double periodic = 0.0;
  for (int i = 0; i < kPeriodicPoints; ++i) {
    const double x = 3.0 * T * i / kPeriodicPoints - T;
    periodic = std::max(periodic, std::abs(p.h(x + T) - p.h(x)));
  }
  out.push_back(make_entry(options, "profile_periodicity", periodic, line_label(kPeriodicPoints, -T, 2.0 * T)));

  constexpr int kPhasePoints = 12;
  double additivity = 0.0;
  double rules = 0.0;
  const auto& lambda = p.phase_advance();
  const auto lambda_gl = p.phases_gauss_legendre(T);
  for (std::size_t j = 0; j < 3; ++j) rules = std::max(rules, std::abs(lambda[j] - lambda_gl[j]));
  for (int i = 0; i < kPhasePoints; ++i) {
    const double x = 2.0 * T * (i + 0.5) / kPhasePoints - 0.5 * T;
    const auto g0 = p.phases(x);
    const auto g1 = p.phases(x + T);
    const auto gl = p.phases_gauss_legendre(x);
    for (std::size_t j = 0; j < 3; ++j) {
      additivity = std::max(additivity, std::abs(g1[j] - g0[j] - lambda[j]));
      rules = std::max(rules, std::abs(g0[j] - gl[j]));
    }
  }
  out.push_back(make_entry(options, "phase_additivity", additivity,
                           line_label(kPhasePoints, -0.5 * T, 1.5 * T)));
  out.push_back(make_entry(options, "phase_rule_agreement", rules,
                           line_label(kPhasePoints + 1, -0.5 * T, 1.5 * T) + ", GK15 vs GL20x40"));
  return out;
}

std::vector<ResidualEntry> check_frame_and_metric(const RadialProfile& p, const SuiteOptions& options) {
  const auto& k = p.constants();
  const auto& alpha = p.alpha();
  const Grid& g = options.grid;
  const double T = p.period();
  const double eps = options.fd_step;

  double unit_norm = 0.0;
  double horizontal = 0.0;
  double conformal = 0.0;
  double connection = 0.0;
  double unitarity = 0.0;
  double determinant = 0.0;
  double algebra = 0.0;
  double structure_x = 0.0;
  double structure_y = 0.0;
  double angle = 0.0;
  std::optional<double> beta0;

  const double tol_x = tolerance(options, "structure_equation_x");
  const double tol_y = tolerance(options, "structure_equation_y");

  for (int ix = 0; ix < g.nx; ++ix) {
    const double x = node(ix, g.nx, T);
    const RadialSample s = p.sample(x);
    const RadialSample sp = p.sample(x + eps);
    const RadialSample sm = p.sample(x - eps);
    std::optional<RadialSample> sp2;
    std::optional<RadialSample> sm2;
    const double ev = std::exp(s.v);

    for (int iy = 0; iy < g.ny; ++iy) {
      const double y = node(iy, g.ny, g.y_extent);
      const auto l = immersion::lift(s, alpha, y);
      const auto fs = immersion::assemble_frame(s, l, k);

      unit_norm = std::max(unit_norm, std::abs(l.r.norm() - 1.0));
      horizontal = std::max({horizontal, std::abs(immersion::hermitian(l.r, l.r_x)),
                             std::abs(immersion::hermitian(l.r, l.r_y))});
      conformal = std::max({conformal, std::abs(immersion::hermitian(l.r_x, l.r_y)),
                            std::abs(l.r_x.norm() - ev), std::abs(l.r_y.norm() - ev)});

      // if = <d/dx(e^{-v} r_y), e^{-v} r_y>, ig = <d/dy(e^{-v} r_x), e^{-v} r_x>.
      Vec3c r_xy;
      for (Eigen::Index j = 0; j < 3; ++j) r_xy(j) = kI * alpha[static_cast<std::size_t>(j)] * l.r_x(j);
      const Complex if_num = immersion::hermitian(r_xy - s.v_x * l.r_y, l.r_y) / s.h;
      const Complex ig_num = immersion::hermitian(r_xy, l.r_x) / s.h;
      connection = std::max({connection, std::abs(if_num - kI * fs.f), std::abs(ig_num - kI * fs.g)});

      unitarity = std::max(unitarity, immersion::unitarity_defect(fs.R));
      determinant = std::max(determinant, std::abs(fs.R.determinant() - 1.0));
      algebra = std::max({algebra, max_abs(fs.A + fs.A.adjoint()), max_abs(fs.B + fs.B.adjoint()),
                          std::abs(fs.A.trace()), std::abs(fs.B.trace())});

      // Structure equations by centred differences, Richardson on failure.
      Mat3c Rx = (frame_at(sp, alpha, y) - frame_at(sm, alpha, y)) / (2.0 * eps);
      double rx = max_abs(Rx - fs.A * fs.R);
      if (rx > tol_x) {
        if (!sp2) {
          sp2 = p.sample(x + 0.5 * eps);
          sm2 = p.sample(x - 0.5 * eps);
        }
        const Mat3c half = (frame_at(*sp2, alpha, y) - frame_at(*sm2, alpha, y)) / eps;
        rx = max_abs((4.0 * half - Rx) / 3.0 - fs.A * fs.R);
      }
      structure_x = std::max(structure_x, rx);

      Mat3c Ry = (frame_at(s, alpha, y + eps) - frame_at(s, alpha, y - eps)) / (2.0 * eps);
      double ry = max_abs(Ry - fs.B * fs.R);
      if (ry > tol_y) {
        const Mat3c half = (frame_at(s, alpha, y + 0.5 * eps) - frame_at(s, alpha, y - 0.5 * eps)) / eps;
        ry = max_abs((4.0 * half - Ry) / 3.0 - fs.B * fs.R);
      }
      structure_y = std::max(structure_y, ry);

      if (!beta0) beta0 = fs.beta - (k.a * x + k.b * y);
      angle = std::max(angle, std::abs(wrap_angle(fs.beta - *beta0 - (k.a * x + k.b * y))));
    }
  }

  const std::string label = grid_label(g, T);
  return {
      make_entry(options, "lift_unit_norm", unit_norm, label),
      make_entry(options, "horizontality", horizontal, label),
      make_entry(options, "conformality", conformal, label),
      make_entry(options, "connection_f_g", connection, label),
      make_entry(options, "su3_unitarity", unitarity, label),
      make_entry(options, "su3_determinant", determinant, label),
      make_entry(options, "su3_algebra", algebra, label),
      make_entry(options, "structure_equation_x", structure_x, label + ", centred FD h=" + std::to_string(eps)),
      make_entry(options, "structure_equation_y", structure_y, label + ", centred FD h=" + std::to_string(eps)),
      make_entry(options, "lagrangian_angle_linearity", angle, label),
  };
}

ResidualEntry check_zero_curvature(const RadialProfile& p, const SuiteOptions& options) {
  const auto& k = p.constants();
  const Grid& g = options.grid;
  double worst = 0.0;
  for (int ix = 0; ix < g.nx; ++ix) {
    const RadialSample s = p.sample(node(ix, g.nx, p.period()));
    for (int iy = 0; iy < g.ny; ++iy) {
      const double y = node(iy, g.ny, g.y_extent);
      const auto fs = immersion::assemble_frame(s, immersion::lift(s, p.alpha(), y), k);
      const auto d = immersion::connection_derivatives(s, fs, k);
      worst = std::max(worst, max_abs(d.A_y - d.B_x + fs.A * fs.B - fs.B * fs.A));
    }
  }
  return make_entry(options, "zero_curvature", worst, grid_label(g, p.period()) + ", analytic derivatives");
}

std::vector<ResidualEntry> check_compatibility(const RadialProfile& p, const SuiteOptions& options) {
  const auto& k = p.constants();
  const int n = options.grid.x_samples;
  const double T = p.period();
  const double beta_x = k.a;
  const double beta_y = k.b;
  constexpr double beta_xy = 0.0;
  constexpr double v_y = 0.0;
  double mixed = 0.0;
  double codazzi = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = node(i, n, T);
    const double h = p.h(x);
    const double hp = p.h_prime(x);
    const double hpp = p.h_second(x);
    const double v_x = hp / (2.0 * h);
    const double v_xx = (hpp * h - hp * hp) / (2.0 * h * h);
    const double f = k.c2 / h - 0.5 * k.a;
    const double g = k.c1 / h;
    const double f_x = -k.c2 * hp / (h * h);
    const double g_x = -k.c1 * hp / (h * h);
    const double U = f * h;
    const double V = g * h;
    const double U_x = f_x * h + f * hp;
    const double V_x = g_x * h + g * hp;
    constexpr double U_y = 0.0;
    constexpr double V_y = 0.0;
    mixed = std::max(mixed, std::abs(U_y + V_x + h * beta_xy));
    codazzi = std::max(codazzi, std::abs(V_y + v_y * h * beta_y - U_x - v_x * h * beta_x));
    gauss = std::max(gauss, std::abs(v_xx + h - 2.0 * (U * U + V * V) / (h * h) - (beta_x * U + beta_y * V) / h));
  }
  const std::string label = line_label(n, 0.0, T);
  return {
      make_entry(options, "compatibility_mixed_derivative", mixed, label),
      make_entry(options, "compatibility_codazzi", codazzi, label),
      make_entry(options, "compatibility_gauss", gauss, label),
  };
}

std::vector<ResidualEntry> check_component_ode(const RadialProfile& p, const SuiteOptions& options) {
  const auto& k = p.constants();
  const auto& alpha = p.alpha();
  const int n = options.grid.x_samples;
  const double T = p.period();
  double second_order = 0.0;
  double first_order = 0.0;
  double reduced = 0.0;
  for (int ix = 0; ix < n; ++ix) {
    const RadialSample s = p.sample(node(ix, n, T));
    const double h = s.h;
    for (std::size_t i = 0; i < 3; ++i) {
      const double al = alpha[i];
      const Complex phase = std::polar(1.0, s.G[i]);
      const Complex C = s.F[i] * phase;
      const Complex dC = Complex(s.F_x[i], s.G_x[i] * s.F[i]) * phase;
      const Complex ddC = Complex(s.F_xx[i] - s.G_x[i] * s.G_x[i] * s.F[i],
                                  2.0 * s.G_x[i] * s.F_x[i] + s.G_xx[i] * s.F[i]) *
                          phase;
      const Complex r8 = 2.0 * kI * (k.c1 - h * al) * dC + al * C * ((k.a + 2.0 * kI * s.v_x) * h - 2.0 * k.c2);
      const Complex r7 = 2.0 * (h * h + k.c1 * al) * C +
                         kI * dC * (2.0 * k.c2 + k.a * h + 2.0 * kI * h * s.v_x) + 2.0 * h * ddC;
      const Complex r9 = 2.0 * (h * (h - k.b * al - al * al) - k.c1 * al) * C +
                         dC * ((kI * k.a + 2.0 * s.v_x) * h - 2.0 * kI * k.c2);
      second_order = std::max(second_order, std::abs(r7));
      first_order = std::max(first_order, std::abs(r8));
      reduced = std::max(reduced, std::abs(r9));
    }
  }
  const std::string label = line_label(n, 0.0, T) + ", 3 components";
  return {
      make_entry(options, "component_ode_first_order", first_order, label),
      make_entry(options, "component_ode_second_order", second_order, label),
      make_entry(options, "component_ode_reduced", reduced, label),
  };
}

MinimalSolution find_minimal_a2(const params::Angles& alpha, double a1) {
  const params::VietaConstants v = params::vieta_constants(alpha);
  if (!(a1 > 0.0)) throw Error(ErrorKind::RootFindFailure, "a1 must be positive");

  constexpr int kScan = 400;
  for (auto branch : {params::C2Branch::Minus, params::C2Branch::Plus}) {
    const auto constraint = [&](double a2) -> std::optional<double> {
      try {
        const auto roots = params::solve_c2(a1, a2, v);
        if (!params::feasibility(a1, a2, v).feasible) return std::nullopt;
        const double t = branch == params::C2Branch::Minus ? roots.front() : roots.back();
        return (a1 + a2) * (v.c1 * v.c1 + t) - a1 * a1 * a2 * a2;
      } catch (const Error&) {
        return std::nullopt;
      }
    };

    std::optional<double> prev_value;
    double prev_a2 = 0.0;
    for (int i = 1; i < kScan; ++i) {
      const double a2 = a1 * i / kScan;
      const auto value = constraint(a2);
      if (value && prev_value && ((*value <= 0.0) != (*prev_value <= 0.0))) {
        double lo = prev_a2;
        double hi = a2;
        double f_lo = *prev_value;
        for (int it = 0; it < 200 && hi - lo > 4e-16 * a1; ++it) {
          const double mid = 0.5 * (lo + hi);
          const auto f_mid = constraint(mid);
          if (!f_mid) break;
          if ((*f_mid <= 0.0) == (f_lo <= 0.0)) {
            lo = mid;
            f_lo = *f_mid;
          } else {
            hi = mid;
          }
        }
        const double root = 0.5 * (lo + hi);
        try {
          params::SeedParameters seed{alpha, a1, root, branch, params::C2Sign::Positive};
          MinimalSolution sol{params::resolve(seed), 0.0};
          sol.constraint_residual = constraint(root).value_or(std::nan(""));
          return sol;
        } catch (const Error&) {
          // Root outside the valid region; keep scanning.
        }
      }
      prev_value = value;
      prev_a2 = a2;
    }
  }
  throw Error(ErrorKind::RootFindFailure, "no a2 in (0, a1) satisfies the minimal-torus constraint");
}

std::vector<ResidualEntry> check_minimal_specialization(const SuiteOptions& options) {
  const auto& alpha = options.minimal.alpha;
  const double sum = alpha[0] + alpha[1] + alpha[2];
  if (std::abs(sum) > 1e-12 * std::max({1.0, std::abs(alpha[0]), std::abs(alpha[1]), std::abs(alpha[2])})) {
    throw Error(ErrorKind::DomainError, "minimal specialization needs a zero-sum angle triple");
  }
  const MinimalSolution sol = find_minimal_a2(alpha, options.minimal.a1);
  const auto& k = sol.constants;
  const double ab = std::max(std::abs(k.a), std::abs(k.b));

  const RadialProfile p(k);
  constexpr int kSide = 16;
  double spread = 0.0;
  std::optional<double> beta0;
  for (int ix = 0; ix < kSide; ++ix) {
    const RadialSample s = p.sample(node(ix, kSide, p.period()));
    for (int iy = 0; iy < kSide; ++iy) {
      const auto l = immersion::lift(s, alpha, node(iy, kSide, options.grid.y_extent));
      const double beta = -std::arg(immersion::angle_determinant(l, s.v));
      if (!beta0) beta0 = beta;
      spread = std::max(spread, std::abs(wrap_angle(beta - *beta0)));
    }
  }
  std::ostringstream os;
  os.precision(17);
  os << "alpha=(" << alpha[0] << "," << alpha[1] << "," << alpha[2] << "), a1=" << options.minimal.a1
     << ", root a2=" << k.seed.a2 << " (" << params::to_string(k.seed.c2_root_branch) << ")";
  return {
      make_entry(options, "minimal_specialization", ab, os.str()),
      make_entry(options, "minimal_angle_constancy", spread,
                 std::to_string(kSide) + "x" + std::to_string(kSide) + " grid, " + os.str()),
  };
}

ResidualReport run_suite(const params::ResolvedConstants& k, const SuiteOptions& options) {
  if (options.grid.nx < 2 || options.grid.ny < 2 || options.grid.x_samples < 2) {
    throw Error(ErrorKind::DomainError, "grid counts must be >= 2");
  }
  const RadialProfile p(k);
  ResidualReport report;
  auto append = [&report](std::vector<ResidualEntry> entries) {
    for (auto& e : entries) report.entries.push_back(std::move(e));
  };
  append(check_algebraic(k, options));
  append(check_radial(p, options));
  append(check_frame_and_metric(p, options));
  report.entries.push_back(check_zero_curvature(p, options));
  append(check_compatibility(p, options));
  append(check_component_ode(p, options));
  append(check_minimal_specialization(options));
  return report;
}

}  // namespace hamlag::verify
