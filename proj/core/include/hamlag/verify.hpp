#pragma once

// Residual suite: every identity of the construction evaluated on grids
// against the constructed immersion. Each check produces one named entry;
// run_suite() assembles all of them in a fixed order.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hamlag/params.hpp"
#include "hamlag/profile.hpp"

namespace hamlag::verify {

struct ResidualEntry {
  std::string name;
  double max_abs_residual = 0.0;
  std::string grid;
  double tolerance = 0.0;
  bool pass = false;
  /// Reported but excluded from the overall verdict.
  bool informational = false;
};

struct ResidualReport {
  std::vector<ResidualEntry> entries;

  /// True iff every non-informational entry passes.
  bool all_pass() const;
  /// nullptr if absent.
  const ResidualEntry* find(std::string_view name) const;
};

/// nx x ny points over [0, T] x [0, y_extent], endpoints included, plus
/// x_samples points over [0, T] for x-only checks.
struct Grid {
  int nx = 64;
  int ny = 64;
  double y_extent = 1.0;
  int x_samples = 1024;
};

/// Zero-sum triple and fixed a1 for the minimal-torus specialization.
struct MinimalOptions {
  params::Angles alpha{1.0, 2.0, -3.0};
  double a1 = 5.0;
};

struct SuiteOptions {
  Grid grid;
  std::map<std::string, double> tolerance_overrides;
  MinimalOptions minimal;
  double fd_step = 1e-5;
};

/// Default tolerance per check name.
const std::map<std::string, double>& default_tolerances();

/// Tolerance for `name` after overrides. Throws DomainError for unknown names
/// or nonpositive overrides.
double tolerance(const SuiteOptions& options, const std::string& name);

std::vector<ResidualEntry> check_algebraic(const params::ResolvedConstants& k, const SuiteOptions& options);
std::vector<ResidualEntry> check_radial(const profile::RadialProfile& p, const SuiteOptions& options);
std::vector<ResidualEntry> check_frame_and_metric(const profile::RadialProfile& p, const SuiteOptions& options);
ResidualEntry check_zero_curvature(const profile::RadialProfile& p, const SuiteOptions& options);
/// Entries for the three equations, in order (3), (4), (5).
std::vector<ResidualEntry> check_compatibility(const profile::RadialProfile& p, const SuiteOptions& options);
/// Entries for the first-order component equation and the two second-order
/// corroborating equations.
std::vector<ResidualEntry> check_component_ode(const profile::RadialProfile& p, const SuiteOptions& options);

struct MinimalSolution {
  params::ResolvedConstants constants;
  /// (a1 + a2)(c1^2 + c2^2) - a1^2 a2^2 at the root.
  double constraint_residual = 0.0;
};

/// Root-find a2 in (0, a1) so that (a1 + a2)(c1^2 + c2^2) = a1^2 a2^2 on some
/// branch, scanning for a sign change and bisecting. Throws RootFindFailure.
MinimalSolution find_minimal_a2(const params::Angles& alpha, double a1);

/// Entries "minimal_specialization" (|a|, |b|) and "minimal_angle_constancy".
std::vector<ResidualEntry> check_minimal_specialization(const SuiteOptions& options);

ResidualReport run_suite(const params::ResolvedConstants& k, const SuiteOptions& options = {});

}  // namespace hamlag::verify
