#pragma once

// Independent check of the closed-form profile: integrate
//   h'' = -6 h^2 - (4c + a^2) h - 2 (b c1 - a c2)
// with classical RK4 and compare against h(x) from the sn formula.

#include "hamlag/profile.hpp"

namespace hamlag::oracle {

struct OracleOptions {
  int steps_per_period = 2000;
  int periods = 5;
  /// Start of integration; initial data (h, h') are taken from the closed form
  /// at this abscissa unless overridden.
  double x0 = 0.0;
  double energy_guard = 1e-6;
};

struct OracleResult {
  double step = 0.0;
  int steps = 0;
  double x0 = 0.0;
  double max_error = 0.0;
  /// max |E(x) - E(x0)| with E = h'^2 + 4h^3 + (4c+a^2)h^2 + 4(bc1-ac2)h + 4(c1^2+c2^2).
  double max_energy_drift = 0.0;
};

/// Throws OracleInstability if the first integral drifts above the guard.
OracleResult integrate_and_compare(const profile::RadialProfile& p, const OracleOptions& options);

/// As above with explicit initial data (h, h') at options.x0.
OracleResult integrate_and_compare(const profile::RadialProfile& p, const OracleOptions& options, double h0,
                                   double hp0);

struct ConvergenceStudy {
  OracleResult coarse;
  OracleResult fine;
  /// log2(coarse.max_error / fine.max_error).
  double observed_order = 0.0;
};

/// Runs at `steps_per_period` and twice that.
ConvergenceStudy convergence_study(const profile::RadialProfile& p, OracleOptions options);

/// Right-hand side of the second-order equation.
double second_derivative(const params::ResolvedConstants& k, double h);

}  // namespace hamlag::oracle
