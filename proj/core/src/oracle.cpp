#include "hamlag/oracle.hpp"

#include <cmath>
#include <string>

#include "hamlag/error.hpp"

namespace hamlag::oracle {

namespace {

double energy(const params::ResolvedConstants& k, double h, double hp) {
  const double quad = 4.0 * k.c + k.a * k.a;
  const double lin = 4.0 * (k.b * k.c1 - k.a * k.c2);
  const double cst = 4.0 * (k.c1 * k.c1 + k.c2 * k.c2);
  return hp * hp + ((4.0 * h + quad) * h + lin) * h + cst;
}

}  // namespace

double second_derivative(const params::ResolvedConstants& k, double h) {
  return -6.0 * h * h - (4.0 * k.c + k.a * k.a) * h - 2.0 * (k.b * k.c1 - k.a * k.c2);
}

OracleResult integrate_and_compare(const profile::RadialProfile& p, const OracleOptions& options) {
  return integrate_and_compare(p, options, p.h(options.x0), p.h_prime(options.x0));
}

OracleResult integrate_and_compare(const profile::RadialProfile& p, const OracleOptions& options, double h0,
                                   double hp0) {
  if (options.steps_per_period < 1 || options.periods < 1) {
    throw Error(ErrorKind::DomainError, "oracle needs positive step and period counts");
  }
  const auto& k = p.constants();
  OracleResult out;
  out.x0 = options.x0;
  out.step = p.period() / options.steps_per_period;
  out.steps = options.steps_per_period * options.periods;
  const double dx = out.step;

  double h = h0;
  double hp = hp0;
  const double e0 = energy(k, h, hp);
  const double escale = std::max(1.0, std::abs(e0));
  for (int n = 1; n <= out.steps; ++n) {
    const double k1h = hp;
    const double k1p = second_derivative(k, h);
    const double k2h = hp + 0.5 * dx * k1p;
    const double k2p = second_derivative(k, h + 0.5 * dx * k1h);
    const double k3h = hp + 0.5 * dx * k2p;
    const double k3p = second_derivative(k, h + 0.5 * dx * k2h);
    const double k4h = hp + dx * k3p;
    const double k4p = second_derivative(k, h + dx * k3h);
    h += dx / 6.0 * (k1h + 2.0 * k2h + 2.0 * k3h + k4h);
    hp += dx / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);

    const double drift = std::abs(energy(k, h, hp) - e0);
    out.max_energy_drift = std::max(out.max_energy_drift, drift);
    if (drift > options.energy_guard * escale || !std::isfinite(h)) {
      throw Error(ErrorKind::OracleInstability,
                  "first integral drifted by " + std::to_string(drift) + " at step " + std::to_string(n));
    }
    out.max_error = std::max(out.max_error, std::abs(h - p.h(options.x0 + n * dx)));
  }
  return out;
}

ConvergenceStudy convergence_study(const profile::RadialProfile& p, OracleOptions options) {
  ConvergenceStudy study;
  study.coarse = integrate_and_compare(p, options);
  options.steps_per_period *= 2;
  study.fine = integrate_and_compare(p, options);
  study.observed_order = std::log2(study.coarse.max_error / study.fine.max_error);
  return study;
}

}  // namespace hamlag::oracle
