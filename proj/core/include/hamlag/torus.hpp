#pragma once

// Double periodicity of the immersion: the phase mismatches lambda_1,
// lambda_2 over one x-period, their rational recovery by continued fractions,
// the closure multiplier N, measured closure, and a parameter search.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hamlag/params.hpp"
#include "hamlag/profile.hpp"

namespace hamlag::torus {

struct Rational {
  std::int64_t p = 0;
  std::int64_t q = 1;

  double value() const noexcept { return static_cast<double>(p) / static_cast<double>(q); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

struct RationalApprox {
  Rational fraction;
  double error = 0.0;
};

/// lambda_j = Lambda_j - Lambda_3 + (alpha_j - alpha_3) tau for j = 1, 2.
/// Throws ModeError unless every angle is an integer.
std::array<double, 2> lambdas(const profile::RadialProfile& p, double tau);

/// Continued-fraction convergents of xi with denominator <= q_max, in order.
std::vector<Rational> convergents(double xi, std::int64_t q_max);

/// Last convergent of xi with denominator <= q_max.
RationalApprox rational_approx(double xi, std::int64_t q_max);

struct ClosureMultiplier {
  std::int64_t N = 1;
  RationalApprox approx1;
  RationalApprox approx2;
};

/// Approximates lambda_j / 2pi by the first convergent within `tol`;
/// N = lcm(q1, q2). Returns nullopt when either has no such convergent.
std::optional<ClosureMultiplier> try_find_N(double lambda1, double lambda2, std::int64_t q_max, double tol);

/// As try_find_N, throwing Error(NoClosure) on failure.
ClosureMultiplier find_N(double lambda1, double lambda2, std::int64_t q_max, double tol);

/// Smallest y-translation closing psi projectively for integer angles:
/// 2 pi / gcd(alpha_1 - alpha_3, alpha_2 - alpha_3). Throws ModeError.
double y_period(const params::Angles& alpha);

/// Max Fubini-Study distance between psi(x, y) and its translates by
/// (N T, N tau) and by (0, P_y), over `samples` deterministic points.
/// Phases at translated points are integrated directly from x0 = 0.
double check_closure(const profile::RadialProfile& p, double tau, std::int64_t N, int samples);

/// Closure error under the y-translation alone, with an explicit period.
double y_closure_error(const profile::RadialProfile& p, double y_shift, int samples);

struct ClosureCertificate {
  params::SeedParameters seed;
  double T = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  RationalApprox approx1;
  RationalApprox approx2;
  std::int64_t N = 1;
  double tau = 0.0;
  /// Nominal e1 = (0, 1) as stated for the family, and its measured error.
  std::array<double, 2> period_e1{0.0, 1.0};
  double nominal_e1_closure_error = 0.0;
  /// Verified minimal y-period.
  double y_period = 0.0;
  std::array<double, 2> period_e2{0.0, 0.0};
  /// 2 pi N max_j |lambda_j / 2pi - p_j / q_j|.
  double predicted_phase_error = 0.0;
  double closure_error = 0.0;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct SearchConfig {
  params::Angles alpha{0.0, -1.0, 3.0};
  params::C2Branch branch = params::C2Branch::Minus;
  params::C2Sign sign = params::C2Sign::Positive;
  Range a1{1.5, 2.5};
  Range a2{0.5, 1.4};
  /// In units of each node's period T; [0, 1) means tau in [0, T).
  Range tau{0.0, 1.0};
  int n_a1 = 24;
  int n_a2 = 24;
  int n_tau = 8;
  std::int64_t q_max = 50;
  double tol = 1e-6;
  /// Certificates must close to this Fubini-Study distance.
  double closure_tol = 1e-5;
  /// How many best-ranked candidates get a measured closure check.
  int verify_top = 8;
  int samples = 6;
  int threads = 1;
};

/// Grid scan over (a1, a2) with, per node, the uniform tau samples plus every
/// tau at which one lambda is exactly 2 pi p / q (q <= q_max). Candidates are
/// ranked by predicted phase error; the best `verify_top` are measured and
/// those closing within closure_tol are returned sorted by (closure_error, N).
/// Throws EmptySearch when no node is feasible, ModeError for non-integer
/// angles.
std::vector<ClosureCertificate> search(const SearchConfig& config);

}  // namespace hamlag::torus
