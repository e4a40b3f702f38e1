#include "hamlag/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "hamlag/error.hpp"

namespace hamlag::params {

namespace {

constexpr double kIdentityTol = 1e-9;
constexpr double kCubicTol = 1e-10;

std::string describe(const SeedParameters& s) {
  std::ostringstream os;
  os.precision(17);
  os << "alpha=(" << s.alpha[0] << ", " << s.alpha[1] << ", " << s.alpha[2] << "), a1=" << s.a1
     << ", a2=" << s.a2;
  return os.str();
}

double relative(double value, double reference, double scale) {
  return std::abs(value - reference) / std::max({1.0, std::abs(reference), scale});
}

}  // namespace

double partner_product(const Angles& alpha, int i) {
  return alpha[static_cast<std::size_t>((i + 1) % 3)] * alpha[static_cast<std::size_t>((i + 2) % 3)];
}

double amplitude_denominator(const Angles& alpha, int i) {
  const double ai = alpha[static_cast<std::size_t>(i % 3)];
  return (ai - alpha[static_cast<std::size_t>((i + 1) % 3)]) *
         (ai - alpha[static_cast<std::size_t>((i + 2) % 3)]);
}

VietaConstants vieta_constants(const Angles& alpha) {
  const double scale = std::max({1.0, std::abs(alpha[0]), std::abs(alpha[1]), std::abs(alpha[2])});
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(alpha[static_cast<std::size_t>(i)] - alpha[static_cast<std::size_t>(j)]) <=
          1e-12 * scale) {
        throw Error(ErrorKind::DegenerateAngles, "angles must be pairwise distinct");
      }
    }
  }
  const auto [x, y, z] = alpha;
  return {-(x + y + z), x * y + x * z + y * z, -x * y * z};
}

double closure_constant(double a1, double a2, const VietaConstants& v) {
  return (a1 + a2) * v.c1 * v.c1 - a1 * a1 * a2 * a2 + a1 * a2 * v.c1 * v.b;
}

Feasibility feasibility(double a1, double a2, const VietaConstants& v) {
  const double P = a1 * a1 * a1 * a2 * a2 + a1 * a1 * a2 * a2 * a2 +
                   (a1 * a2 * a2 + a1 * a1 * a2) * v.b * v.c1 + (a1 * a1 + a2 * a2) * v.c1 * v.c1 +
                   2.0 * a1 * a1 * a2 * a2 * v.c;
  const double k0 = closure_constant(a1, a2, v);
  const double spread = (a1 - a2) * (a1 - a2);
  const double discriminant = P * P - spread * k0 * k0;
  return {P <= 0.0 && discriminant >= 0.0, P, discriminant};
}

std::vector<double> solve_c2(double a1, double a2, const VietaConstants& v) {
  const Feasibility feas = feasibility(a1, a2, v);
  const double P = feas.P;
  const double k0 = closure_constant(a1, a2, v);
  const double quad = (a1 - a2) * (a1 - a2);
  const double constant = k0 * k0;

  std::vector<double> roots;
  if (quad == 0.0) {
    if (P == 0.0) {
      throw Error(ErrorKind::DegenerateProfile, "a1 = a2 with P = 0: c2 undetermined");
    }
    roots.push_back(-constant / (2.0 * P));
  } else {
    if (feas.discriminant < 0.0) {
      throw Error(ErrorKind::Infeasible, "no real c2^2: discriminant is negative");
    }
    const double sq = std::sqrt(feas.discriminant);
    const double q = -(P + std::copysign(sq, P));
    if (q == 0.0) {
      roots = {0.0, 0.0};
    } else {
      roots = {q / quad, constant / q};
    }
  }

  const double scale = std::max({1.0, std::abs(roots.front()), std::abs(roots.back())});
  std::vector<double> out;
  for (double t : roots) {
    if (t >= 0.0) {
      out.push_back(t);
    } else if (t > -1e-14 * scale) {
      out.push_back(0.0);
    }
  }
  if (out.empty()) {
    throw Error(ErrorKind::Infeasible, "no nonnegative root for c2^2");
  }
  std::sort(out.begin(), out.end());
  return out;
}

ResolvedConstants resolve(const SeedParameters& seed) {
  const VietaConstants v = vieta_constants(seed.alpha);
  const double a1 = seed.a1;
  const double a2 = seed.a2;
  if (!(std::isfinite(a1) && std::isfinite(a2))) {
    throw Error(ErrorKind::DomainError, "profile bounds must be finite");
  }
  if (a1 == a2) {
    throw Error(ErrorKind::DegenerateProfile, "a1 = a2 gives a constant profile");
  }
  if (!(a1 > a2 && a2 > 0.0)) {
    throw Error(ErrorKind::DomainError, "profile bounds must satisfy a1 > a2 > 0: " + describe(seed));
  }
  if (!feasibility(a1, a2, v).feasible) {
    throw Error(ErrorKind::Infeasible, "no real c2 for " + describe(seed));
  }

  const std::vector<double> roots = solve_c2(a1, a2, v);
  const double t = seed.c2_root_branch == C2Branch::Minus ? roots.front() : roots.back();
  if (t < 1e-20) {
    throw Error(ErrorKind::DegenerateProfile, "c2 = 0 on the selected branch");
  }

  ResolvedConstants k;
  k.seed = seed;
  k.b = v.b;
  k.c = v.c;
  k.c1 = v.c1;
  k.c2 = seed.c2_sign == C2Sign::Positive ? std::sqrt(t) : -std::sqrt(t);
  k.a3 = (v.c1 * v.c1 + t) / (a1 * a2);
  k.a = (v.b * v.c1 + a1 * k.a3 + a2 * k.a3 - a1 * a2) / k.c2;
  if (!(k.a3 > 0.0)) {
    throw Error(ErrorKind::DegenerateProfile, "a3 must be positive");
  }
  k.m = elliptic::EllipticParameter((a1 - a2) / (a1 + k.a3));
  k.T = 2.0 * elliptic::complete_K(k.m) / std::sqrt(a1 + k.a3);

  // Amplitudes are square roots of functions linear in h, so checking the
  // endpoints of [a2, a1] covers the whole range.
  for (int i = 0; i < 3; ++i) {
    const double pp = partner_product(seed.alpha, i);
    const double den = amplitude_denominator(seed.alpha, i);
    const double lo = (a2 + pp) / den;
    const double hi = (a1 + pp) / den;
    if (std::min(lo, hi) < -1e-12) {
      throw Error(ErrorKind::NonrealProfile,
                  "amplitude " + std::to_string(i + 1) + " is not real on [a2, a1] for " + describe(seed));
    }
  }
  for (int i = 0; i < 3; ++i) {
    const double root = -partner_product(seed.alpha, i);
    const double slack = 1e-12 * std::max(1.0, std::abs(root));
    if (root >= a2 - slack && root <= a1 + slack) {
      throw Error(ErrorKind::SingularPhase,
                  "phase integrand " + std::to_string(i + 1) + " has a pole at h = " + std::to_string(root));
    }
  }

  const double a_sq_expected = -4.0 * k.c - 4.0 * (a1 + a2 - k.a3);
  if (relative(k.a * k.a, a_sq_expected, 4.0 * (a1 + a2 + k.a3) + 4.0 * std::abs(k.c)) > kIdentityTol) {
    throw Error(ErrorKind::InconsistentBranch, "a^2 identity violated for " + describe(seed));
  }
  for (double r : coefficient_mismatch(k)) {
    if (r > kIdentityTol) {
      throw Error(ErrorKind::InconsistentBranch, "coefficient matching violated for " + describe(seed));
    }
  }
  for (double r : cubic_root_residuals(k)) {
    if (r > kCubicTol) {
      throw Error(ErrorKind::InconsistentBranch, "angle is not a root of the cubic");
    }
  }
  return k;
}

std::array<double, 3> cubic_root_residuals(const ResolvedConstants& k) {
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double x = k.seed.alpha[i];
    const double terms[] = {x * x * x, k.b * x * x, k.c * x, k.c1};
    double scale = 1.0;
    for (double t : terms) scale = std::max(scale, std::abs(t));
    out[i] = std::abs(terms[0] + terms[1] + terms[2] + terms[3]) / scale;
  }
  return out;
}

std::array<double, 3> coefficient_mismatch(const ResolvedConstants& k) {
  const double a1 = k.seed.a1;
  const double a2 = k.seed.a2;
  // 4(h-a1)(h-a2)(h+a3) expanded.
  const double e2 = 4.0 * (k.a3 - a1 - a2);
  const double e1 = 4.0 * (a1 * a2 - a1 * k.a3 - a2 * k.a3);
  const double e0 = 4.0 * a1 * a2 * k.a3;
  const double f2 = 4.0 * k.c + k.a * k.a;
  const double f1 = 4.0 * (k.b * k.c1 - k.a * k.c2);
  const double f0 = 4.0 * (k.c1 * k.c1 + k.c2 * k.c2);
  return {relative(f2, e2, std::abs(f2)), relative(f1, e1, std::abs(f1)), relative(f0, e0, std::abs(f0))};
}

ResolvedConstants perturbed(const ResolvedConstants& k, std::string_view field, double factor) {
  ResolvedConstants out = k;
  if (field == "c2") {
    out.c2 *= factor;
  } else if (field == "a") {
    out.a *= factor;
  } else if (field == "a3") {
    out.a3 *= factor;
  } else if (field == "m") {
    out.m = elliptic::EllipticParameter(k.m.value() * factor);
  } else {
    throw Error(ErrorKind::DomainError, "unknown perturbation field '" + std::string(field) + "'");
  }
  return out;
}

std::string_view to_string(C2Branch branch) noexcept {
  return branch == C2Branch::Minus ? "Minus" : "Plus";
}

std::string_view to_string(C2Sign sign) noexcept {
  return sign == C2Sign::Positive ? "Positive" : "Negative";
}

}  // namespace hamlag::params
