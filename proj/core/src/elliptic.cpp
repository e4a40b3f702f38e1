#include "hamlag/elliptic.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hamlag/error.hpp"

namespace hamlag::elliptic {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Enough for m up to 1 - 1e-300; the AGM converges quadratically.
constexpr int kMaxAgmSteps = 40;

}  // namespace

EllipticParameter::EllipticParameter(double m) : m_(m) {
  if (!(m >= 0.0 && m < 1.0)) {
    throw Error(ErrorKind::DomainError,
                "elliptic parameter must satisfy 0 <= m < 1, got " + std::to_string(m));
  }
}

double complete_K(EllipticParameter m) {
  double a = 1.0;
  double g = std::sqrt(m.complement());
  for (int i = 0; i < kMaxAgmSteps && std::abs(a - g) > kEps * a; ++i) {
    const double next = 0.5 * (a + g);
    g = std::sqrt(a * g);
    a = next;
  }
  return std::numbers::pi / (2.0 * a);
}

JacobiTriple jacobi_sn_cn_dn(double u, EllipticParameter param) {
  const double m = param.value();
  if (!std::isfinite(u)) {
    throw Error(ErrorKind::DomainError, "jacobi_sn_cn_dn: argument must be finite");
  }
  if (m == 0.0) {
    return {std::sin(u), std::cos(u), 1.0};
  }

  // Reduce to one real period so the amplitude recursion starts from a
  // moderate angle.
  const double period = 4.0 * complete_K(param);
  u -= period * std::nearbyint(u / period);

  std::array<double, kMaxAgmSteps + 1> a{};
  std::array<double, kMaxAgmSteps + 1> c{};
  a[0] = 1.0;
  double b = std::sqrt(param.complement());
  c[0] = std::sqrt(m);
  int n = 0;
  while (n < kMaxAgmSteps && std::abs(c[n]) > kEps * a[n]) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }

  double phi = std::ldexp(a[n] * u, n);
  for (int j = n; j > 0; --j) {
    phi = 0.5 * (phi + std::asin(c[j] / a[j] * std::sin(phi)));
  }

  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // dn > 0 for real u and m < 1.
  const double dn = std::sqrt(1.0 - m * sn * sn);
  return {sn, cn, dn};
}

}  // namespace hamlag::elliptic
