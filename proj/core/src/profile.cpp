#include "hamlag/profile.hpp"

#include <cmath>
#include <string>

#include "hamlag/elliptic.hpp"
#include "hamlag/error.hpp"
#include "hamlag/quadrature.hpp"

namespace hamlag::profile {

double period_T(const params::ResolvedConstants& k) {
  return 2.0 * elliptic::complete_K(k.m) / std::sqrt(k.seed.a1 + k.a3);
}

RadialProfile::RadialProfile(params::ResolvedConstants constants, double quadrature_tolerance)
    : k_(std::move(constants)), tol_(quadrature_tolerance), rate_(std::sqrt(k_.seed.a1 + k_.a3)) {
  if (!(tol_ > 0.0)) throw Error(ErrorKind::DomainError, "quadrature tolerance must be positive");
  for (int i = 0; i < 3; ++i) {
    partner_[static_cast<std::size_t>(i)] = params::partner_product(k_.seed.alpha, i);
    denominator_[static_cast<std::size_t>(i)] = params::amplitude_denominator(k_.seed.alpha, i);
  }
  lambda_ = phases(k_.T);
}

double RadialProfile::h(double x) const {
  const auto j = elliptic::jacobi_sn_cn_dn(x * rate_, k_.m);
  return k_.seed.a1 - (k_.seed.a1 - k_.seed.a2) * j.sn * j.sn;
}

double RadialProfile::h_prime(double x) const {
  const auto j = elliptic::jacobi_sn_cn_dn(x * rate_, k_.m);
  return -2.0 * (k_.seed.a1 - k_.seed.a2) * rate_ * j.sn * j.cn * j.dn;
}

double RadialProfile::h_second(double x) const {
  const auto j = elliptic::jacobi_sn_cn_dn(x * rate_, k_.m);
  const double m = k_.m.value();
  // d/du (sn cn dn) = cn^2 dn^2 - sn^2 dn^2 - m sn^2 cn^2
  const double d = j.cn * j.cn * j.dn * j.dn - j.sn * j.sn * j.dn * j.dn - m * j.sn * j.sn * j.cn * j.cn;
  return -2.0 * (k_.seed.a1 - k_.seed.a2) * rate_ * rate_ * d;
}

double RadialProfile::v(double x) const { return 0.5 * std::log(h(x)); }

double RadialProfile::amplitude_squared(int i, double x) const {
  const auto idx = static_cast<std::size_t>(i % 3);
  return (h(x) + partner_[idx]) / denominator_[idx];
}

double RadialProfile::amplitude(int i, double x) const {
  const double sq = amplitude_squared(i, x);
  if (sq < -1e-12) {
    throw Error(ErrorKind::NonrealProfile, "negative radicand for amplitude " + std::to_string(i + 1));
  }
  return std::sqrt(std::max(sq, 0.0));
}

Triple RadialProfile::phase_rates(double hv) const {
  const double numerator = 2.0 * k_.c2 - k_.a * hv;
  Triple out{};
  for (std::size_t i = 0; i < 3; ++i) out[i] = numerator / (2.0 * (hv + partner_[i]));
  return out;
}

double RadialProfile::phase_rate(int i, double x) const {
  return phase_rates(h(x))[static_cast<std::size_t>(i % 3)];
}

Triple RadialProfile::phases(double x) const {
  const auto integrand = [this](double z) { return phase_rates(h(z)); };
  const double chunk = 0.5 * k_.T;
  const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(x) / chunk)));
  Triple total{};
  for (int p = 0; p < pieces; ++p) {
    const double lo = x * p / pieces;
    const double hi = x * (p + 1) / pieces;
    const auto part = quadrature::integrate_adaptive<3>(integrand, lo, hi, tol_);
    for (std::size_t i = 0; i < 3; ++i) total[i] += part[i];
  }
  return total;
}

Triple RadialProfile::phases_gauss_legendre(double x, int order, int panels) const {
  const auto integrand = [this](double z) { return phase_rates(h(z)); };
  return quadrature::integrate_gauss_legendre<3>(integrand, 0.0, x, order, panels);
}

RadialSample RadialProfile::sample(double x) const {
  RadialSample s;
  s.x = x;
  s.h = h(x);
  s.h_x = h_prime(x);
  s.h_xx = h_second(x);
  s.v = 0.5 * std::log(s.h);
  s.v_x = s.h_x / (2.0 * s.h);
  s.v_xx = (s.h_xx * s.h - s.h_x * s.h_x) / (2.0 * s.h * s.h);
  s.G = phases(x);
  const double numerator = 2.0 * k_.c2 - k_.a * s.h;
  for (std::size_t i = 0; i < 3; ++i) {
    const double q = s.h + partner_[i];
    const double radicand = q / denominator_[i];
    if (radicand < -1e-12) {
      throw Error(ErrorKind::NonrealProfile, "negative radicand for amplitude " + std::to_string(i + 1));
    }
    s.F[i] = std::sqrt(std::max(radicand, 0.0));
    // F'/F = h'/(2q), from F^2 linear in h.
    s.F_x[i] = s.F[i] * s.h_x / (2.0 * q);
    s.F_xx[i] = s.F[i] * (s.h_xx / (2.0 * q) - s.h_x * s.h_x / (4.0 * q * q));
    s.G_x[i] = numerator / (2.0 * q);
    s.G_xx[i] = (-k_.a * s.h_x * q - numerator * s.h_x) / (2.0 * q * q);
  }
  return s;
}

}  // namespace hamlag::profile
