#pragma once

// Radial data of the immersion: h(x) = e^{2v(x)} from the Jacobi sn profile,
// the amplitudes F_i(x) and the phases G_i(x) (integrated from x0 = 0).
//
// Component indices are 0-based here (i = 0, 1, 2 for the first, second and
// third homogeneous coordinate) and always taken modulo 3.

#include <array>

#include "hamlag/params.hpp"

namespace hamlag::profile {

using Triple = std::array<double, 3>;

/// Everything x-dependent at a single abscissa, with analytic derivatives.
struct RadialSample {
  double x = 0.0;
  double h = 0.0;
  double h_x = 0.0;
  double h_xx = 0.0;
  double v = 0.0;
  double v_x = 0.0;
  double v_xx = 0.0;
  Triple F{};
  Triple F_x{};
  Triple F_xx{};
  Triple G{};
  Triple G_x{};
  Triple G_xx{};
};

/// T = 2 K(m) / sqrt(a1 + a3).
double period_T(const params::ResolvedConstants& k);

class RadialProfile {
 public:
  static constexpr double kDefaultQuadratureTolerance = 1e-11;

  explicit RadialProfile(params::ResolvedConstants constants,
                         double quadrature_tolerance = kDefaultQuadratureTolerance);

  const params::ResolvedConstants& constants() const noexcept { return k_; }
  const params::Angles& alpha() const noexcept { return k_.seed.alpha; }
  double period() const noexcept { return k_.T; }
  double quadrature_tolerance() const noexcept { return tol_; }
  /// Lambda_i = G_i(T), the phase advance over one period.
  const Triple& phase_advance() const noexcept { return lambda_; }

  /// h(x) = a1 (1 - (a1-a2)/a1 sn^2(x sqrt(a1+a3) | m)).
  double h(double x) const;
  /// Analytic h' from the sn derivative.
  double h_prime(double x) const;
  /// Analytic h'' from the closed form (not from the ODE).
  double h_second(double x) const;
  double v(double x) const;

  double amplitude_squared(int i, double x) const;
  /// F_i(x) >= 0. Throws NonrealProfile if the radicand is below -1e-12.
  double amplitude(int i, double x) const;

  /// G_i'(x) = (2 c2 - a h) / (2 (h + alpha_{i+1} alpha_{i+2})).
  double phase_rate(int i, double x) const;

  /// G_i(x) for all i by adaptive Gauss-Kronrod from 0 to x, in chunks of at
  /// most half a period. Throws QuadratureError on nonconvergence.
  Triple phases(double x) const;
  double phase(int i, double x) const { return phases(x)[static_cast<std::size_t>(i)]; }

  /// Independent route for G_i(x): composite Gauss-Legendre.
  Triple phases_gauss_legendre(double x, int order = 20, int panels = 40) const;

  RadialSample sample(double x) const;

 private:
  Triple phase_rates(double h) const;

  params::ResolvedConstants k_;
  double tol_;
  double rate_;  // sqrt(a1 + a3)
  Triple partner_{};
  Triple denominator_{};
  Triple lambda_{};
};

}  // namespace hamlag::profile
