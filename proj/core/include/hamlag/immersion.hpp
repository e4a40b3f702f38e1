#pragma once

// Horizontal lift r(x, y) into S^5, the SU(3) frame R with connection
// matrices A, B (R_x = A R, R_y = B R), the Lagrangian angle, and the
// projection to CP^2.

#include <complex>

#include <Eigen/Dense>

#include "hamlag/params.hpp"
#include "hamlag/profile.hpp"

namespace hamlag::immersion {

using Complex = std::complex<double>;
using Vec3c = Eigen::Vector3cd;
using Mat3c = Eigen::Matrix3cd;

/// <u, w> = sum_j u_j conj(w_j).
inline Complex hermitian(const Vec3c& u, const Vec3c& w) { return w.dot(u); }

struct HorizontalLift {
  Vec3c r;
  Vec3c r_x;
  Vec3c r_y;
};

/// R has rows (e^{i beta} r, e^{-v} r_x, e^{-v} r_y).
struct FrameState {
  Mat3c R;
  Mat3c A;
  Mat3c B;
  double beta = 0.0;
  double f = 0.0;
  double g = 0.0;
};

/// Analytic partial derivatives of the connection matrices.
struct ConnectionDerivatives {
  Mat3c A_y;
  Mat3c B_x;
};

/// Point of CP^2 as a unit vector whose first component of modulus > 1e-9
/// is real and positive.
class ProjectivePoint {
 public:
  /// Throws DomainError for a (numerically) zero vector.
  explicit ProjectivePoint(const Vec3c& homogeneous);

  const Vec3c& homogeneous() const noexcept { return z_; }

 private:
  Vec3c z_;
};

/// r^j = F_j e^{i(G_j + alpha_j y)}, with r_x from the analytic F_j', G_j'.
HorizontalLift lift(const profile::RadialSample& s, const params::Angles& alpha, double y);
HorizontalLift lift(double x, double y, const profile::RadialProfile& p);

/// det of the matrix with rows e^{-v} r_x, e^{-v} r_y, r; equals e^{-i beta}.
Complex angle_determinant(const HorizontalLift& l, double v);

/// beta in (-pi, pi]. Throws FrameError if |det| differs from 1 by > 1e-8.
double lagrangian_angle(const HorizontalLift& l, double v);
double lagrangian_angle(double x, double y, const profile::RadialProfile& p);

/// Frame and connection without validity checks. beta comes from the
/// determinant; A and B use beta_x = a, beta_y = b, v_y = 0.
FrameState assemble_frame(const profile::RadialSample& s, const HorizontalLift& l,
                          const params::ResolvedConstants& k);

/// Checked frame: throws FrameError if R is not in SU(3) to 1e-10.
FrameState frame(double x, double y, const profile::RadialProfile& p);

ConnectionDerivatives connection_derivatives(const profile::RadialSample& s, const FrameState& fs,
                                             const params::ResolvedConstants& k);

/// max |R R^* - I| entry.
double unitarity_defect(const Mat3c& R);

ProjectivePoint project(const HorizontalLift& l);
ProjectivePoint project(const Vec3c& r);

/// psi(x, y) from amplitudes and phases only.
ProjectivePoint point(const profile::RadialProfile& p, double x, double y);

/// Fubini-Study distance arccos |<p, q>|, evaluated as
/// atan2(|p - <p,q> q|, |<p,q>|) to stay accurate near 0.
double fs_distance(const ProjectivePoint& p, const ProjectivePoint& q);

}  // namespace hamlag::immersion
