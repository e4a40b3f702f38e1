#include "hamlag/immersion.hpp"

#include <cmath>

#include "hamlag/error.hpp"

namespace hamlag::immersion {

namespace {

constexpr Complex kI{0.0, 1.0};

Mat3c frame_matrix(const HorizontalLift& l, double beta, double v) {
  Mat3c R;
  const double scale = std::exp(-v);
  R.row(0) = std::polar(1.0, beta) * l.r.transpose();
  R.row(1) = scale * l.r_x.transpose();
  R.row(2) = scale * l.r_y.transpose();
  return R;
}

}  // namespace

ProjectivePoint::ProjectivePoint(const Vec3c& homogeneous) {
  const double norm = homogeneous.norm();
  if (!(norm > 1e-300) || !std::isfinite(norm)) {
    throw Error(ErrorKind::DomainError, "cannot project the zero vector");
  }
  z_ = homogeneous / norm;
  for (Eigen::Index j = 0; j < 3; ++j) {
    if (std::abs(z_(j)) > 1e-9) {
      z_ *= std::conj(z_(j)) / std::abs(z_(j));
      z_(j) = std::abs(z_(j));
      break;
    }
  }
}

HorizontalLift lift(const profile::RadialSample& s, const params::Angles& alpha, double y) {
  HorizontalLift l;
  for (Eigen::Index j = 0; j < 3; ++j) {
    const auto i = static_cast<std::size_t>(j);
    const Complex phase = std::polar(1.0, s.G[i] + alpha[i] * y);
    l.r(j) = s.F[i] * phase;
    l.r_x(j) = Complex(s.F_x[i], s.G_x[i] * s.F[i]) * phase;
    l.r_y(j) = kI * alpha[i] * l.r(j);
  }
  return l;
}

HorizontalLift lift(double x, double y, const profile::RadialProfile& p) {
  return lift(p.sample(x), p.alpha(), y);
}

Complex angle_determinant(const HorizontalLift& l, double v) {
  Mat3c M;
  const double scale = std::exp(-v);
  M.row(0) = scale * l.r_x.transpose();
  M.row(1) = scale * l.r_y.transpose();
  M.row(2) = l.r.transpose();
  return M.determinant();
}

double lagrangian_angle(const HorizontalLift& l, double v) {
  const Complex d = angle_determinant(l, v);
  if (std::abs(std::abs(d) - 1.0) > 1e-8) {
    throw Error(ErrorKind::FrameError, "tangent frame is not unitary: |det| = " + std::to_string(std::abs(d)));
  }
  return -std::arg(d);
}

double lagrangian_angle(double x, double y, const profile::RadialProfile& p) {
  const auto s = p.sample(x);
  return lagrangian_angle(lift(s, p.alpha(), y), s.v);
}

FrameState assemble_frame(const profile::RadialSample& s, const HorizontalLift& l,
                          const params::ResolvedConstants& k) {
  FrameState fs;
  fs.beta = -std::arg(angle_determinant(l, s.v));
  fs.R = frame_matrix(l, fs.beta, s.v);
  fs.f = k.c2 / s.h - 0.5 * k.a;
  fs.g = k.c1 / s.h;

  const double beta_x = k.a;
  const double beta_y = k.b;
  const double v_x = s.v_x;
  const double v_y = 0.0;
  const Complex up = std::exp(Complex(s.v, fs.beta));
  const Complex down = std::exp(Complex(s.v, -fs.beta));
  const double f = fs.f;
  const double g = fs.g;

  fs.A << kI * beta_x, up, 0.0,
          -down, -kI * f - kI * beta_x, kI * g - v_y,
          0.0, kI * g + v_y, kI * f;
  fs.B << kI * beta_y, 0.0, up,
          0.0, kI * g, kI * f + v_x,
          -down, kI * f - v_x, -kI * g - kI * beta_y;
  return fs;
}

FrameState frame(double x, double y, const profile::RadialProfile& p) {
  const auto s = p.sample(x);
  const FrameState fs = assemble_frame(s, lift(s, p.alpha(), y), p.constants());
  if (unitarity_defect(fs.R) > 1e-10 || std::abs(fs.R.determinant() - 1.0) > 1e-10) {
    throw Error(ErrorKind::FrameError, "frame is not in SU(3)");
  }
  return fs;
}

ConnectionDerivatives connection_derivatives(const profile::RadialSample& s, const FrameState& fs,
                                             const params::ResolvedConstants& k) {
  const Complex up = std::exp(Complex(s.v, fs.beta));
  const Complex down = std::exp(Complex(s.v, -fs.beta));
  const double beta_x = k.a;
  const double beta_y = k.b;
  const double f_x = -k.c2 * s.h_x / (s.h * s.h);
  const double g_x = -k.c1 * s.h_x / (s.h * s.h);

  ConnectionDerivatives d;
  // A depends on y only through beta in e^{v +- i beta}.
  d.A_y = Mat3c::Zero();
  d.A_y(0, 1) = kI * beta_y * up;
  d.A_y(1, 0) = kI * beta_y * down;

  d.B_x = Mat3c::Zero();
  d.B_x(0, 2) = Complex(s.v_x, beta_x) * up;
  d.B_x(1, 1) = kI * g_x;
  d.B_x(1, 2) = kI * f_x + s.v_xx;
  d.B_x(2, 0) = -Complex(s.v_x, -beta_x) * down;
  d.B_x(2, 1) = kI * f_x - s.v_xx;
  d.B_x(2, 2) = -kI * g_x;
  return d;
}

double unitarity_defect(const Mat3c& R) {
  return (R * R.adjoint() - Mat3c::Identity()).cwiseAbs().maxCoeff();
}

ProjectivePoint project(const HorizontalLift& l) { return ProjectivePoint(l.r); }

ProjectivePoint project(const Vec3c& r) { return ProjectivePoint(r); }

ProjectivePoint point(const profile::RadialProfile& p, double x, double y) {
  const auto G = p.phases(x);
  Vec3c r;
  for (Eigen::Index j = 0; j < 3; ++j) {
    const auto i = static_cast<std::size_t>(j);
    r(j) = p.amplitude(static_cast<int>(j), x) * std::polar(1.0, G[i] + p.alpha()[i] * y);
  }
  return ProjectivePoint(r);
}

double fs_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
  const Vec3c& u = p.homogeneous();
  const Vec3c& w = q.homogeneous();
  const Complex overlap = hermitian(u, w);
  const double orthogonal = (u - overlap * w).norm();
  return std::atan2(orthogonal, std::abs(overlap));
}

}  // namespace hamlag::immersion
