#pragma once

// Jacobi elliptic functions sn, cn, dn and the complete elliptic integral of
// the first kind, for real argument and parameter 0 <= m < 1.
//
// The second argument is always the parameter m = k^2, never the modulus k.

namespace hamlag::elliptic {

/// Parameter m = k^2 of the Jacobi functions. Construction enforces
/// 0 <= m < 1 and throws Error(DomainError) otherwise.
class EllipticParameter {
 public:
  explicit EllipticParameter(double m);

  double value() const noexcept { return m_; }
  /// Complementary parameter 1 - m.
  double complement() const noexcept { return 1.0 - m_; }

 private:
  double m_;
};

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

/// K(m) = \int_0^{pi/2} dt / sqrt(1 - m sin^2 t), by the arithmetic-geometric
/// mean.
double complete_K(EllipticParameter m);

/// (sn, cn, dn)(u | m) by descending Landen transformation (AGM scale
/// sequence followed by backward recovery of the amplitude).
JacobiTriple jacobi_sn_cn_dn(double u, EllipticParameter m);

}  // namespace hamlag::elliptic
