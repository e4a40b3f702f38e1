#pragma once

// Algebraic constants of the immersion family: Vieta constants of the angle
// triple, the feasibility predicate, the quadratic in c2^2, and full
// resolution of a seed into the constants consumed by the radial profile.

#include <array>
#include <string_view>
#include <vector>

#include "hamlag/elliptic.hpp"

namespace hamlag::params {

/// Angle triple (alpha_1, alpha_2, alpha_3); index i is taken modulo 3.
using Angles = std::array<double, 3>;

/// Which root of the quadratic in t = c2^2 to take.
enum class C2Branch { Minus, Plus };
enum class C2Sign { Positive, Negative };

struct SeedParameters {
  Angles alpha{};
  double a1 = 0.0;
  double a2 = 0.0;
  C2Branch c2_root_branch = C2Branch::Minus;
  C2Sign c2_sign = C2Sign::Positive;
};

/// b = -(alpha_1 + alpha_2 + alpha_3), c = e_2(alpha), c1 = -alpha_1 alpha_2 alpha_3.
struct VietaConstants {
  double b;
  double c;
  double c1;
};

struct Feasibility {
  bool feasible;
  double P;
  double discriminant;
};

/// Resolved constants. Plain value type: treat as immutable once returned by
/// resolve(). The mutation helpers below produce modified copies.
struct ResolvedConstants {
  SeedParameters seed;
  double b = 0.0;
  double c = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double a = 0.0;
  double a3 = 0.0;
  elliptic::EllipticParameter m{0.0};
  /// Period of the radial profile in x.
  double T = 0.0;
};

/// Elementary-symmetric constants. Throws DegenerateAngles on a repeated angle.
VietaConstants vieta_constants(const Angles& alpha);

/// Constant term of the quadratic in c2^2 before squaring:
/// (a1 + a2) c1^2 - a1^2 a2^2 + a1 a2 c1 b.
double closure_constant(double a1, double a2, const VietaConstants& v);

/// The P <= 0 and discriminant >= 0 conditions for a real c2.
Feasibility feasibility(double a1, double a2, const VietaConstants& v);

/// Nonnegative real roots t = c2^2 of
///   (a1-a2)^2 t^2 + 2 P t + closure_constant^2 = 0,
/// sorted ascending. Throws Infeasible or DegenerateProfile.
std::vector<double> solve_c2(double a1, double a2, const VietaConstants& v);

/// Full resolution with all validity checks. Throws DegenerateAngles,
/// DomainError (a1 > a2 > 0 violated), Infeasible, DegenerateProfile,
/// NonrealProfile, SingularPhase or InconsistentBranch.
ResolvedConstants resolve(const SeedParameters& seed);

/// Residual of alpha^3 + b alpha^2 + c alpha + c1 at each angle, relative to
/// the largest term.
std::array<double, 3> cubic_root_residuals(const ResolvedConstants& k);

/// Relative mismatch of the h^2, h^1, h^0 coefficients between
/// 4(h-a1)(h-a2)(h+a3) and 4h^3 + (4c+a^2)h^2 + 4(bc1-ac2)h + 4(c1^2+c2^2).
std::array<double, 3> coefficient_mismatch(const ResolvedConstants& k);

/// Product alpha_{i+1} alpha_{i+2}; the amplitude and phase denominators are
/// h + partner_product(i).
double partner_product(const Angles& alpha, int i);

/// (alpha_i - alpha_{i+1})(alpha_i - alpha_{i+2}).
double amplitude_denominator(const Angles& alpha, int i);

/// Copy of `k` with a single field scaled by `factor`. Valid names are "c2",
/// "a", "a3" and "m"; others throw DomainError. Nothing is re-derived.
ResolvedConstants perturbed(const ResolvedConstants& k, std::string_view field, double factor);

std::string_view to_string(C2Branch branch) noexcept;
std::string_view to_string(C2Sign sign) noexcept;

}  // namespace hamlag::params
