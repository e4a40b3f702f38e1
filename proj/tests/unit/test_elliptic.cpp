#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hamlag/elliptic.hpp"
#include "hamlag/error.hpp"
#include "hamlag/quadrature.hpp"

#ifdef HAMLAG_HAVE_BOOST_MATH
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#endif

using hamlag::elliptic::EllipticParameter;
using hamlag::elliptic::complete_K;
using hamlag::elliptic::jacobi_sn_cn_dn;

namespace {

// sn' = cn dn, cn' = -sn dn, dn' = -m sn cn
std::array<double, 3> rk4_jacobi(double u_end, double m, int steps) {
  std::array<double, 3> y{0.0, 1.0, 1.0};
  const auto rhs = [m](const std::array<double, 3>& s) {
    return std::array<double, 3>{s[1] * s[2], -s[0] * s[2], -m * s[0] * s[1]};
  };
  const double h = u_end / steps;
  for (int n = 0; n < steps; ++n) {
    auto k1 = rhs(y);
    std::array<double, 3> t{};
    for (int i = 0; i < 3; ++i) t[i] = y[i] + 0.5 * h * k1[i];
    auto k2 = rhs(t);
    for (int i = 0; i < 3; ++i) t[i] = y[i] + 0.5 * h * k2[i];
    auto k3 = rhs(t);
    for (int i = 0; i < 3; ++i) t[i] = y[i] + h * k3[i];
    auto k4 = rhs(t);
    for (int i = 0; i < 3; ++i) y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return y;
}

}  // namespace

TEST_CASE("parameter domain") {
  CHECK_NOTHROW(EllipticParameter(0.0));
  CHECK_NOTHROW(EllipticParameter(0.999999));
  CHECK_THROWS_AS(EllipticParameter(1.0), hamlag::Error);
  CHECK_THROWS_AS(EllipticParameter(-0.1), hamlag::Error);
  CHECK_THROWS_AS(EllipticParameter(std::nan("")), hamlag::Error);
  try {
    EllipticParameter bad(1.0);
  } catch (const hamlag::Error& e) {
    CHECK(e.kind() == hamlag::ErrorKind::DomainError);
  }
  CHECK(EllipticParameter(0.25).complement() == doctest::Approx(0.75));
}

TEST_CASE("complete K reference values") {
  CHECK(complete_K(EllipticParameter(0.0)) == std::numbers::pi / 2);
  CHECK(std::abs(complete_K(EllipticParameter(0.5)) - 1.8540746773013719184) < 1e-14);
  CHECK(std::abs(complete_K(EllipticParameter(0.4268)) - 1.79657714223111767821) < 1e-14);
}

TEST_CASE("complete K matches adaptive quadrature of the defining integral") {
  for (double m : {0.1, 0.5, 0.9, 0.99}) {
    const auto I = hamlag::quadrature::integrate_adaptive<1>(
        [m](double t) { return std::array<double, 1>{1.0 / std::sqrt(1.0 - m * std::sin(t) * std::sin(t))}; },
        0.0, std::numbers::pi / 2, 1e-14);
    CHECK(std::abs(complete_K(EllipticParameter(m)) - I[0]) < 1e-12);
  }
}

TEST_CASE("sn cn dn reference values") {
  struct Row {
    double u, m, sn, cn, dn;
  };
  const Row rows[] = {
      {0.3, 0.2, 0.29467633568107178125, 0.9555971207520333994, 0.99127855390798970891},
      {1.7, 0.9, 0.95223054210801865053, 0.3053800823181972353, 0.42887211987841085076},
      {5.0, 0.5, -0.91800818479024131123, -0.39656143617115136891, 0.76067764942126640654},
      {-2.2, 0.99, -0.97786915917505945746, 0.20921736910271630237, 0.23094195906963207424},
  };
  for (const auto& r : rows) {
    const auto j = jacobi_sn_cn_dn(r.u, EllipticParameter(r.m));
    CHECK(std::abs(j.sn - r.sn) < 1e-13);
    CHECK(std::abs(j.cn - r.cn) < 1e-13);
    CHECK(std::abs(j.dn - r.dn) < 1e-13);
  }
}

TEST_CASE("degenerate cases") {
  for (double m : {0.0, 0.3, 0.95}) {
    const auto j = jacobi_sn_cn_dn(0.0, EllipticParameter(m));
    CHECK(j.sn == 0.0);
    CHECK(j.cn == 1.0);
    CHECK(j.dn == 1.0);
  }
  for (double u : {-3.0, 0.4, 1.0, 7.5}) {
    const auto j = jacobi_sn_cn_dn(u, EllipticParameter(0.0));
    CHECK(std::abs(j.sn - std::sin(u)) < 1e-15);
    CHECK(std::abs(j.cn - std::cos(u)) < 1e-15);
    CHECK(j.dn == 1.0);
  }
}

TEST_CASE("sn(K) = 1 against RK4 integration of the defining system") {
  const double m = 0.4268;
  const double K = complete_K(EllipticParameter(m));
  const auto y = rk4_jacobi(K, m, 4000);
  CHECK(std::abs(y[0] - 1.0) < 1e-12);
  CHECK(std::abs(jacobi_sn_cn_dn(K, EllipticParameter(m)).sn - 1.0) < 1e-12);
  const auto j = jacobi_sn_cn_dn(1.3, EllipticParameter(m));
  const auto z = rk4_jacobi(1.3, m, 4000);
  CHECK(std::abs(j.sn - z[0]) < 1e-12);
  CHECK(std::abs(j.cn - z[1]) < 1e-12);
  CHECK(std::abs(j.dn - z[2]) < 1e-12);
}

TEST_CASE("identities, periodicity and derivative at random points") {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> U(-20.0, 20.0);
  std::uniform_real_distribution<double> M(0.0, 0.999);
  for (int n = 0; n < 1000; ++n) {
    const double u = U(rng);
    const EllipticParameter m(M(rng));
    const auto j = jacobi_sn_cn_dn(u, m);
    CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-13);
    CHECK(std::abs(j.dn * j.dn + m.value() * j.sn * j.sn - 1.0) < 1e-13);

    const double K = complete_K(m);
    const auto shifted = jacobi_sn_cn_dn(u + 4.0 * K, m);
    CHECK(std::abs(shifted.sn - j.sn) < 1e-11);
    CHECK(std::abs(shifted.cn - j.cn) < 1e-11);
    const auto half = jacobi_sn_cn_dn(u + 2.0 * K, m);
    CHECK(std::abs(half.sn + j.sn) < 1e-11);
  }
  for (int n = 0; n < 200; ++n) {
    const double u = U(rng);
    const EllipticParameter m(0.8 * M(rng));
    const double step = 1e-5;
    const double fd = (jacobi_sn_cn_dn(u + step, m).sn - jacobi_sn_cn_dn(u - step, m).sn) / (2 * step);
    const auto j = jacobi_sn_cn_dn(u, m);
    CHECK(std::abs(fd - j.cn * j.dn) < 1e-8);
  }
}

#ifdef HAMLAG_HAVE_BOOST_MATH
TEST_CASE("cross-check against Boost.Math") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-10.0, 10.0);
  std::uniform_real_distribution<double> M(0.0, 0.99);
  for (int n = 0; n < 300; ++n) {
    const double m = M(rng);
    const double u = U(rng);
    const double k = std::sqrt(m);
    CHECK(std::abs(complete_K(EllipticParameter(m)) - boost::math::ellint_1(k)) < 1e-13);
    double cn = 0.0;
    double dn = 0.0;
    const double sn = boost::math::jacobi_elliptic(k, u, &cn, &dn);
    const auto j = jacobi_sn_cn_dn(u, EllipticParameter(m));
    CHECK(std::abs(j.sn - sn) < 1e-12);
    CHECK(std::abs(j.cn - cn) < 1e-12);
    CHECK(std::abs(j.dn - dn) < 1e-12);
  }
}
#endif
