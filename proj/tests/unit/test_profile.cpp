#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "common.hpp"
#include "hamlag/elliptic.hpp"
#include "hamlag/profile.hpp"

using namespace hamlag;
using hamlag::profile::RadialProfile;
using hamlag::test::example_seed;

TEST_CASE("profile endpoints and period") {
  for (auto branch : {params::C2Branch::Minus, params::C2Branch::Plus}) {
    const RadialProfile p(params::resolve(example_seed(branch)));
    const double T = p.period();
    CHECK(p.h(0.0) == 2.0);
    CHECK(std::abs(p.h(T / 2) - 1.0) < 1e-13);
    CHECK(std::abs(p.h(T) - 2.0) < 1e-10);
    CHECK(std::abs(p.h_prime(0.0)) < 1e-14);
    CHECK(std::abs(p.h_prime(T / 2)) < 1e-12);
    const auto& k = p.constants();
    CHECK(std::abs(T - 2.0 * elliptic::complete_K(k.m) / std::sqrt(2.0 + k.a3)) < 1e-14);
  }
}

TEST_CASE("analytic derivatives match finite differences") {
  const RadialProfile p(params::resolve(example_seed()));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> X(0.0, 3.0 * p.period());
  const double e = 1e-5;
  for (int n = 0; n < 100; ++n) {
    const double x = X(rng);
    CHECK(std::abs((p.h(x + e) - p.h(x - e)) / (2 * e) - p.h_prime(x)) < 1e-7);
    CHECK(std::abs((p.h_prime(x + e) - p.h_prime(x - e)) / (2 * e) - p.h_second(x)) < 1e-7);
  }
}

TEST_CASE("closed form solves the cubic radial equation") {
  for (auto branch : {params::C2Branch::Minus, params::C2Branch::Plus}) {
    const RadialProfile p(params::resolve(example_seed(branch)));
    const auto& k = p.constants();
    for (int n = 0; n <= 50; ++n) {
      const double x = p.period() * n / 50.0;
      const double h = p.h(x);
      const double rhs = -6 * h * h - (4 * k.c + k.a * k.a) * h - 2 * (k.b * k.c1 - k.a * k.c2);
      CHECK(std::abs(p.h_second(x) - rhs) < 1e-10);
    }
  }
}

TEST_CASE("a1 to a2 limit recovers the trigonometric period") {
  auto s = example_seed();
  s.a2 = 2.0 - 1e-7;
  const RadialProfile p(params::resolve(s));
  const auto& k = p.constants();
  CHECK(k.m.value() < 1e-6);
  CHECK(std::abs(p.period() - std::numbers::pi / std::sqrt(s.a1 + k.a3)) < 1e-5);
}

TEST_CASE("amplitudes partition unity at random x") {
  const RadialProfile p(params::resolve(example_seed()));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> X(-10.0, 10.0);
  for (int n = 0; n < 1000; ++n) {
    const double x = X(rng);
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) sum += p.amplitude_squared(i, x);
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
  CHECK(std::abs(p.amplitude(0, 0.0) - std::sqrt(1.0 / 3.0)) < 1e-15);
  CHECK(std::abs(p.amplitude(1, 0.0) - std::sqrt(0.5)) < 1e-15);
  CHECK(std::abs(p.amplitude(2, 0.0) - std::sqrt(1.0 / 6.0)) < 1e-15);
}

TEST_CASE("phase advances and values") {
  const RadialProfile minus(params::resolve(example_seed()));
  const auto& L = minus.phase_advance();
  CHECK(std::abs(L[0] - -2.8166212715052940117) < 1e-10);
  CHECK(std::abs(L[1] - 2.7833382426843922599) < 1e-10);
  CHECK(std::abs(L[2] - 2.7833382426843922599) < 1e-10);
  const auto G = minus.phases(0.7);
  CHECK(std::abs(G[0] - -1.0403184494444293353) < 1e-10);
  CHECK(std::abs(G[1] - 0.75478606278141502654) < 1e-10);
  CHECK(std::abs(G[2] - 0.75478606278141502654) < 1e-10);

  const RadialProfile plus(params::resolve(example_seed(params::C2Branch::Plus)));
  const auto& M = plus.phase_advance();
  CHECK(std::abs(M[0] - 0.34806132029701130259) < 1e-10);
  CHECK(std::abs(M[1] - 0.0096707281357578683147) < 1e-10);
  const auto H = plus.phases(0.7);
  CHECK(std::abs(H[0] - 0.10285080969585854063) < 1e-10);
  CHECK(std::abs(H[1] - 0.1499836094315729463) < 1e-10);
}

TEST_CASE("phases are additive over periods and agree across quadrature rules") {
  const RadialProfile p(params::resolve(example_seed()));
  const double T = p.period();
  for (double x : {0.0, 0.3, 1.1, 2.0}) {
    const auto g0 = p.phases(x);
    const auto g1 = p.phases(x + T);
    const auto gl = p.phases_gauss_legendre(x + T);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(std::abs(g1[i] - g0[i] - p.phase_advance()[i]) < 2e-11);
      CHECK(std::abs(gl[i] - g1[i]) < 1e-10);
    }
  }
  CHECK(p.phases(0.0) == profile::Triple{0.0, 0.0, 0.0});
  const auto negative = p.phases(-0.5);
  const auto positive = p.phases(0.5);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(negative[i] + positive[i]) < 1e-12);
}

TEST_CASE("sample bundles consistent derivatives") {
  const RadialProfile p(params::resolve(example_seed()));
  const auto s = p.sample(0.9);
  CHECK(s.h == p.h(0.9));
  CHECK(std::abs(s.v - 0.5 * std::log(s.h)) < 1e-15);
  CHECK(std::abs(s.v_x - 0.5 * s.h_x / s.h) < 1e-15);
  const double e = 1e-5;
  for (int i = 0; i < 3; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    CHECK(std::abs((p.amplitude(i, 0.9 + e) - p.amplitude(i, 0.9 - e)) / (2 * e) - s.F_x[idx]) < 1e-8);
    CHECK(std::abs(s.G_x[idx] - p.phase_rate(i, 0.9)) < 1e-15);
  }
}
