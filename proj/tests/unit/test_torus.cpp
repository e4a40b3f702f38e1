#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "common.hpp"
#include "hamlag/torus.hpp"

using namespace hamlag;
using namespace hamlag::torus;
using hamlag::test::error_kind_of;
using hamlag::test::example_seed;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("lambdas at tau = 0 are phase-advance differences") {
  const profile::RadialProfile p(params::resolve(example_seed()));
  const auto L = p.phase_advance();
  const auto l = lambdas(p, 0.0);
  CHECK(l[0] == doctest::Approx(L[0] - L[2]));
  CHECK(l[1] == doctest::Approx(L[1] - L[2]));
  const auto m = lambdas(p, 0.5);
  CHECK(m[0] == doctest::Approx(L[0] - L[2] + (0.0 - 3.0) * 0.5));
  CHECK(m[1] == doctest::Approx(L[1] - L[2] + (-1.0 - 3.0) * 0.5));
}

TEST_CASE("non-integer angles are rejected in torus mode") {
  auto s = example_seed();
  s.alpha = {0.0, -1.0, 3.5};
  s.a1 = 2.0;
  s.a2 = 1.0;
  try {
    const profile::RadialProfile p(params::resolve(s));
    CHECK(error_kind_of([&] { lambdas(p, 0.0); }) == ErrorKind::ModeError);
  } catch (const Error&) {
    CHECK(error_kind_of([&] { y_period(s.alpha); }) == ErrorKind::ModeError);
  }
  CHECK(error_kind_of([] { y_period({0.0, -1.0, 3.5}); }) == ErrorKind::ModeError);
}

TEST_CASE("rational approximation") {
  auto r = rational_approx(0.5, 10);
  CHECK(r.fraction == Rational{1, 2});
  CHECK(r.error == 0.0);
  r = rational_approx(1.0 / 3.0 + 1e-9, 100);
  CHECK(r.fraction == Rational{1, 3});
  CHECK(std::abs(r.error - 1e-9) < 1e-15);
  r = rational_approx(std::numbers::pi, 120);
  CHECK(r.fraction == Rational{355, 113});
  CHECK(std::abs(r.error - 2.667e-7) < 1e-9);
}

TEST_CASE("convergents are best approximations") {
  const double xi = std::numbers::pi;
  const auto best = rational_approx(xi, 120);
  for (std::int64_t q = 1; q <= 120; ++q) {
    const double p = std::round(xi * static_cast<double>(q));
    CHECK(std::abs(xi - p / static_cast<double>(q)) >= best.error - 1e-16);
  }
  const auto cs = convergents(-0.75, 10);
  REQUIRE_FALSE(cs.empty());
  CHECK(cs.back() == Rational{-3, 4});
}

TEST_CASE("closure multiplier") {
  const double tol = 1e-6;
  auto m = find_N(kTwoPi / 3.0, kTwoPi / 2.0, 50, tol);
  CHECK(m.N == 6);
  m = find_N(0.0, 0.0, 50, tol);
  CHECK(m.N == 1);
  m = find_N(kTwoPi * (0.25 + 0.4 * tol), kTwoPi * 0.2, 50, tol);
  CHECK(m.N == 20);
  CHECK(m.approx1.error <= tol);
  CHECK(m.approx2.error <= tol);
  CHECK(m.N == std::lcm(m.approx1.fraction.q, m.approx2.fraction.q));
  CHECK(error_kind_of([&] { find_N(kTwoPi * std::numbers::sqrt2, 0.0, 50, 1e-9); }) == ErrorKind::NoClosure);
}

TEST_CASE("y period") {
  CHECK(y_period({0.0, -1.0, 3.0}) == doctest::Approx(kTwoPi));
  CHECK(y_period({1.0, 3.0, 5.0}) == doctest::Approx(kTwoPi / 2.0));
  const profile::RadialProfile p(params::resolve(example_seed()));
  CHECK(y_closure_error(p, kTwoPi, 8) <= 1e-10);
  CHECK(y_closure_error(p, 1.0, 8) > 1e-2);
}

TEST_CASE("search finds closing tori") {
  SearchConfig c;
  c.n_a1 = 16;
  c.n_a2 = 16;
  c.verify_top = 4;
  const auto certs = search(c);
  REQUIRE_FALSE(certs.empty());
  for (std::size_t i = 1; i < certs.size(); ++i) CHECK(certs[i - 1].closure_error <= certs[i].closure_error);
  const auto& best = certs.front();
  CHECK(best.closure_error <= c.closure_tol);
  CHECK(best.N == std::lcm(best.approx1.fraction.q, best.approx2.fraction.q));
  const profile::RadialProfile p(params::resolve(best.seed));
  CHECK(check_closure(p, best.tau, best.N, 6) == doctest::Approx(best.closure_error).epsilon(1e-6));
  CHECK(check_closure(p, best.tau, best.N - 1, 6) > 1e-2);

  SearchConfig t = c;
  t.threads = 3;
  const auto again = search(t);
  REQUIRE(again.size() == certs.size());
  for (std::size_t i = 0; i < certs.size(); ++i) {
    CHECK(again[i].N == certs[i].N);
    CHECK(again[i].tau == certs[i].tau);
    CHECK(again[i].closure_error == certs[i].closure_error);
  }
}

TEST_CASE("search over an infeasible triple is empty") {
  SearchConfig c;
  c.alpha = {1.0, 2.0, 3.0};
  c.n_a1 = 4;
  c.n_a2 = 4;
  CHECK(error_kind_of([&] { search(c); }) == ErrorKind::EmptySearch);
}
