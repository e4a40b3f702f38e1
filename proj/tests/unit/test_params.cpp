#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "hamlag/params.hpp"

using namespace hamlag;
using namespace hamlag::params;
using hamlag::test::error_kind_of;
using hamlag::test::example_seed;

TEST_CASE("vieta constants") {
  const auto v = vieta_constants({0.0, -1.0, 3.0});
  CHECK(v.b == -2.0);
  CHECK(v.c == -3.0);
  CHECK(v.c1 == 0.0);
  const auto w = vieta_constants({1.0, 2.0, -3.0});
  CHECK(w.b == 0.0);
  CHECK(w.c == -7.0);
  CHECK(w.c1 == 6.0);
  CHECK(error_kind_of([] { vieta_constants({1.0, 1.0, 2.0}); }) == ErrorKind::DegenerateAngles);
}

TEST_CASE("feasibility") {
  const auto f = feasibility(2.0, 1.0, vieta_constants({0.0, -1.0, 3.0}));
  CHECK(f.feasible);
  CHECK(f.P == doctest::Approx(-12.0).epsilon(1e-15));
  CHECK(f.discriminant == doctest::Approx(128.0).epsilon(1e-15));
  const auto g = feasibility(2.0, 1.0, vieta_constants({1.0, 2.0, 3.0}));
  CHECK_FALSE(g.feasible);
  CHECK(g.P == doctest::Approx(496.0).epsilon(1e-15));
}

TEST_CASE("c2 squared roots") {
  const auto r = solve_c2(2.0, 1.0, vieta_constants({0.0, -1.0, 3.0}));
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] - (12.0 - 8.0 * std::sqrt(2.0))) < 1e-14);
  CHECK(std::abs(r[1] - (12.0 + 8.0 * std::sqrt(2.0))) < 1e-13);
  CHECK(error_kind_of([] { solve_c2(2.0, 1.0, vieta_constants({1.0, 2.0, 3.0})); }) == ErrorKind::Infeasible);
}

TEST_CASE("resolve the closing example, Minus branch") {
  const auto k = resolve(example_seed());
  const double s2 = std::sqrt(2.0);
  CHECK(std::abs(k.c2 - (2.0 * s2 - 2.0)) < 1e-14);
  CHECK(std::abs(k.c2 - std::sqrt(12.0 - 8.0 * s2)) < 1e-14);
  CHECK(std::abs(k.a3 - (6.0 - 4.0 * s2)) < 1e-14);
  CHECK(std::abs(k.a - (3.0 * k.a3 - 2.0) / k.c2) < 1e-14);
  CHECK(std::abs(k.a - (2.0 * s2 - 4.0)) < 1e-14);
  CHECK(std::abs(k.m.value() - 1.0 / (8.0 - 4.0 * s2)) < 1e-14);
  CHECK(std::abs(k.T - 2.34731895211189292330) < 1e-13);
  CHECK(std::abs(k.a * k.a - 2.0 * k.c2 * k.c2) < 1e-13);
}

TEST_CASE("resolve the closing example, Plus branch") {
  const auto k = resolve(example_seed(C2Branch::Plus));
  const double s2 = std::sqrt(2.0);
  CHECK(std::abs(k.c2 - (2.0 * s2 + 2.0)) < 1e-13);
  CHECK(std::abs(k.a3 - (6.0 + 4.0 * s2)) < 1e-13);
  CHECK(std::abs(k.a - (4.0 + 2.0 * s2)) < 1e-13);
  CHECK(std::abs(k.T - 0.866346293595532324865) < 1e-13);
}

TEST_CASE("negative c2 sign flips a") {
  const auto pos = resolve(example_seed());
  const auto neg = resolve(example_seed(C2Branch::Minus, C2Sign::Negative));
  CHECK(neg.c2 == -pos.c2);
  CHECK(neg.a == doctest::Approx(-pos.a));
  CHECK(neg.a3 == pos.a3);
}

TEST_CASE("resolved constants satisfy the cubic and coefficient identities") {
  for (auto branch : {C2Branch::Minus, C2Branch::Plus}) {
    const auto k = resolve(example_seed(branch));
    for (double r : cubic_root_residuals(k)) CHECK(std::abs(r) <= 1e-10);
    for (double r : coefficient_mismatch(k)) CHECK(std::abs(r) <= 1e-9);
  }
}

TEST_CASE("resolve rejects bad seeds") {
  auto s = example_seed();
  s.alpha = {1.0, 2.0, 3.0};
  CHECK(error_kind_of([&] { resolve(s); }) == ErrorKind::Infeasible);
  s = example_seed();
  s.a2 = 2.0;
  CHECK(error_kind_of([&] { resolve(s); }) == ErrorKind::DegenerateProfile);
  s = example_seed();
  s.a2 = 3.0;
  CHECK(error_kind_of([&] { resolve(s); }) == ErrorKind::DomainError);
  s = example_seed();
  s.alpha = {0.0, 0.0, 3.0};
  CHECK(error_kind_of([&] { resolve(s); }) == ErrorKind::DegenerateAngles);
}

TEST_CASE("amplitude partition of unity is an algebraic identity") {
  const Angles alpha{0.0, -1.0, 3.0};
  for (double h : {1.0, 1.3, 1.77, 2.0}) {
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) sum += (h + partner_product(alpha, i)) / amplitude_denominator(alpha, i);
    CHECK(std::abs(sum - 1.0) < 1e-14);
  }
}

TEST_CASE("perturbation scales exactly one field") {
  const auto k = resolve(example_seed());
  const auto p = perturbed(k, "c2", 1.01);
  CHECK(p.c2 == doctest::Approx(1.01 * k.c2));
  CHECK(p.a == k.a);
  CHECK(p.a3 == k.a3);
  const auto q = perturbed(k, "m", 1.01);
  CHECK(q.m.value() == doctest::Approx(1.01 * k.m.value()));
  CHECK(error_kind_of([&] { perturbed(k, "b", 1.01); }) == ErrorKind::DomainError);
}
