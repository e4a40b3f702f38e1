#pragma once

#include <doctest.h>

#include "hamlag/error.hpp"
#include "hamlag/params.hpp"

namespace hamlag::test {

inline params::SeedParameters example_seed(params::C2Branch branch = params::C2Branch::Minus,
                                         params::C2Sign sign = params::C2Sign::Positive) {
  params::SeedParameters s;
  s.alpha = {0.0, -1.0, 3.0};
  s.a1 = 2.0;
  s.a2 = 1.0;
  s.c2_root_branch = branch;
  s.c2_sign = sign;
  return s;
}

template <class F>
ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected hamlag::Error");
  return ErrorKind::ConfigError;
}

}  // namespace hamlag::test
