#pragma once

#include <functional>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "whfactor/error.hpp"
#include "whfactor/random_systems.hpp"
#include "whfactor/realization.hpp"

namespace fixtures {

using whfactor::Complex;
using whfactor::ComplexMatrix;
using whfactor::StateSpaceSystem;

inline ComplexMatrix s(Complex v) {
  ComplexMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

/// G = 1 + 0.5 z: A = 0, B = 1, C = 0.5, D = 0.
inline StateSpaceSystem shift_example() { return {s(0.0), s(1.0), s(0.5), s(0.0)}; }

/// G = 1 + 0.4 z / (1 - 2z): A = 2, B = 0.4, C = 1, D = 0.
inline StateSpaceSystem pole_example() { return {s(2.0), s(0.4), s(1.0), s(0.0)}; }

/// Randomized family: p = m = 1 + (t mod 4), at most 20 states, poles at
/// distance >= 0.2 from T, rescaled to sup norm in [0.5, 0.9].
inline std::vector<StateSpaceSystem> random_suite(int count, std::uint64_t seed,
                                                  double state_margin = 0.0) {
  std::mt19937_64 rng(seed);
  std::vector<StateSpaceSystem> out;
  for (int t = 0; t < count; ++t) {
    whfactor::RandomSymbolOptions options;
    options.size = 1 + t % 4;
    options.state_margin = state_margin;
    out.push_back(whfactor::realize_rational(whfactor::random_rational_symbol(rng, options)));
  }
  return out;
}

}  // namespace fixtures

/// Asserts that `stmt` throws whfactor::Error of the given kind.
#define EXPECT_ERROR_KIND(stmt, expected_kind)                                   \
  do {                                                                           \
    try {                                                                        \
      stmt;                                                                      \
      ADD_FAILURE() << "expected " << whfactor::to_string(expected_kind);        \
    } catch (const whfactor::Error& e_) {                                        \
      EXPECT_EQ(e_.kind(), expected_kind) << e_.what();                          \
    }                                                                            \
  } while (0)
