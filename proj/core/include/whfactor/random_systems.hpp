#pragma once

#include <random>

#include "whfactor/realization.hpp"

namespace whfactor {

/// Parameters of the randomized symbol family used by tests, benchmarks and
/// `whfactor generate`.
struct RandomSymbolOptions {
  Index size = 2;           ///< p = m
  Index max_states = 20;
  double pole_gap = 0.2;    ///< min ||q| - 1| over poles
  double pole_separation = 0.15;  ///< min distance between two poles
  double state_margin = 0.0;  ///< extra min ||1/q| - 1| over realized eigenvalues
  int max_poly_degree = 1;
  double target_norm_min = 0.5;
  double target_norm_max = 0.9;
};

/// Random rational symbol with simple poles, rescaled so that the sup norm
/// of its realization on the circle is drawn from
/// [target_norm_min, target_norm_max].
RationalSymbolSpec random_rational_symbol(std::mt19937_64& rng,
                                          const RandomSymbolOptions& options);

/// V diag(lambda) V^{-1} with eigenvalue moduli drawn uniformly from
/// [0, 1 - margin] and [1 + margin, 1 + margin + 1.5], and a moderately
/// conditioned random V.
ComplexMatrix random_dichotomous_matrix(std::mt19937_64& rng, Index n, double margin);

ComplexMatrix random_complex_matrix(std::mt19937_64& rng, Index rows, Index cols);

}  // namespace whfactor
