#pragma once

namespace whfactor {

/// Numerical thresholds shared by all modules. The CLI can override each
/// field through a WHFACTOR_TOL_<NAME> environment variable.
struct Tolerances {
  /// Eigenvalues closer than this to the unit circle are rejected.
  double dichotomy = 1e-6;
  /// Idempotence defect allowed for computed projections.
  double proj = 1e-8;
  /// Agreement between the Schur-based and quadrature projections
  /// (relative to max(1, |P|)).
  double cross = 1e-8;
  /// Relative singular-value cutoff for numerical rank.
  double rank = 1e-12;
  /// Reciprocal condition number below which a matrix counts as singular.
  double sing = 1e-12;
  /// Allowed |H - H*| relative to max(1, |H|).
  double sym = 1e-10;
  /// Required gap 1 - sup|F| before a symbol counts as strictly contractive.
  double norm = 1e-6;
  /// Largest admissible condition number of a matched-basis matrix.
  double match = 1e8;
  /// Largest admissible norm of the first dropped Laurent coefficient
  /// (relative to max(1, |c_0|)).
  double tail = 1e-12;
};

}  // namespace whfactor
