#pragma once

#include <string_view>

#include "whfactor/realization.hpp"

namespace whfactor {

enum class Side { kRight, kLeft };
enum class SplitStrategy { kLeftIdentity, kRightIdentity, kSymmetricSqrt };
enum class Domain { kInner, kOuter };

std::string_view to_string(Side side);
std::string_view to_string(SplitStrategy strategy);
std::string_view to_string(Domain domain);
Side parse_side(std::string_view text);
SplitStrategy parse_split_strategy(std::string_view text);
Domain parse_domain(std::string_view text);

/// The associate main operator and its dichotomy.
struct CrossData {
  ComplexMatrix a_cross;
  DichotomyInfo info_cross;
  ComplexMatrix id_plus_d_inv;
};

/// I + D = d1 * d2.
struct DSplit {
  ComplexMatrix d1;
  ComplexMatrix d2;
  SplitStrategy strategy = SplitStrategy::kLeftIdentity;
};

/// dterm + z cvec (I - z amat)^{-1} bvec, analytic on a neighborhood of the
/// closed disc (inner) or of its closed exterior (outer).
struct FactorRealization {
  ComplexMatrix dterm;
  ComplexMatrix cvec;
  ComplexMatrix amat;
  ComplexMatrix bvec;
  Domain domain = Domain::kInner;
  /// Spectral radius of amat for inner factors; smallest eigenvalue
  /// modulus for outer ones (+inf when amat is empty).
  double spectrum_bound = 0.0;

  Index states() const noexcept { return amat.rows(); }
};

/// Right side: G = V_- V_+ with factor_outer = V_-, factor_inner = V_+.
/// Left side: G = W_+ W_- with factor_inner = W_+, factor_outer = W_-.
struct WienerHopfFactorization {
  Side side = Side::kRight;
  FactorRealization factor_outer;
  FactorRealization factor_inner;
  FactorRealization inverse_outer;
  FactorRealization inverse_inner;
  /// Pi_r (onto X_+^x along X_-) or Pi_l (onto X_-^x along X_+).
  ComplexMatrix projection;
  double basis_cond = 1.0;

  /// Factor product in the order of `side`.
  ComplexMatrix product(Complex z, const Tolerances& tol = {}) const;
};

struct MatchingResult {
  ComplexMatrix projection;
  double basis_cond = 1.0;
  /// Columns: basis of the subspace the projection annihilates, then a
  /// basis of its range.
  ComplexMatrix basis;
  /// Number of leading columns of `basis` spanning the kernel.
  Index kernel_dim = 0;
};

/// A - B (I + D)^{-1} C. Throws SingularIPlusD or DimensionMismatch.
ComplexMatrix a_cross(const StateSpaceSystem& sys, const Tolerances& tol = {});

/// Associate operator together with its dichotomy (throws NotDichotomous).
CrossData cross_data(const StateSpaceSystem& sys, const Tolerances& tol = {});

/// Realization of G^{-1} - I, where G = I + F.
StateSpaceSystem inverse_system(const StateSpaceSystem& sys, const Tolerances& tol = {});

/// Oblique projection for the direct sum X = X_- + X_+^x (right) or
/// X = X_+ + X_-^x (left). Throws MatchingFailed when the subspaces are
/// not complementary or the basis is worse conditioned than tol.match.
MatchingResult matching_projection(const DichotomyInfo& info, const CrossData& cross,
                                   Side side, const Tolerances& tol = {});

DSplit split_identity_plus_d(const ComplexMatrix& d, SplitStrategy strategy,
                             const Tolerances& tol = {});

/// Canonical Wiener-Hopf factorization of G = I + F.
WienerHopfFactorization factorize(const StateSpaceSystem& sys, Side side,
                                  const DSplit& split, const Tolerances& tol = {});

/// Convenience overload using the left_identity split.
WienerHopfFactorization factorize(const StateSpaceSystem& sys, Side side,
                                  const Tolerances& tol = {});

ComplexMatrix eval_factor(const FactorRealization& f, Complex z,
                          const Tolerances& tol = {});

/// Laurent coefficients of a factor on the unit circle: offsets 0..count-1
/// for inner factors, 0..-(count-1) for outer ones (index i holds offset
/// +i or -i respectively).
std::vector<ComplexMatrix> factor_laurent_coefficients(const FactorRealization& f,
                                                       int count);

}  // namespace whfactor
