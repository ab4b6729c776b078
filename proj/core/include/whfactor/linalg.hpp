#pragma once

#include <functional>

#include "whfactor/error.hpp"
#include "whfactor/types.hpp"

namespace whfactor::linalg {

/// Complex Schur form A = U T U* with the eigenvalues accepted by a
/// predicate moved to the leading diagonal positions. The first
/// `selected` columns of U span the corresponding invariant subspace.
struct OrderedSchur {
  ComplexMatrix t;
  ComplexMatrix u;
  Index selected = 0;
};

OrderedSchur ordered_schur(const ComplexMatrix& a,
                           const std::function<bool(Complex)>& select);

/// Reorders an existing Schur pair in place by adjacent Givens swaps.
Index reorder_schur(ComplexMatrix& t, ComplexMatrix& u,
                    const std::function<bool(Complex)>& select);

/// Solves S11 X - X S22 = rhs for upper-triangular S11, S22 with disjoint
/// diagonals.
ComplexMatrix solve_triangular_sylvester(const ComplexMatrix& s11,
                                         const ComplexMatrix& s22,
                                         const ComplexMatrix& rhs);

/// Solves the Stein equation X = F* X F + W. Requires lambda_i conj(lambda_j)
/// != 1 for all eigenvalue pairs of F.
ComplexMatrix solve_stein(const ComplexMatrix& f, const ComplexMatrix& w);

ComplexVector eigenvalues(const ComplexMatrix& a);

double spectral_norm(const ComplexMatrix& a);

/// Smallest eigenvalue of (M + M*)/2.
double min_hermitian_eigenvalue(const ComplexMatrix& m);

/// LU-based estimate of 1/cond_1(a); 1 for an empty matrix.
double reciprocal_condition(const ComplexMatrix& a);

/// 2-norm condition number; 1 for an empty matrix.
double condition_number(const ComplexMatrix& a);

/// k-th of n equispaced points on the unit circle, exp(2 pi i k / n).
Complex circle_point(Index k, Index n);

/// Solves a x = b, throwing Error(kind) when a is numerically singular
/// relative to `rcond_min`.
ComplexMatrix checked_solve(const ComplexMatrix& a, const ComplexMatrix& b,
                            double rcond_min, ErrorKind kind,
                            const char* what);

}  // namespace whfactor::linalg
