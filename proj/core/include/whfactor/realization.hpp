#pragma once

#include <vector>

#include "whfactor/error.hpp"
#include "whfactor/tolerances.hpp"
#include "whfactor/types.hpp"

namespace whfactor {

/// Discrete-time system x(n+1) = A x(n) + B u(n), y(n) = C x(n) + D u(n).
/// The constructor validates dimensions and finiteness; instances are
/// immutable afterwards.
class StateSpaceSystem {
 public:
  StateSpaceSystem(ComplexMatrix a, ComplexMatrix b, ComplexMatrix c,
                   ComplexMatrix d);

  const ComplexMatrix& a() const noexcept { return a_; }
  const ComplexMatrix& b() const noexcept { return b_; }
  const ComplexMatrix& c() const noexcept { return c_; }
  const ComplexMatrix& d() const noexcept { return d_; }

  Index states() const noexcept { return a_.rows(); }
  Index inputs() const noexcept { return d_.cols(); }
  Index outputs() const noexcept { return d_.rows(); }
  bool is_square() const noexcept { return inputs() == outputs(); }

  /// [[A, B], [C, D]]
  ComplexMatrix system_matrix() const;

 private:
  ComplexMatrix a_, b_, c_, d_;
};

/// Spectral splitting of a dichotomous main operator. basis_minus spans
/// the invariant subspace for eigenvalues outside the closed disc,
/// basis_plus the one for eigenvalues inside; p_plus projects onto the
/// latter along the former.
struct DichotomyInfo {
  ComplexMatrix p_plus;
  ComplexMatrix basis_minus;
  ComplexMatrix basis_plus;
  double margin = 0.0;
  Index dim_minus = 0;
  Index dim_plus = 0;
};

struct SimplePole {
  Complex location;
  ComplexMatrix residue;
};

/// constant + sum_k poly_coeffs[k-1] z^k + sum_j residue_j / (z - q_j)
struct RationalSymbolSpec {
  ComplexMatrix constant;
  std::vector<ComplexMatrix> poly_coeffs;
  std::vector<SimplePole> poles;

  Index rows() const noexcept { return constant.rows(); }
  Index cols() const noexcept { return constant.cols(); }

  /// Throws PoleOnCircle, PoleAtOrigin, DimensionMismatch or
  /// InvalidArgument (non-finite data).
  void validate(const Tolerances& tol = {}) const;

  /// Direct partial-fraction evaluation.
  ComplexMatrix evaluate(Complex z) const;
};

/// Laurent coefficients c_k for k in [k_min, k_max].
struct LaurentCoefficients {
  int k_min = 0;
  std::vector<ComplexMatrix> coeffs;

  int k_max() const noexcept { return k_min + static_cast<int>(coeffs.size()) - 1; }
  const ComplexMatrix& at(int k) const;
};

/// D + z C (I - z A)^{-1} B. Exactly D at z = 0. Throws SingularResolvent
/// when I - zA is numerically singular.
ComplexMatrix eval_transfer(const StateSpaceSystem& sys, Complex z,
                            const Tolerances& tol = {});

/// min over eigenvalues of ||lambda| - 1|; +inf for an empty matrix.
double spectral_margin(const ComplexMatrix& a);

/// Riesz projection onto the spectral subspace inside the unit disc,
/// computed with the trapezoidal rule on `quadrature_order` equispaced
/// circle nodes.
ComplexMatrix spectral_projection_riesz(const ComplexMatrix& a,
                                        int quadrature_order = 256,
                                        const Tolerances& tol = {});

/// Same projection from a reordered Schur form and a triangular Sylvester
/// solve.
ComplexMatrix spectral_projection_ordered(const ComplexMatrix& a,
                                          const Tolerances& tol = {});

DichotomyInfo dichotomy_info(const ComplexMatrix& a, const Tolerances& tol = {});

/// Grid estimate (optionally golden-section refined) of max_{|z|=1} |F(z)|.
/// A lower bound on the true supremum.
double sup_norm_on_circle(const StateSpaceSystem& sys, int grid_points = 512,
                          bool refine = true, const Tolerances& tol = {});

/// Block-diagonal dichotomous realization of a rational symbol with simple
/// poles: inner blocks (polynomial shift, poles outside the disc) first,
/// then outer blocks (poles inside the disc).
StateSpaceSystem realize_rational(const RationalSymbolSpec& spec,
                                  const Tolerances& tol = {});

/// Laurent coefficients of F on the unit circle.
LaurentCoefficients fourier_coefficients(const StateSpaceSystem& sys,
                                         const DichotomyInfo& info, int k_min,
                                         int k_max);

}  // namespace whfactor
