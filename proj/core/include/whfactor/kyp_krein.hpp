#pragma once

#include <utility>

#include "whfactor/realization.hpp"

namespace whfactor {

/// Counts of positive and negative eigenvalues of a selfadjoint matrix.
struct Inertia {
  Index positive = 0;
  Index negative = 0;

  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Selfadjoint invertible H solving the strict KYP inequality, with the
/// margins returned by verify_kyp and verify_adjoint_kyp for it.
struct KypCertificate {
  ComplexMatrix h;
  double margin = 0.0;
  double adjoint_margin = 0.0;
  Inertia inertia;
  /// State-weight slack used when constructing h.
  double slack = 0.0;
};

/// C^n with the indefinite inner product [x, y] = <G x, y> for a
/// selfadjoint invertible Gram matrix G.
class KreinSpace {
 public:
  explicit KreinSpace(ComplexMatrix gram, const Tolerances& tol = {});

  const ComplexMatrix& gram() const noexcept { return gram_; }
  const ComplexMatrix& gram_inverse() const noexcept { return gram_inverse_; }
  Index dim() const noexcept { return gram_.rows(); }

 private:
  ComplexMatrix gram_;
  ComplexMatrix gram_inverse_;
};

/// Throws NotSelfadjoint when |H - H*| exceeds tol.sym * max(1, |H|) and
/// SingularGram when an eigenvalue of H is numerically zero.
Inertia inertia_of(const ComplexMatrix& h, const Tolerances& tol = {});

/// lambda_min(diag(H, I) - S* diag(H, I) S) for the system matrix S.
/// Positive values certify the strict KYP inequality with that slack.
double verify_kyp(const StateSpaceSystem& sys, const ComplexMatrix& h,
                  const Tolerances& tol = {});

/// lambda_min(diag(H^{-1}, I) - S diag(H^{-1}, I) S*), the strict KYP
/// inequality for the adjoint system with H^{-1}.
double verify_adjoint_kyp(const StateSpaceSystem& sys, const ComplexMatrix& h,
                          const Tolerances& tol = {});

/// Constructs H from the stable deflating subspace of the bounded-real
/// pencil (with a small state-weight slack so the inequality is strict)
/// and certifies it a posteriori.
///
/// Throws NotDichotomous, NormNotStrictlyContractive,
/// PencilSelectionFailed or CertificationFailed.
KypCertificate solve_kyp(const StateSpaceSystem& sys, const Tolerances& tol = {});

/// True iff H has as many positive eigenvalues as A has eigenvalues in the
/// disc and as many negative ones as A has outside.
bool inertia_check(const KypCertificate& cert, const DichotomyInfo& info);

/// S^[*] = G^{-1} S* G.
ComplexMatrix krein_adjoint(const ComplexMatrix& s, const KreinSpace& space);

/// (lambda_min(G - M* G M), lambda_min(G^{-1} - M G^{-1} M*)). Both
/// positive means M is a uniform bicontraction of the Krein space.
std::pair<double, double> bicontraction_margins(const ComplexMatrix& m,
                                                const KreinSpace& space);

}  // namespace whfactor
