#pragma once

#include <map>

#include "whfactor/wiener_hopf.hpp"

namespace whfactor {

/// Finite section T_N(G) with block (i, j) equal to the Laurent
/// coefficient g_{i-j} of G = I + F.
struct ToeplitzSection {
  std::map<int, ComplexMatrix> symbol_coeffs;
  Index n_blocks = 0;
  ComplexMatrix matrix;
  /// Largest norm of the two outermost stored coefficients; coefficients
  /// beyond the stored range are treated as zero and decay geometrically
  /// from this level.
  double truncation_estimate = 0.0;
};

/// Throws NotDichotomous or InvalidArgument (k range too short for the
/// requested number of blocks).
ToeplitzSection build_section(const StateSpaceSystem& sys, const DichotomyInfo& info,
                              Index n_blocks, int k_min, int k_max);

/// Solves T_N(G) x = rhs through T(G)^{-1} = T(V_+^{-1}) T(V_-^{-1}) for a
/// right factorization G = V_- V_+, using `tail` Laurent coefficients of
/// each inverse factor. Throws TailTooShort when the first dropped
/// coefficient is not negligible.
ComplexVector solve_via_factorization(const WienerHopfFactorization& wh,
                                      const ComplexVector& rhs, Index n_blocks, int tail,
                                      const Tolerances& tol = {});

/// Dense LU solve; throws SingularSection.
ComplexVector solve_direct(const ToeplitzSection& section, const ComplexVector& rhs,
                           const Tolerances& tol = {});

}  // namespace whfactor
