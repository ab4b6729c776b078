#include "whfactor/toeplitz.hpp"

#include <algorithm>

namespace whfactor {

namespace {

void check_tail(const std::vector<ComplexMatrix>& coeffs, int tail, const char* name,
                const Tolerances& tol) {
  const double dropped = coeffs[static_cast<std::size_t>(tail)].norm();
  const double level = tol.tail * std::max(1.0, coeffs.front().norm());
  if (dropped > level) {
    throw Error(ErrorKind::kTailTooShort,
                std::string(name) + " coefficient at offset " + std::to_string(tail) +
                    " has norm " + std::to_string(dropped));
  }
}

}  // namespace

ToeplitzSection build_section(const StateSpaceSystem& sys, const DichotomyInfo& info,
                              Index n_blocks, int k_min, int k_max) {
  if (!sys.is_square()) {
    throw Error(ErrorKind::kDimensionMismatch, "Toeplitz section needs a square symbol");
  }
  if (n_blocks < 1) throw Error(ErrorKind::kInvalidArgument, "n_blocks must be positive");
  if (k_min > -(n_blocks - 1) || k_max < n_blocks - 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "coefficient range must cover offsets -(N-1)..(N-1)");
  }
  const LaurentCoefficients laurent = fourier_coefficients(sys, info, k_min, k_max);
  const Index m = sys.inputs();

  ToeplitzSection section;
  section.n_blocks = n_blocks;
  for (int k = k_min; k <= k_max; ++k) section.symbol_coeffs.emplace(k, laurent.at(k));
  section.symbol_coeffs[0] += ComplexMatrix::Identity(m, m);
  section.truncation_estimate =
      std::max(laurent.at(k_min).norm(), laurent.at(k_max).norm());

  section.matrix.resize(n_blocks * m, n_blocks * m);
  for (Index i = 0; i < n_blocks; ++i) {
    for (Index j = 0; j < n_blocks; ++j) {
      section.matrix.block(i * m, j * m, m, m) =
          section.symbol_coeffs.at(static_cast<int>(i - j));
    }
  }
  return section;
}

ComplexVector solve_via_factorization(const WienerHopfFactorization& wh,
                                      const ComplexVector& rhs, Index n_blocks, int tail,
                                      const Tolerances& tol) {
  if (wh.side != Side::kRight) {
    throw Error(ErrorKind::kInvalidArgument, "Toeplitz solve needs a right factorization");
  }
  if (tail < 1) throw Error(ErrorKind::kInvalidArgument, "tail must be positive");
  const Index m = wh.factor_inner.dterm.rows();
  if (rhs.size() != n_blocks * m) {
    throw Error(ErrorKind::kDimensionMismatch,
                "rhs has length " + std::to_string(rhs.size()) + ", expected " +
                    std::to_string(n_blocks * m));
  }
  const auto plus_inv = factor_laurent_coefficients(wh.inverse_inner, tail + 1);
  const auto minus_inv = factor_laurent_coefficients(wh.inverse_outer, tail + 1);
  check_tail(plus_inv, tail, "V_plus^{-1}", tol);
  check_tail(minus_inv, tail, "V_minus^{-1}", tol);
  const Index used = std::min<Index>(tail, n_blocks);

  // y = T_N(V_-^{-1}) rhs (upper triangular), x = T_N(V_+^{-1}) y (lower).
  ComplexVector y = ComplexVector::Zero(rhs.size());
  for (Index i = 0; i < n_blocks; ++i) {
    for (Index j = i; j < std::min(n_blocks, i + used); ++j) {
      y.segment(i * m, m) += minus_inv[static_cast<std::size_t>(j - i)] * rhs.segment(j * m, m);
    }
  }
  ComplexVector x = ComplexVector::Zero(rhs.size());
  for (Index i = 0; i < n_blocks; ++i) {
    for (Index j = std::max<Index>(0, i - used + 1); j <= i; ++j) {
      x.segment(i * m, m) += plus_inv[static_cast<std::size_t>(i - j)] * y.segment(j * m, m);
    }
  }
  return x;
}

ComplexVector solve_direct(const ToeplitzSection& section, const ComplexVector& rhs,
                           const Tolerances& tol) {
  if (rhs.size() != section.matrix.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "rhs length does not match the section");
  }
  Eigen::PartialPivLU<ComplexMatrix> lu(section.matrix);
  if (!(lu.rcond() > tol.sing)) {
    throw Error(ErrorKind::kSingularSection, "Toeplitz section is numerically singular");
  }
  return lu.solve(rhs);
}

}  // namespace whfactor
