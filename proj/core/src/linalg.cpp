#include "whfactor/linalg.hpp"

#include <cmath>
#include <numbers>

#include "whfactor/error.hpp"

namespace whfactor::linalg {

namespace {

// Swaps the diagonal entries k and k+1 of an upper-triangular t.
void swap_adjacent(ComplexMatrix& t, ComplexMatrix& u, Index k) {
  const Complex t11 = t(k, k);
  const Complex t22 = t(k + 1, k + 1);
  const Complex t12 = t(k, k + 1);
  // Eigenvector of the 2x2 block belonging to t22.
  Complex x0 = t12;
  Complex x1 = t22 - t11;
  const double nrm = std::hypot(std::abs(x0), std::abs(x1));
  if (nrm == 0.0) return;  // equal eigenvalues, nothing to swap
  x0 /= nrm;
  x1 /= nrm;
  // Unitary G with first column (x0, x1).
  Eigen::Matrix2cd g;
  g << x0, -std::conj(x1), x1, std::conj(x0);
  t.middleRows(k, 2) = (g.adjoint() * t.middleRows(k, 2)).eval();
  t.middleCols(k, 2) = (t.middleCols(k, 2) * g).eval();
  u.middleCols(k, 2) = (u.middleCols(k, 2) * g).eval();
  t(k + 1, k) = Complex(0.0, 0.0);
}

}  // namespace

Index reorder_schur(ComplexMatrix& t, ComplexMatrix& u,
                    const std::function<bool(Complex)>& select) {
  const Index n = t.rows();
  Index placed = 0;
  for (Index j = 0; j < n; ++j) {
    if (!select(t(j, j))) continue;
    for (Index k = j - 1; k >= placed; --k) swap_adjacent(t, u, k);
    ++placed;
  }
  return placed;
}

OrderedSchur ordered_schur(const ComplexMatrix& a,
                           const std::function<bool(Complex)>& select) {
  OrderedSchur out;
  if (a.rows() == 0) {
    out.t = a;
    out.u = ComplexMatrix::Identity(0, 0);
    return out;
  }
  Eigen::ComplexSchur<ComplexMatrix> schur(a, true);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorKind::kInvalidArgument, "complex Schur decomposition did not converge");
  }
  out.t = schur.matrixT();
  out.u = schur.matrixU();
  out.t.triangularView<Eigen::StrictlyLower>().setZero();
  out.selected = reorder_schur(out.t, out.u, select);
  return out;
}

ComplexMatrix solve_triangular_sylvester(const ComplexMatrix& s11,
                                         const ComplexMatrix& s22,
                                         const ComplexMatrix& rhs) {
  const Index m = s11.rows();
  const Index n = s22.rows();
  ComplexMatrix x(m, n);
  for (Index j = 0; j < n; ++j) {
    ComplexVector col = rhs.col(j);
    for (Index l = 0; l < j; ++l) col += x.col(l) * s22(l, j);
    ComplexMatrix shifted = s11;
    shifted.diagonal().array() -= s22(j, j);
    x.col(j) = shifted.triangularView<Eigen::Upper>().solve(col);
  }
  return x;
}

ComplexMatrix solve_stein(const ComplexMatrix& f, const ComplexMatrix& w) {
  const Index n = f.rows();
  if (n == 0) return ComplexMatrix(0, 0);
  Eigen::ComplexSchur<ComplexMatrix> schur(f, true);
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& u = schur.matrixU();
  const ComplexMatrix wt = u.adjoint() * w * u;
  const ComplexMatrix t_adj = t.adjoint();
  // Column j of X - T* X T = W: (I - t_jj T*) x_j = w_j + T* sum_{l<j} x_l t_lj.
  ComplexMatrix x(n, n);
  for (Index j = 0; j < n; ++j) {
    ComplexVector acc = ComplexVector::Zero(n);
    for (Index l = 0; l < j; ++l) acc += x.col(l) * t(l, j);
    ComplexVector rhs = wt.col(j) + t_adj * acc;
    ComplexMatrix lhs = -t(j, j) * t_adj;
    lhs.diagonal().array() += 1.0;
    x.col(j) = lhs.triangularView<Eigen::Lower>().solve(rhs);
  }
  return u * x * u.adjoint();
}

ComplexVector eigenvalues(const ComplexMatrix& a) {
  if (a.rows() == 0) return ComplexVector(0);
  Eigen::ComplexSchur<ComplexMatrix> schur(a, false);
  return schur.matrixT().diagonal();
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

double min_hermitian_eigenvalue(const ComplexMatrix& m) {
  if (m.rows() == 0) return std::numeric_limits<double>::infinity();
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(herm, Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

double reciprocal_condition(const ComplexMatrix& a) {
  if (a.rows() == 0) return 1.0;
  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  return lu.rcond();
}

double condition_number(const ComplexMatrix& a) {
  if (a.size() == 0) return 1.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

Complex circle_point(Index k, Index n) {
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                       static_cast<double>(n);
  return std::polar(1.0, theta);
}

ComplexMatrix checked_solve(const ComplexMatrix& a, const ComplexMatrix& b,
                            double rcond_min, ErrorKind kind,
                            const char* what) {
  if (a.rows() == 0) return ComplexMatrix(0, b.cols());
  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  const double rc = lu.rcond();
  if (!(rc > rcond_min)) {
    throw Error(kind,
                std::string(what) + " is numerically singular (rcond " +
                    std::to_string(rc) + ")");
  }
  return lu.solve(b);
}

}  // namespace whfactor::linalg
