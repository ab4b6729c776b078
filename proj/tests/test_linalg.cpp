#include <random>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "whfactor/linalg.hpp"
#include "whfactor/random_systems.hpp"

namespace {

using namespace whfactor;

bool inside(Complex z) { return std::abs(z) < 1.0; }

TEST(OrderedSchur, SelectedEigenvaluesLead) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 10;
    const ComplexMatrix a = random_dichotomous_matrix(rng, n, 0.1);
    const auto schur = linalg::ordered_schur(a, inside);
    const double scale = a.norm();
    EXPECT_LT((schur.u * schur.t * schur.u.adjoint() - a).norm(), 1e-12 * scale);
    EXPECT_LT((schur.u.adjoint() * schur.u - ComplexMatrix::Identity(n, n)).norm(), 1e-12);
    EXPECT_EQ(schur.t.triangularView<Eigen::StrictlyLower>().toDenseMatrix().norm(), 0.0);

    Index expected = 0;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(a, false);
    for (Index i = 0; i < n; ++i) expected += inside(es.eigenvalues()(i)) ? 1 : 0;
    ASSERT_EQ(schur.selected, expected);
    for (Index i = 0; i < n; ++i) EXPECT_EQ(inside(schur.t(i, i)), i < expected);
  }
}

TEST(TriangularSylvester, MatchesKroneckerSolve) {
  std::mt19937_64 rng(2);
  const Index p = 3, q = 4;
  ComplexMatrix s11 = oracle::random_matrix(rng, p, p).triangularView<Eigen::Upper>();
  ComplexMatrix s22 = oracle::random_matrix(rng, q, q).triangularView<Eigen::Upper>();
  for (Index i = 0; i < q; ++i) s22(i, i) += 5.0;  // keep the diagonals apart
  const ComplexMatrix rhs = oracle::random_matrix(rng, p, q);
  const ComplexMatrix x = linalg::solve_triangular_sylvester(s11, s22, rhs);

  // vec(S11 X - X S22) = (I kron S11 - S22^T kron I) vec(X)
  ComplexMatrix k = ComplexMatrix::Zero(p * q, p * q);
  for (Index j = 0; j < q; ++j) {
    k.block(j * p, j * p, p, p) += s11;
    for (Index l = 0; l < q; ++l) {
      k.block(l * p, j * p, p, p) -= s22(j, l) * ComplexMatrix::Identity(p, p);
    }
  }
  const Eigen::VectorXcd vec_rhs = Eigen::Map<const Eigen::VectorXcd>(rhs.data(), p * q);
  const Eigen::VectorXcd vec_x = k.fullPivLu().solve(vec_rhs);
  EXPECT_LT((Eigen::Map<const Eigen::VectorXcd>(x.data(), p * q) - vec_x).norm(), 1e-12);
}

TEST(Stein, MatchesKroneckerSolve) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 1 + trial % 6;
    const ComplexMatrix f = random_dichotomous_matrix(rng, n, 0.2);
    const ComplexMatrix w = oracle::random_matrix(rng, n, n);
    const ComplexMatrix x = linalg::solve_stein(f, w);
    EXPECT_LT((x - f.adjoint() * x * f - w).norm(), 1e-10 * std::max(1.0, x.norm()));
  }
}

TEST(Stein, StableCaseGivesSeriesSolution) {
  // X = sum_k (F*)^k W F^k for a contraction F.
  ComplexMatrix f(2, 2);
  f << 0.5, 0.2, 0.0, -0.3;
  const ComplexMatrix w = ComplexMatrix::Identity(2, 2);
  ComplexMatrix series = ComplexMatrix::Zero(2, 2);
  ComplexMatrix power = ComplexMatrix::Identity(2, 2);
  for (int k = 0; k < 200; ++k) {
    series += power.adjoint() * w * power;
    power = power * f;
  }
  EXPECT_LT((linalg::solve_stein(f, w) - series).norm(), 1e-13);
}

TEST(Norms, SpectralNormAndConditioning) {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 3.0;
  a(1, 1) = Complex(0.0, -0.5);
  EXPECT_NEAR(linalg::spectral_norm(a), 3.0, 1e-15);
  EXPECT_NEAR(linalg::condition_number(a), 6.0, 1e-13);
  EXPECT_EQ(linalg::condition_number(ComplexMatrix(0, 0)), 1.0);
  EXPECT_EQ(linalg::reciprocal_condition(ComplexMatrix(0, 0)), 1.0);
}

TEST(CheckedSolve, ThrowsRequestedKind) {
  const ComplexMatrix singular = ComplexMatrix::Ones(2, 2);
  EXPECT_ERROR_KIND(linalg::checked_solve(singular, ComplexMatrix::Identity(2, 2), 1e-12,
                                          ErrorKind::kSingularIPlusD, "I + D"),
                    ErrorKind::kSingularIPlusD);
}

TEST(CirclePoint, Equispaced) {
  EXPECT_NEAR(std::abs(linalg::circle_point(1, 4) - Complex(0.0, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(linalg::circle_point(3, 6) - Complex(-1.0, 0.0)), 0.0, 1e-15);
}

}  // namespace
