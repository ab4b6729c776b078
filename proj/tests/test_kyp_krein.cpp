#include <cmath>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "whfactor/kyp_krein.hpp"
#include "whfactor/linalg.hpp"
#include "whfactor/wiener_hopf.hpp"

namespace {

using namespace whfactor;
using fixtures::s;

// Smallest eigenvalue of the real symmetric [[a, b], [b, c]].
double min_eig_2x2(double a, double b, double c) {
  return 0.5 * (a + c - std::sqrt((a - c) * (a - c) + 4.0 * b * b));
}

TEST(VerifyKyp, ShiftSystemHalf) {
  // diag(0.5, 1) - Sigma* diag(0.5, 1) Sigma = diag(0.25, 0.5)
  EXPECT_NEAR(verify_kyp(fixtures::shift_example(), s(0.5)), 0.25, 1e-15);
}

TEST(VerifyKyp, PoleSystemMinusOne) {
  // Test matrix [[2, 0.8], [0.8, 1.16]], determinant 1.68.
  const double expected = min_eig_2x2(2.0, 0.8, 1.16);
  EXPECT_GT(expected, 0.0);
  EXPECT_NEAR(verify_kyp(fixtures::pole_example(), s(-1.0)), expected, 1e-14);
}

TEST(VerifyKyp, TooSmallHFails) {
  // diag(-0.15, 0.9)
  EXPECT_NEAR(verify_kyp(fixtures::shift_example(), s(0.1)), -0.15, 1e-15);
}

TEST(VerifyKyp, RejectsNonSelfadjoint) {
  ComplexMatrix h(2, 2);
  h << 1.0, 0.5, 0.0, 1.0;
  const StateSpaceSystem sys(ComplexMatrix::Zero(2, 2), ComplexMatrix::Ones(2, 1),
                             ComplexMatrix::Ones(1, 2), s(0.0));
  EXPECT_ERROR_KIND(verify_kyp(sys, h), ErrorKind::kNotSelfadjoint);
}

TEST(VerifyKyp, RejectsWrongSize) {
  EXPECT_ERROR_KIND(verify_kyp(fixtures::shift_example(), ComplexMatrix::Identity(2, 2)),
                    ErrorKind::kDimensionMismatch);
}

TEST(VerifyAdjointKyp, ShiftSystemHalf) {
  // diag(2, 1) - Sigma diag(2, 1) Sigma* = diag(1, 0.5)
  EXPECT_NEAR(verify_adjoint_kyp(fixtures::shift_example(), s(0.5)), 0.5, 1e-15);
}

TEST(VerifyAdjointKyp, PoleSystemMinusOne) {
  // diag(-1, 1) - Sigma diag(-1, 1) Sigma* = [[2.84, 2], [2, 2]]
  const double expected = min_eig_2x2(2.84, 2.0, 2.0);
  EXPECT_GT(expected, 0.0);
  EXPECT_NEAR(verify_adjoint_kyp(fixtures::pole_example(), s(-1.0)), expected, 1e-14);
}

TEST(VerifyAdjointKyp, SingularGram) {
  EXPECT_ERROR_KIND(verify_adjoint_kyp(fixtures::shift_example(), s(0.0)),
                    ErrorKind::kSingularGram);
}

TEST(SolveKyp, StableScalarInAdmissibleInterval) {
  const KypCertificate cert = solve_kyp(fixtures::shift_example());
  const double h = cert.h(0, 0).real();
  EXPECT_GT(h, 0.25);
  EXPECT_LT(h, 1.0);
  EXPECT_EQ(cert.inertia, (Inertia{1, 0}));
  EXPECT_GT(cert.margin, 0.0);
  EXPECT_GT(cert.adjoint_margin, 0.0);
}

TEST(SolveKyp, AntistableScalarNegative) {
  const KypCertificate cert = solve_kyp(fixtures::pole_example());
  EXPECT_LT(cert.h(0, 0).real(), 0.0);
  EXPECT_EQ(cert.inertia, (Inertia{0, 1}));
  EXPECT_GT(cert.margin, 0.0);
}

TEST(SolveKyp, UnitNormRejected) {
  const StateSpaceSystem unit(s(0.0), s(1.0), s(1.0), s(0.0));  // F(z) = z
  EXPECT_ERROR_KIND(solve_kyp(unit), ErrorKind::kNormNotStrictlyContractive);
}

TEST(SolveKyp, NoStates) {
  const StateSpaceSystem sys(ComplexMatrix(0, 0), ComplexMatrix(0, 1), ComplexMatrix(1, 0), s(0.3));
  const KypCertificate cert = solve_kyp(sys);
  EXPECT_EQ(cert.h.rows(), 0);
  EXPECT_NEAR(cert.margin, 1.0 - 0.09, 1e-14);
}

TEST(InertiaCheck, ScalarCases) {
  DichotomyInfo stable;
  stable.dim_plus = 1;
  DichotomyInfo antistable;
  antistable.dim_minus = 1;
  KypCertificate positive;
  positive.inertia = {1, 0};
  KypCertificate negative;
  negative.inertia = {0, 1};
  EXPECT_TRUE(inertia_check(positive, stable));
  EXPECT_TRUE(inertia_check(negative, antistable));
  EXPECT_FALSE(inertia_check(positive, antistable));
}

TEST(KreinAdjoint, HilbertSpaceCase) {
  ComplexMatrix m(2, 2);
  m << Complex(1, 2), Complex(0, -1), 3.0, Complex(0.5, 0.5);
  const KreinSpace hilbert(ComplexMatrix::Identity(2, 2));
  EXPECT_LT((krein_adjoint(m, hilbert) - m.adjoint()).norm(), 1e-15);
  EXPECT_LT((krein_adjoint(ComplexMatrix::Identity(2, 2), hilbert) -
             ComplexMatrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(KreinAdjoint, DiagonalInIndefiniteSpace) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 2.0;
  m(1, 1) = 0.5;
  ComplexMatrix g = ComplexMatrix::Zero(2, 2);
  g(0, 0) = 1.0;
  g(1, 1) = -1.0;
  EXPECT_LT((krein_adjoint(m, KreinSpace(g)) - m).norm(), 1e-15);
}

TEST(KreinAdjoint, IsAnInvolution) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 2 + trial % 5;
    ComplexMatrix g = oracle::random_matrix(rng, n, n);
    g = (g + g.adjoint()).eval();
    const KreinSpace space(g);
    const ComplexMatrix m = oracle::random_matrix(rng, n, n);
    const ComplexMatrix twice = krein_adjoint(krein_adjoint(m, space), space);
    EXPECT_LT((twice - m).norm(), 1e-12 * std::max(1.0, linalg::condition_number(g)) * m.norm());
  }
}

TEST(KreinSpace, RejectsSingularGram) {
  EXPECT_ERROR_KIND(KreinSpace(ComplexMatrix::Zero(2, 2)), ErrorKind::kSingularGram);
}

TEST(Bicontraction, ZeroInHilbertSpace) {
  const auto [first, second] =
      bicontraction_margins(ComplexMatrix::Zero(2, 2), KreinSpace(ComplexMatrix::Identity(2, 2)));
  EXPECT_NEAR(first, 1.0, 1e-15);
  EXPECT_NEAR(second, 1.0, 1e-15);
}

TEST(Bicontraction, AssociateOfShiftSystem) {
  const auto sys = fixtures::shift_example();
  const ComplexMatrix across = a_cross(sys);
  ASSERT_NEAR(std::abs(across(0, 0) - (-0.5)), 0.0, 1e-15);
  const KypCertificate cert = solve_kyp(sys);
  const double h = cert.h(0, 0).real();
  const auto [first, second] = bicontraction_margins(across, KreinSpace(cert.h));
  EXPECT_NEAR(first, h - 0.25 * h, 1e-14);
  EXPECT_NEAR(second, 1.0 / h - 0.25 / h, 1e-13);
  EXPECT_GT(first, 0.0);
  EXPECT_GT(second, 0.0);
}

TEST(Bicontraction, ExpansiveMapFails) {
  const auto [first, second] = bicontraction_margins(s(2.0), KreinSpace(s(1.0)));
  EXPECT_NEAR(first, -3.0, 1e-15);
  EXPECT_NEAR(second, -3.0, 1e-15);
}

// Properties on the randomized family.

class KypSuite : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { suite_ = new auto(fixtures::random_suite(30, 101)); }
  static void TearDownTestSuite() {
    delete suite_;
    suite_ = nullptr;
  }
  static std::vector<StateSpaceSystem>* suite_;
};
std::vector<StateSpaceSystem>* KypSuite::suite_ = nullptr;

TEST_F(KypSuite, CertifiesEverySystem) {
  for (std::size_t t = 0; t < suite_->size(); ++t) {
    const auto& sys = (*suite_)[t];
    SCOPED_TRACE("system " + std::to_string(t));
    ASSERT_LT(sup_norm_on_circle(sys), 0.95);
    const KypCertificate cert = solve_kyp(sys);
    const DichotomyInfo info = dichotomy_info(sys.a());
    EXPECT_GT(verify_kyp(sys, cert.h), 0.0);
    EXPECT_GT(verify_adjoint_kyp(sys, cert.h), 0.0);
    EXPECT_TRUE(inertia_check(cert, info));
    EXPECT_LE((cert.h - cert.h.adjoint()).norm(), 1e-10 * std::max(1.0, cert.h.norm()));

    const KreinSpace space(cert.h);
    const auto [a1, a2] = bicontraction_margins(sys.a(), space);
    EXPECT_GT(a1, 0.0);
    EXPECT_GT(a2, 0.0);
    const auto [x1, x2] = bicontraction_margins(a_cross(sys), space);
    EXPECT_GT(x1, 0.0);
    EXPECT_GT(x2, 0.0);
  }
}

TEST_F(KypSuite, MarginsAgreeWithDirectEigenvalues) {
  for (std::size_t t = 0; t < 5; ++t) {
    const auto& sys = (*suite_)[t];
    const KypCertificate cert = solve_kyp(sys);
    const Index n = sys.states();
    const Index m = sys.inputs();
    ComplexMatrix left = ComplexMatrix::Zero(n + m, n + m);
    left.topLeftCorner(n, n) = cert.h;
    left.bottomRightCorner(m, m).setIdentity();
    const ComplexMatrix sigma = sys.system_matrix();
    EXPECT_NEAR(cert.margin, oracle::min_hermitian_eig(left - sigma.adjoint() * left * sigma),
                1e-10 * std::max(1.0, cert.h.norm()));
  }
}

}  // namespace
