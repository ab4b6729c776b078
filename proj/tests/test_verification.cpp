#include <sstream>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "whfactor/json_io.hpp"
#include "whfactor/verification.hpp"

namespace {

using namespace whfactor;

bool has_failure(const DiagnosticsReport& r, const std::string& check) {
  for (const auto& f : r.failures) {
    if (f.check == check) return true;
  }
  return false;
}

StateSpaceSystem six_state_system() {
  std::mt19937_64 rng(606);
  RandomSymbolOptions options;
  options.size = 2;
  options.max_states = 6;
  for (;;) {
    const StateSpaceSystem sys = realize_rational(random_rational_symbol(rng, options));
    if (sys.states() == 6) return sys;
  }
}

TEST(ResidualOnCircle, ExactScalarExample) {
  const auto sys = fixtures::shift_example();
  const auto r = residual_on_circle(sys, factorize(sys, Side::kRight), 512);
  EXPECT_LE(r.factor, 1e-12);
  EXPECT_LE(r.inverse, 1e-12);
}

TEST(ResidualOnCircle, RandomSixStateSystem) {
  const auto sys = six_state_system();
  for (Side side : {Side::kRight, Side::kLeft}) {
    const auto wh = factorize(sys, side);
    const auto r = residual_on_circle(sys, wh, 512);
    EXPECT_LE(r.factor, 1e-8 * (1.0 + wh.basis_cond));
    EXPECT_LE(r.inverse, 1e-8 * (1.0 + wh.basis_cond));
  }
}

TEST(ResidualOnCircle, DetectsCorruptedFactor) {
  const auto sys = six_state_system();
  auto wh = factorize(sys, Side::kRight);
  ASSERT_GT(wh.factor_inner.states(), 0);
  wh.factor_inner.cvec(0, 0) += 1e-3;
  const auto r = residual_on_circle(sys, wh, 512);
  EXPECT_GE(r.factor, 1e-4);
}

TEST(ResidualOnCircle, RejectsCoarseGrid) {
  const auto sys = fixtures::shift_example();
  EXPECT_ERROR_KIND(residual_on_circle(sys, factorize(sys, Side::kRight), 32),
                    ErrorKind::kInvalidArgument);
}

TEST(AnalyticityReport, PoleExample) {
  const auto report = analyticity_report(factorize(fixtures::pole_example(), Side::kRight));
  ASSERT_EQ(report.size(), 4u);
  EXPECT_EQ(report[0].factor_name, "V_minus");
  ASSERT_EQ(report[0].pole_moduli.size(), 1u);
  EXPECT_NEAR(report[0].pole_moduli[0], 0.5, 1e-14);
  EXPECT_EQ(report[0].domain, Domain::kOuter);
  EXPECT_TRUE(report[0].ok);

  EXPECT_EQ(report[2].factor_name, "V_minus_inv");
  ASSERT_EQ(report[2].pole_moduli.size(), 1u);
  EXPECT_NEAR(report[2].pole_moduli[0], 0.625, 1e-14);
  EXPECT_EQ(report[2].domain, Domain::kOuter);
  EXPECT_TRUE(report[2].ok);

  EXPECT_EQ(report[1].factor_name, "V_plus");
  EXPECT_TRUE(report[1].pole_moduli.empty());
  EXPECT_TRUE(report[1].ok);
}

TEST(AnalyticityReport, LeftNames) {
  const auto report = analyticity_report(factorize(fixtures::pole_example(), Side::kLeft));
  EXPECT_EQ(report[0].factor_name, "W_minus");
  EXPECT_EQ(report[1].factor_name, "W_plus");
}

TEST(FullReport, ScalarExampleWithCertificate) {
  const auto sys = fixtures::shift_example();
  const auto report = full_report(sys, factorize(sys, Side::kRight), solve_kyp(sys));
  EXPECT_TRUE(report.passed());
  ASSERT_TRUE(report.kyp_margin && report.adjoint_kyp_margin && report.inertia_ok);
  EXPECT_GT(*report.kyp_margin, 0.0);
  EXPECT_GT(*report.adjoint_kyp_margin, 0.0);
  EXPECT_GT(report.bicontraction_margins_a->first, 0.0);
  EXPECT_GT(report.bicontraction_margins_across->second, 0.0);
  EXPECT_TRUE(*report.inertia_ok);
  EXPECT_NEAR(report.sup_norm, 0.5, 1e-12);
}

TEST(FullReport, WithoutCertificate) {
  const auto sys = fixtures::pole_example();
  const auto report = full_report(sys, factorize(sys, Side::kRight), std::nullopt);
  EXPECT_TRUE(report.passed());
  EXPECT_FALSE(report.kyp_margin.has_value());
  EXPECT_FALSE(report.inertia_ok.has_value());
  EXPECT_FALSE(report.bicontraction_margins_a.has_value());
  EXPECT_NEAR(report.sup_norm, 0.4, 1e-12);
  EXPECT_EQ(report.grid_points, 512);
}

TEST(FullReport, IsolatesFailingChecks) {
  const auto sys = six_state_system();
  auto wh = factorize(sys, Side::kRight);
  wh.factor_inner.cvec(0, 0) += 1e-3;
  KypCertificate bogus = solve_kyp(sys);
  bogus.h = -bogus.h;  // wrong inertia, fails the inequality
  std::swap(bogus.inertia.positive, bogus.inertia.negative);
  const auto report = full_report(sys, wh, bogus);
  EXPECT_FALSE(report.passed());
  EXPECT_TRUE(has_failure(report, "residual"));
  EXPECT_TRUE(has_failure(report, "kyp"));
  EXPECT_TRUE(has_failure(report, "inertia"));
  EXPECT_FALSE(has_failure(report, "containment"));
  EXPECT_FALSE(has_failure(report, "sup_norm"));
  EXPECT_GT(report.sup_norm, 0.0);
}

TEST(FullReport, Deterministic) {
  const auto sys = six_state_system();
  const auto wh = factorize(sys, Side::kLeft);
  const auto cert = solve_kyp(sys);
  const auto a = io::to_json(full_report(sys, wh, cert)).dump();
  const auto b = io::to_json(full_report(sys, wh, cert)).dump();
  EXPECT_EQ(a, b);
}

TEST(FullReport, MaximaGrowWithGridRefinement) {
  const auto sys = six_state_system();
  const auto wh = factorize(sys, Side::kRight);
  const auto coarse = residual_on_circle(sys, wh, 256);
  const auto fine = residual_on_circle(sys, wh, 512);
  EXPECT_GE(fine.factor, coarse.factor - 1e-14);
  EXPECT_GE(fine.inverse, coarse.inverse - 1e-14);
  EXPECT_GE(sup_norm_on_circle(sys, 512, false), sup_norm_on_circle(sys, 256, false) - 1e-14);
}

TEST(FormatReport, KeyValueLines) {
  const auto sys = fixtures::shift_example();
  const std::string text = format_report(full_report(sys, factorize(sys, Side::kRight), std::nullopt));
  std::istringstream lines(text);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    EXPECT_NE(line.find(": "), std::string::npos) << line;
  }
  EXPECT_GT(count, 5);
  EXPECT_NE(text.find("status:"), std::string::npos);
  EXPECT_NE(text.find("pass"), std::string::npos);
}

}  // namespace
