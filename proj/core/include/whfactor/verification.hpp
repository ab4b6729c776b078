#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "whfactor/kyp_krein.hpp"
#include "whfactor/wiener_hopf.hpp"

namespace whfactor {

struct CircleResiduals {
  /// max |G(z) - product(z)|
  double factor = 0.0;
  /// max |factor(z) inverse(z) - I| over both factor/inverse pairs
  double inverse = 0.0;
};

/// Spectral-norm residuals over `grid_points` equispaced circle nodes.
CircleResiduals residual_on_circle(const StateSpaceSystem& sys,
                                   const WienerHopfFactorization& wh,
                                   int grid_points = 512, const Tolerances& tol = {});

struct AnalyticityEntry {
  std::string factor_name;
  /// |1/lambda| for the nonzero eigenvalues lambda of amat.
  std::vector<double> pole_moduli;
  Domain domain = Domain::kInner;
  bool ok = false;
};

/// One entry per factor, in the order outer factor, inner factor, outer
/// inverse, inner inverse. Names are V_minus, V_plus, ... for the right
/// side and W_minus, W_plus, ... for the left.
std::vector<AnalyticityEntry> analyticity_report(const WienerHopfFactorization& wh,
                                                 const Tolerances& tol = {});

struct CheckFailure {
  std::string check;
  std::string message;
};

struct DiagnosticsReport {
  double sup_norm = 0.0;
  double norm_margin = 0.0;
  double factor_residual_max = 0.0;
  double inverse_residual_max = 0.0;
  /// factor_outer, factor_inner, inverse_outer, inverse_inner:
  /// 1 - radius for inner factors, min modulus - 1 for outer ones.
  std::array<double, 4> containment_margins{};
  std::optional<double> kyp_margin;
  std::optional<double> adjoint_kyp_margin;
  std::optional<std::pair<double, double>> bicontraction_margins_a;
  std::optional<std::pair<double, double>> bicontraction_margins_across;
  std::optional<bool> inertia_ok;
  double basis_cond = 1.0;
  int grid_points = 0;
  std::vector<CheckFailure> failures;

  bool passed() const noexcept { return failures.empty(); }
};

/// Residual acceptance level 1e-8 (1 + basis_cond).
double residual_tolerance(double basis_cond);

/// Runs every diagnostic independently; a failing or throwing check is
/// recorded in `failures` and the remaining checks still run.
DiagnosticsReport full_report(const StateSpaceSystem& sys, const WienerHopfFactorization& wh,
                              const std::optional<KypCertificate>& cert,
                              int grid_points = 512, const Tolerances& tol = {});

/// Aligned "key: value" lines.
std::string format_report(const DiagnosticsReport& report);

}  // namespace whfactor
