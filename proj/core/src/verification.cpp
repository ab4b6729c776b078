#include "whfactor/verification.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "whfactor/linalg.hpp"

namespace whfactor {

namespace {

std::array<std::string, 4> factor_names(Side side) {
  if (side == Side::kRight) return {"V_minus", "V_plus", "V_minus_inv", "V_plus_inv"};
  return {"W_minus", "W_plus", "W_minus_inv", "W_plus_inv"};
}

std::array<const FactorRealization*, 4> factors_of(const WienerHopfFactorization& wh) {
  return {&wh.factor_outer, &wh.factor_inner, &wh.inverse_outer, &wh.inverse_inner};
}

double containment_margin(const FactorRealization& f) {
  return f.domain == Domain::kInner ? 1.0 - f.spectrum_bound : f.spectrum_bound - 1.0;
}

template <typename Fn>
void guarded(DiagnosticsReport& report, const char* check, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& err) {
    report.failures.push_back({check, err.what()});
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << std::scientific << v;
  return os.str();
}

}  // namespace

CircleResiduals residual_on_circle(const StateSpaceSystem& sys,
                                   const WienerHopfFactorization& wh, int grid_points,
                                   const Tolerances& tol) {
  if (grid_points < 64) {
    throw Error(ErrorKind::kInvalidArgument, "grid_points must be at least 64");
  }
  const Index m = sys.inputs();
  const ComplexMatrix id = ComplexMatrix::Identity(m, m);
  CircleResiduals out;
  for (int k = 0; k < grid_points; ++k) {
    const Complex z = linalg::circle_point(k, grid_points);
    const ComplexMatrix g = id + eval_transfer(sys, z, tol);
    out.factor = std::max(out.factor, linalg::spectral_norm(g - wh.product(z, tol)));
    const ComplexMatrix outer_pair =
        eval_factor(wh.factor_outer, z, tol) * eval_factor(wh.inverse_outer, z, tol) - id;
    const ComplexMatrix inner_pair =
        eval_factor(wh.factor_inner, z, tol) * eval_factor(wh.inverse_inner, z, tol) - id;
    out.inverse = std::max({out.inverse, linalg::spectral_norm(outer_pair),
                            linalg::spectral_norm(inner_pair)});
  }
  return out;
}

std::vector<AnalyticityEntry> analyticity_report(const WienerHopfFactorization& wh,
                                                 const Tolerances& tol) {
  const auto names = factor_names(wh.side);
  const auto factors = factors_of(wh);
  std::vector<AnalyticityEntry> out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const FactorRealization& f = *factors[i];
    AnalyticityEntry entry;
    entry.factor_name = names[i];
    entry.domain = f.domain;
    entry.ok = true;
    const ComplexVector eig = linalg::eigenvalues(f.amat);
    for (Index j = 0; j < eig.size(); ++j) {
      const double r = std::abs(eig(j));
      if (f.domain == Domain::kInner) {
        // Poles must stay outside the closed disc; lambda = 0 is no pole.
        if (r > 1.0 - tol.dichotomy) entry.ok = false;
        if (r > 0.0) entry.pole_moduli.push_back(1.0 / r);
      } else {
        if (r < 1.0 + tol.dichotomy) entry.ok = false;
        if (r > 0.0) entry.pole_moduli.push_back(1.0 / r);
      }
    }
    std::sort(entry.pole_moduli.begin(), entry.pole_moduli.end());
    out.push_back(std::move(entry));
  }
  return out;
}

double residual_tolerance(double basis_cond) { return 1e-8 * (1.0 + basis_cond); }

DiagnosticsReport full_report(const StateSpaceSystem& sys, const WienerHopfFactorization& wh,
                              const std::optional<KypCertificate>& cert, int grid_points,
                              const Tolerances& tol) {
  DiagnosticsReport report;
  report.grid_points = grid_points;
  report.basis_cond = wh.basis_cond;

  guarded(report, "sup_norm", [&] {
    report.sup_norm = sup_norm_on_circle(sys, grid_points, true, tol);
    report.norm_margin = 1.0 - report.sup_norm;
    if (!(report.norm_margin > tol.norm)) {
      throw Error(ErrorKind::kNormNotStrictlyContractive,
                  "sup norm " + std::to_string(report.sup_norm));
    }
  });
  guarded(report, "residual", [&] {
    const CircleResiduals r = residual_on_circle(sys, wh, grid_points, tol);
    report.factor_residual_max = r.factor;
    report.inverse_residual_max = r.inverse;
    const double limit = residual_tolerance(wh.basis_cond);
    if (!(r.factor <= limit)) {
      throw std::runtime_error("factor residual " + fmt(r.factor) +
                                                   " exceeds " + fmt(limit));
    }
    if (!(r.inverse <= limit)) {
      throw std::runtime_error("inverse residual " + fmt(r.inverse) +
                                                   " exceeds " + fmt(limit));
    }
  });
  guarded(report, "containment", [&] {
    const auto factors = factors_of(wh);
    const auto names = factor_names(wh.side);
    std::string bad;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      report.containment_margins[i] = containment_margin(*factors[i]);
      if (!(report.containment_margins[i] >= tol.dichotomy)) bad += " " + names[i];
    }
    if (!bad.empty()) {
      throw Error(ErrorKind::kSpectralContainmentViolated, "violated by" + bad);
    }
  });

  if (cert) {
    guarded(report, "kyp", [&] {
      report.kyp_margin = verify_kyp(sys, cert->h, tol);
      if (!(*report.kyp_margin > 0.0)) {
        throw Error(ErrorKind::kCertificationFailed, "KYP margin " + fmt(*report.kyp_margin));
      }
    });
    guarded(report, "adjoint_kyp", [&] {
      report.adjoint_kyp_margin = verify_adjoint_kyp(sys, cert->h, tol);
      if (!(*report.adjoint_kyp_margin > 0.0)) {
        throw Error(ErrorKind::kCertificationFailed,
                    "adjoint KYP margin " + fmt(*report.adjoint_kyp_margin));
      }
    });
    guarded(report, "bicontraction_a", [&] {
      const KreinSpace space(cert->h, tol);
      report.bicontraction_margins_a = bicontraction_margins(sys.a(), space);
      if (!(report.bicontraction_margins_a->first > 0.0 &&
            report.bicontraction_margins_a->second > 0.0)) {
        throw Error(ErrorKind::kCertificationFailed, "A is not a uniform bicontraction");
      }
    });
    guarded(report, "bicontraction_across", [&] {
      const KreinSpace space(cert->h, tol);
      report.bicontraction_margins_across = bicontraction_margins(a_cross(sys, tol), space);
      if (!(report.bicontraction_margins_across->first > 0.0 &&
            report.bicontraction_margins_across->second > 0.0)) {
        throw Error(ErrorKind::kCertificationFailed, "A^x is not a uniform bicontraction");
      }
    });
    guarded(report, "inertia", [&] {
      const DichotomyInfo info = dichotomy_info(sys.a(), tol);
      report.inertia_ok = inertia_check(*cert, info);
      if (!*report.inertia_ok) {
        throw Error(ErrorKind::kCertificationFailed,
                    "inertia of H does not match the dichotomy of A");
      }
    });
  }
  return report;
}

std::string format_report(const DiagnosticsReport& r) {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("sup_norm", fmt(r.sup_norm));
  rows.emplace_back("norm_margin", fmt(r.norm_margin));
  rows.emplace_back("factor_residual_max", fmt(r.factor_residual_max));
  rows.emplace_back("inverse_residual_max", fmt(r.inverse_residual_max));
  rows.emplace_back("residual_tolerance", fmt(residual_tolerance(r.basis_cond)));
  std::string margins;
  for (std::size_t i = 0; i < r.containment_margins.size(); ++i) {
    if (i > 0) margins += " ";
    margins += fmt(r.containment_margins[i]);
  }
  rows.emplace_back("containment_margins", margins);
  if (r.kyp_margin) rows.emplace_back("kyp_margin", fmt(*r.kyp_margin));
  if (r.adjoint_kyp_margin) rows.emplace_back("adjoint_kyp_margin", fmt(*r.adjoint_kyp_margin));
  if (r.bicontraction_margins_a) {
    rows.emplace_back("bicontraction_margins_a", fmt(r.bicontraction_margins_a->first) + " " +
                                                     fmt(r.bicontraction_margins_a->second));
  }
  if (r.bicontraction_margins_across) {
    rows.emplace_back("bicontraction_margins_across",
                      fmt(r.bicontraction_margins_across->first) + " " +
                          fmt(r.bicontraction_margins_across->second));
  }
  if (r.inertia_ok) rows.emplace_back("inertia_ok", *r.inertia_ok ? "true" : "false");
  rows.emplace_back("basis_cond", fmt(r.basis_cond));
  rows.emplace_back("grid_points", std::to_string(r.grid_points));
  rows.emplace_back("status", r.passed() ? "pass" : "fail");
  for (const auto& f : r.failures) rows.emplace_back("failed." + f.check, f.message);

  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.first.size());
  std::ostringstream os;
  for (const auto& [key, value] : rows) {
    os << key << ":" << std::string(width - key.size() + 1, ' ') << value << "\n";
  }
  return os.str();
}

}  // namespace whfactor
