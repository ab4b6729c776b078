#include "whfactor/realization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "whfactor/linalg.hpp"

namespace whfactor {

namespace {

bool all_finite(const ComplexMatrix& m) {
  return m.array().real().allFinite() && m.array().imag().allFinite();
}

std::string dims(const ComplexMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

void require_dichotomous(const ComplexVector& eig, const Tolerances& tol) {
  for (Index i = 0; i < eig.size(); ++i) {
    const double gap = std::abs(std::abs(eig(i)) - 1.0);
    if (!(gap > tol.dichotomy)) {
      std::ostringstream os;
      os << "eigenvalue " << eig(i) << " lies within " << tol.dichotomy
         << " of the unit circle";
      throw Error(ErrorKind::kNotDichotomous, os.str());
    }
  }
}

double margin_of(const ComplexVector& eig) {
  double m = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < eig.size(); ++i) {
    m = std::min(m, std::abs(std::abs(eig(i)) - 1.0));
  }
  return m;
}

bool inside_disc(Complex lambda) { return std::abs(lambda) < 1.0; }
bool outside_disc(Complex lambda) { return std::abs(lambda) > 1.0; }

// Projection onto the leading invariant subspace of a block-triangular
// Schur form along the trailing one, expressed in the original basis.
ComplexMatrix leading_projection(const linalg::OrderedSchur& s) {
  const Index n = s.t.rows();
  const Index k = s.selected;
  ComplexMatrix pt = ComplexMatrix::Zero(n, n);
  pt.topLeftCorner(k, k).setIdentity();
  if (k > 0 && k < n) {
    const ComplexMatrix x = linalg::solve_triangular_sylvester(
        s.t.topLeftCorner(k, k), s.t.bottomRightCorner(n - k, n - k),
        -s.t.topRightCorner(k, n - k));
    pt.topRightCorner(k, n - k) = -x;
  }
  return s.u * pt * s.u.adjoint();
}

struct Block {
  ComplexMatrix a, b, c;
};

}  // namespace

StateSpaceSystem::StateSpaceSystem(ComplexMatrix a, ComplexMatrix b,
                                   ComplexMatrix c, ComplexMatrix d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_.rows() != a_.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "A must be square, got " + dims(a_));
  }
  const Index n = a_.rows();
  if (b_.rows() != n || c_.cols() != n || c_.rows() != d_.rows() ||
      b_.cols() != d_.cols()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "inconsistent system dimensions A " + dims(a_) + ", B " +
                    dims(b_) + ", C " + dims(c_) + ", D " + dims(d_));
  }
  if (!all_finite(a_) || !all_finite(b_) || !all_finite(c_) || !all_finite(d_)) {
    throw Error(ErrorKind::kInvalidArgument, "system matrices contain non-finite entries");
  }
}

ComplexMatrix StateSpaceSystem::system_matrix() const {
  const Index n = states();
  ComplexMatrix s(n + outputs(), n + inputs());
  s << a_, b_, c_, d_;
  return s;
}

void RationalSymbolSpec::validate(const Tolerances& tol) const {
  if (!all_finite(constant)) {
    throw Error(ErrorKind::kInvalidArgument, "constant term is not finite");
  }
  for (const auto& c : poly_coeffs) {
    if (c.rows() != rows() || c.cols() != cols()) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "polynomial coefficient " + dims(c) + " does not match " + dims(constant));
    }
    if (!all_finite(c)) {
      throw Error(ErrorKind::kInvalidArgument, "polynomial coefficient is not finite");
    }
  }
  for (const auto& pole : poles) {
    if (pole.residue.rows() != rows() || pole.residue.cols() != cols()) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "residue " + dims(pole.residue) + " does not match " + dims(constant));
    }
    if (!all_finite(pole.residue) || !std::isfinite(pole.location.real()) ||
        !std::isfinite(pole.location.imag())) {
      throw Error(ErrorKind::kInvalidArgument, "pole data is not finite");
    }
    const double r = std::abs(pole.location);
    if (r == 0.0) {
      throw Error(ErrorKind::kPoleAtOrigin, "pole at z = 0 cannot be realized");
    }
    if (!(std::abs(r - 1.0) > tol.dichotomy)) {
      std::ostringstream os;
      os << "pole " << pole.location << " lies on the unit circle";
      throw Error(ErrorKind::kPoleOnCircle, os.str());
    }
  }
}

ComplexMatrix RationalSymbolSpec::evaluate(Complex z) const {
  ComplexMatrix value = constant;
  Complex zk(1.0, 0.0);
  for (const auto& c : poly_coeffs) {
    zk *= z;
    value += zk * c;
  }
  for (const auto& pole : poles) value += pole.residue / (z - pole.location);
  return value;
}

const ComplexMatrix& LaurentCoefficients::at(int k) const {
  if (k < k_min || k > k_max()) {
    throw Error(ErrorKind::kInvalidArgument,
                "Laurent index " + std::to_string(k) + " outside stored range");
  }
  return coeffs[static_cast<std::size_t>(k - k_min)];
}

ComplexMatrix eval_transfer(const StateSpaceSystem& sys, Complex z,
                            const Tolerances& tol) {
  if (z == Complex(0.0, 0.0) || sys.states() == 0) return sys.d();
  const Index n = sys.states();
  const ComplexMatrix resolvent = ComplexMatrix::Identity(n, n) - z * sys.a();
  Eigen::PartialPivLU<ComplexMatrix> lu(resolvent);
  if (!(lu.rcond() > tol.sing)) {
    // Report the reciprocal eigenvalue closest to z.
    const ComplexVector eig = linalg::eigenvalues(sys.a());
    std::optional<Complex> pole;
    double best = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < eig.size(); ++i) {
      if (eig(i) == Complex(0.0, 0.0)) continue;
      const Complex p = 1.0 / eig(i);
      if (std::abs(p - z) < best) {
        best = std::abs(p - z);
        pole = p;
      }
    }
    std::ostringstream os;
    os << "I - zA is singular at z = " << z;
    if (pole) os << " (pole at " << *pole << ")";
    throw Error(ErrorKind::kSingularResolvent, os.str(), pole);
  }
  return sys.d() + z * sys.c() * lu.solve(sys.b());
}

double spectral_margin(const ComplexMatrix& a) {
  return margin_of(linalg::eigenvalues(a));
}

ComplexMatrix spectral_projection_riesz(const ComplexMatrix& a,
                                        int quadrature_order,
                                        const Tolerances& tol) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "matrix must be square, got " + dims(a));
  }
  if (quadrature_order < 16) {
    throw Error(ErrorKind::kInvalidArgument, "quadrature order must be at least 16");
  }
  require_dichotomous(linalg::eigenvalues(a), tol);
  const Index n = a.rows();
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  if (n == 0) return p;
  // (1/2 pi i) \oint (zI - A)^{-1} dz with dz = i z dtheta.
  for (int k = 0; k < quadrature_order; ++k) {
    const Complex z = linalg::circle_point(k, quadrature_order);
    ComplexMatrix shifted = -a;
    shifted.diagonal().array() += z;
    p += z * shifted.partialPivLu().inverse();
  }
  return p / static_cast<double>(quadrature_order);
}

ComplexMatrix spectral_projection_ordered(const ComplexMatrix& a,
                                          const Tolerances& tol) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "matrix must be square, got " + dims(a));
  }
  const auto schur = linalg::ordered_schur(a, inside_disc);
  require_dichotomous(schur.t.diagonal(), tol);
  return leading_projection(schur);
}

DichotomyInfo dichotomy_info(const ComplexMatrix& a, const Tolerances& tol) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "matrix must be square, got " + dims(a));
  }
  const Index n = a.rows();
  DichotomyInfo info;
  if (n == 0) {
    info.p_plus = ComplexMatrix(0, 0);
    info.basis_minus = ComplexMatrix(0, 0);
    info.basis_plus = ComplexMatrix(0, 0);
    info.margin = std::numeric_limits<double>::infinity();
    return info;
  }

  auto inner = linalg::ordered_schur(a, inside_disc);
  const ComplexVector eig = inner.t.diagonal();
  require_dichotomous(eig, tol);
  info.margin = margin_of(eig);
  info.p_plus = leading_projection(inner);
  info.dim_plus = inner.selected;
  info.dim_minus = n - inner.selected;
  info.basis_plus = inner.u.leftCols(info.dim_plus);

  ComplexMatrix t = inner.t;
  ComplexMatrix u = inner.u;
  const Index outer = linalg::reorder_schur(t, u, outside_disc);
  info.basis_minus = u.leftCols(outer);

  // Quadrature cross-check, with enough nodes for the trapezoidal error
  // rho^N to sit well below the tolerance.
  double rho = 0.0;
  for (Index i = 0; i < eig.size(); ++i) {
    const double r = std::abs(eig(i));
    rho = std::max(rho, r < 1.0 ? r : 1.0 / r);
  }
  constexpr int kMaxCrossCheckOrder = 4096;
  int order = 256;
  if (rho > 0.0) {
    const double needed = std::log(1e-3 * tol.cross) / std::log(rho);
    order = std::max(order, static_cast<int>(std::ceil(needed)));
  }
  if (order <= kMaxCrossCheckOrder) {
    const ComplexMatrix riesz = spectral_projection_riesz(a, order, tol);
    const double scale = std::max(1.0, info.p_plus.norm());
    const double diff = (riesz - info.p_plus).norm();
    if (diff > tol.cross * scale * scale) {
      std::ostringstream os;
      os << "ordered and quadrature spectral projections differ by " << diff;
      throw Error(ErrorKind::kProjectionMismatch, os.str());
    }
  }
  return info;
}

double sup_norm_on_circle(const StateSpaceSystem& sys, int grid_points,
                          bool refine, const Tolerances& tol) {
  if (grid_points < 64) {
    throw Error(ErrorKind::kInvalidArgument, "grid_points must be at least 64");
  }
  auto value_at = [&](double theta) {
    return linalg::spectral_norm(eval_transfer(sys, std::polar(1.0, theta), tol));
  };
  const double h = 2.0 * std::numbers::pi / grid_points;
  double best = -1.0;
  int best_k = 0;
  for (int k = 0; k < grid_points; ++k) {
    const double v = value_at(h * k);
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  if (!refine) return best;

  // Golden-section search on the bracket around the grid maximizer.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = h * (best_k - 1);
  double hi = h * (best_k + 1);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = value_at(x1);
  double f2 = value_at(x2);
  for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = value_at(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = value_at(x1);
    }
  }
  return std::max({best, f1, f2});
}

StateSpaceSystem realize_rational(const RationalSymbolSpec& spec,
                                  const Tolerances& tol) {
  spec.validate(tol);
  const Index p = spec.rows();
  const Index m = spec.cols();
  ComplexMatrix d = spec.constant;
  std::vector<Block> inner;
  std::vector<Block> outer;

  const Index degree = static_cast<Index>(spec.poly_coeffs.size());
  if (degree > 0) {
    Block shift;
    if (m <= p) {
      // Controller form on delayed inputs: state = (u(t-1), ..., u(t-d)).
      const Index n = degree * m;
      shift.a = ComplexMatrix::Zero(n, n);
      if (degree > 1) shift.a.bottomLeftCorner(n - m, n - m).setIdentity();
      shift.b = ComplexMatrix::Zero(n, m);
      shift.b.topRows(m).setIdentity();
      shift.c.resize(p, n);
      for (Index k = 0; k < degree; ++k) shift.c.middleCols(k * m, m) = spec.poly_coeffs[k];
    } else {
      // Observer form: C A^{k-1} B picks the k-th stacked block of B.
      const Index n = degree * p;
      shift.a = ComplexMatrix::Zero(n, n);
      if (degree > 1) shift.a.topRightCorner(n - p, n - p).setIdentity();
      shift.c = ComplexMatrix::Zero(p, n);
      shift.c.leftCols(p).setIdentity();
      shift.b.resize(n, m);
      for (Index k = 0; k < degree; ++k) shift.b.middleRows(k * p, p) = spec.poly_coeffs[k];
    }
    inner.push_back(std::move(shift));
  }

  for (const auto& pole : spec.poles) {
    const Complex q = pole.location;
    d -= pole.residue / q;
    if (pole.residue.size() == 0) continue;
    Eigen::JacobiSVD<ComplexMatrix> svd(pole.residue, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const double smax = s(0);
    if (smax == 0.0) continue;
    const double cutoff = smax * tol.rank;
    Index rank = 0;
    for (Index i = 0; i < s.size(); ++i) {
      if (s(i) > cutoff) {
        ++rank;
        // Within two decades of the cutoff the rank decision is noise.
        if (s(i) < 100.0 * cutoff) {
          throw Error(ErrorKind::kRankDeficiencyTolerance,
                      "residue singular value " + std::to_string(s(i)) +
                          " is too close to the rank cutoff");
        }
      } else if (s(i) > 0.01 * cutoff) {
        throw Error(ErrorKind::kRankDeficiencyTolerance,
                    "residue singular value " + std::to_string(s(i)) +
                        " is too close to the rank cutoff");
      }
    }
    Block blk;
    blk.a = ComplexMatrix::Identity(rank, rank) / q;
    // C B = -R / q^2, split evenly in magnitude between C and B.
    const Eigen::VectorXd root = s.head(rank).cwiseSqrt() / std::abs(q);
    blk.c = svd.matrixU().leftCols(rank) * root.asDiagonal();
    blk.b = -(root.asDiagonal() * svd.matrixV().leftCols(rank).adjoint()) *
            (std::abs(q) * std::abs(q) / (q * q));
    (std::abs(q) > 1.0 ? inner : outer).push_back(std::move(blk));
  }

  Index n = 0;
  for (const auto* group : {&inner, &outer}) {
    for (const auto& blk : *group) n += blk.a.rows();
  }
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  ComplexMatrix b(n, m);
  ComplexMatrix c(p, n);
  Index offset = 0;
  for (const auto* group : {&inner, &outer}) {
    for (const auto& blk : *group) {
      const Index k = blk.a.rows();
      a.block(offset, offset, k, k) = blk.a;
      b.middleRows(offset, k) = blk.b;
      c.middleCols(offset, k) = blk.c;
      offset += k;
    }
  }
  return StateSpaceSystem(std::move(a), std::move(b), std::move(c), std::move(d));
}

LaurentCoefficients fourier_coefficients(const StateSpaceSystem& sys,
                                         const DichotomyInfo& info, int k_min,
                                         int k_max) {
  if (k_min > 0 || k_max < 0) {
    throw Error(ErrorKind::kInvalidArgument, "coefficient range must contain 0");
  }
  const Index n = sys.states();
  if (info.basis_minus.rows() != n || info.basis_plus.rows() != n ||
      info.dim_minus + info.dim_plus != n) {
    throw Error(ErrorKind::kDimensionMismatch, "dichotomy info does not match the system");
  }
  const Index km = info.dim_minus;
  const Index kp = info.dim_plus;
  ComplexMatrix basis(n, n);
  basis << info.basis_minus, info.basis_plus;
  Eigen::PartialPivLU<ComplexMatrix> lu(basis);
  const ComplexMatrix a_t = n > 0 ? ComplexMatrix(lu.solve(sys.a() * basis)) : ComplexMatrix(0, 0);
  const ComplexMatrix b_t = n > 0 ? ComplexMatrix(lu.solve(sys.b())) : ComplexMatrix(0, sys.inputs());
  const ComplexMatrix c_t = sys.c() * basis;

  const ComplexMatrix a_minus = a_t.topLeftCorner(km, km);
  const ComplexMatrix a_plus = a_t.bottomRightCorner(kp, kp);
  const ComplexMatrix b_minus = b_t.topRows(km);
  const ComplexMatrix b_plus = b_t.bottomRows(kp);
  const ComplexMatrix c_minus = c_t.leftCols(km);
  const ComplexMatrix c_plus = c_t.rightCols(kp);

  LaurentCoefficients out;
  out.k_min = k_min;
  out.coeffs.assign(static_cast<std::size_t>(k_max - k_min + 1),
                    ComplexMatrix::Zero(sys.outputs(), sys.inputs()));
  auto slot = [&](int k) -> ComplexMatrix& {
    return out.coeffs[static_cast<std::size_t>(k - k_min)];
  };

  // Positive powers: C_+ A_+^{k-1} B_+.
  ComplexMatrix power_b = b_plus;
  for (int k = 1; k <= k_max; ++k) {
    slot(k) = c_plus * power_b;
    power_b = a_plus * power_b;
  }
  // Nonpositive powers: -C_- A_-^{-k-1} B_-.
  ComplexMatrix inv_power_b = km > 0
      ? ComplexMatrix(a_minus.partialPivLu().solve(b_minus))
      : ComplexMatrix(0, sys.inputs());
  Eigen::PartialPivLU<ComplexMatrix> a_minus_lu;
  if (km > 0) a_minus_lu.compute(a_minus);
  for (int k = 0; k >= k_min; --k) {
    slot(k) = -(c_minus * inv_power_b);
    if (km > 0) inv_power_b = a_minus_lu.solve(inv_power_b);
  }
  slot(0) += sys.d();
  return out;
}

}  // namespace whfactor
