#include "whfactor/wiener_hopf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "whfactor/linalg.hpp"

namespace whfactor {

namespace {

ComplexMatrix identity_plus(const ComplexMatrix& d) {
  return ComplexMatrix::Identity(d.rows(), d.cols()) + d;
}

void require_square(const StateSpaceSystem& sys) {
  if (!sys.is_square()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "G = I + F needs a square symbol, got " + std::to_string(sys.outputs()) +
                    "x" + std::to_string(sys.inputs()));
  }
}

ComplexMatrix inverse_identity_plus_d(const ComplexMatrix& d, const Tolerances& tol) {
  const ComplexMatrix ipd = identity_plus(d);
  return linalg::checked_solve(ipd, ComplexMatrix::Identity(d.rows(), d.cols()), tol.sing,
                               ErrorKind::kSingularIPlusD, "I + D");
}

FactorRealization make_factor(ComplexMatrix dterm, ComplexMatrix cvec, ComplexMatrix amat,
                              ComplexMatrix bvec, Domain domain) {
  FactorRealization f;
  f.dterm = std::move(dterm);
  f.cvec = std::move(cvec);
  f.amat = std::move(amat);
  f.bvec = std::move(bvec);
  f.domain = domain;
  const ComplexVector eig = linalg::eigenvalues(f.amat);
  if (domain == Domain::kInner) {
    f.spectrum_bound = eig.size() > 0 ? eig.cwiseAbs().maxCoeff() : 0.0;
  } else {
    f.spectrum_bound = eig.size() > 0 ? eig.cwiseAbs().minCoeff()
                                      : std::numeric_limits<double>::infinity();
  }
  return f;
}

void require_containment(const FactorRealization& f, const char* name,
                         const Tolerances& tol) {
  const bool ok = f.domain == Domain::kInner ? f.spectrum_bound <= 1.0 - tol.dichotomy
                                             : f.spectrum_bound >= 1.0 + tol.dichotomy;
  if (!ok) {
    std::ostringstream os;
    os << name << " (" << to_string(f.domain) << ") has spectrum bound "
       << f.spectrum_bound;
    throw Error(ErrorKind::kSpectralContainmentViolated, os.str());
  }
}

}  // namespace

std::string_view to_string(Side side) {
  return side == Side::kRight ? "right" : "left";
}

std::string_view to_string(SplitStrategy strategy) {
  switch (strategy) {
    case SplitStrategy::kLeftIdentity: return "left_identity";
    case SplitStrategy::kRightIdentity: return "right_identity";
    case SplitStrategy::kSymmetricSqrt: return "symmetric_sqrt";
  }
  return "left_identity";
}

std::string_view to_string(Domain domain) {
  return domain == Domain::kInner ? "inner" : "outer";
}

Side parse_side(std::string_view text) {
  if (text == "right") return Side::kRight;
  if (text == "left") return Side::kLeft;
  throw Error(ErrorKind::kInvalidArgument, "unknown side '" + std::string(text) + "'");
}

SplitStrategy parse_split_strategy(std::string_view text) {
  if (text == "left_identity") return SplitStrategy::kLeftIdentity;
  if (text == "right_identity") return SplitStrategy::kRightIdentity;
  if (text == "symmetric_sqrt") return SplitStrategy::kSymmetricSqrt;
  throw Error(ErrorKind::kInvalidArgument, "unknown split strategy '" + std::string(text) + "'");
}

Domain parse_domain(std::string_view text) {
  if (text == "inner") return Domain::kInner;
  if (text == "outer") return Domain::kOuter;
  throw Error(ErrorKind::kInvalidArgument, "unknown domain '" + std::string(text) + "'");
}

ComplexMatrix WienerHopfFactorization::product(Complex z, const Tolerances& tol) const {
  const ComplexMatrix outer = eval_factor(factor_outer, z, tol);
  const ComplexMatrix inner = eval_factor(factor_inner, z, tol);
  return side == Side::kRight ? ComplexMatrix(outer * inner) : ComplexMatrix(inner * outer);
}

ComplexMatrix a_cross(const StateSpaceSystem& sys, const Tolerances& tol) {
  require_square(sys);
  const ComplexMatrix ipd_inv = inverse_identity_plus_d(sys.d(), tol);
  return sys.a() - sys.b() * ipd_inv * sys.c();
}

CrossData cross_data(const StateSpaceSystem& sys, const Tolerances& tol) {
  require_square(sys);
  CrossData out;
  out.id_plus_d_inv = inverse_identity_plus_d(sys.d(), tol);
  out.a_cross = sys.a() - sys.b() * out.id_plus_d_inv * sys.c();
  out.info_cross = dichotomy_info(out.a_cross, tol);
  return out;
}

StateSpaceSystem inverse_system(const StateSpaceSystem& sys, const Tolerances& tol) {
  require_square(sys);
  const ComplexMatrix ipd_inv = inverse_identity_plus_d(sys.d(), tol);
  const Index m = sys.inputs();
  return StateSpaceSystem(sys.a() - sys.b() * ipd_inv * sys.c(), sys.b() * ipd_inv,
                          -(ipd_inv * sys.c()),
                          ipd_inv - ComplexMatrix::Identity(m, m));
}

MatchingResult matching_projection(const DichotomyInfo& info, const CrossData& cross,
                                   Side side, const Tolerances& tol) {
  const Index n = info.dim_minus + info.dim_plus;
  const DichotomyInfo& xi = cross.info_cross;
  if (xi.dim_minus + xi.dim_plus != n) {
    throw Error(ErrorKind::kDimensionMismatch, "dichotomy infos have different state dimensions");
  }
  const ComplexMatrix& kernel = side == Side::kRight ? info.basis_minus : info.basis_plus;
  const ComplexMatrix& range = side == Side::kRight ? xi.basis_plus : xi.basis_minus;
  if (kernel.cols() + range.cols() != n) {
    std::ostringstream os;
    os << "subspace dimensions " << kernel.cols() << " + " << range.cols()
       << " do not add up to " << n;
    throw Error(ErrorKind::kMatchingFailed, os.str());
  }
  MatchingResult out;
  out.kernel_dim = kernel.cols();
  out.basis.resize(n, n);
  out.basis << kernel, range;
  out.basis_cond = linalg::condition_number(out.basis);
  if (!(out.basis_cond <= tol.match)) {
    throw Error(ErrorKind::kMatchingFailed,
                "matched basis condition number " + std::to_string(out.basis_cond) +
                    " exceeds tolerance");
  }
  ComplexMatrix selector = ComplexMatrix::Zero(n, n);
  selector.bottomRightCorner(range.cols(), range.cols()).setIdentity();
  out.projection = n > 0 ? ComplexMatrix(out.basis * selector * out.basis.inverse())
                         : ComplexMatrix(0, 0);
  return out;
}

DSplit split_identity_plus_d(const ComplexMatrix& d, SplitStrategy strategy,
                             const Tolerances& tol) {
  if (d.rows() != d.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "D must be square");
  }
  (void)inverse_identity_plus_d(d, tol);
  const ComplexMatrix ipd = identity_plus(d);
  const ComplexMatrix id = ComplexMatrix::Identity(d.rows(), d.cols());
  DSplit out;
  out.strategy = strategy;
  switch (strategy) {
    case SplitStrategy::kLeftIdentity:
      out.d1 = ipd;
      out.d2 = id;
      break;
    case SplitStrategy::kRightIdentity:
      out.d1 = id;
      out.d2 = ipd;
      break;
    case SplitStrategy::kSymmetricSqrt: {
      const ComplexVector eig = linalg::eigenvalues(ipd);
      for (Index i = 0; i < eig.size(); ++i) {
        const Complex lambda = eig(i);
        if (lambda.real() <= 0.0 &&
            std::abs(lambda.imag()) <= tol.sing * std::max(1.0, std::abs(lambda))) {
          std::ostringstream os;
          os << "I + D has eigenvalue " << lambda << " on the closed negative real axis";
          throw Error(ErrorKind::kSqrtBranchCut, os.str());
        }
      }
      ComplexMatrix root = ipd.sqrt();
      out.d1 = root;
      out.d2 = root;
      break;
    }
  }
  return out;
}

WienerHopfFactorization factorize(const StateSpaceSystem& sys, Side side,
                                  const DSplit& split, const Tolerances& tol) {
  require_square(sys);
  const Index n = sys.states();
  const Index m = sys.inputs();
  const DichotomyInfo info = dichotomy_info(sys.a(), tol);
  const ComplexMatrix ipd_inv = inverse_identity_plus_d(sys.d(), tol);

  if (split.d1.rows() != m || split.d1.cols() != m || split.d2.rows() != m ||
      split.d2.cols() != m) {
    throw Error(ErrorKind::kDimensionMismatch, "split factors must be square of input size");
  }
  const ComplexMatrix ipd = identity_plus(sys.d());
  const double split_defect = (split.d1 * split.d2 - ipd).norm();
  if (split_defect > 1e-12 * std::max(1.0, ipd.norm())) {
    throw Error(ErrorKind::kInvalidArgument,
                "split factors do not multiply to I + D (defect " +
                    std::to_string(split_defect) + ")");
  }
  const ComplexMatrix id = ComplexMatrix::Identity(m, m);
  const ComplexMatrix d1_inv =
      linalg::checked_solve(split.d1, id, tol.sing, ErrorKind::kSingularIPlusD, "D1");
  const ComplexMatrix d2_inv =
      linalg::checked_solve(split.d2, id, tol.sing, ErrorKind::kSingularIPlusD, "D2");

  const double gamma = sup_norm_on_circle(sys, 512, true, tol);
  if (!(gamma < 1.0 - tol.norm)) {
    throw Error(ErrorKind::kNormNotStrictlyContractive,
                "sup norm on the circle is " + std::to_string(gamma));
  }

  const CrossData cross = cross_data(sys, tol);
  const MatchingResult match = matching_projection(info, cross, side, tol);

  // Change of basis whose leading block spans the exterior spectral
  // subspace: [X_- | X_+^x] for the right side, [X_-^x | X_+] for the left.
  ComplexMatrix basis(n, n);
  Index k1 = 0;
  if (side == Side::kRight) {
    basis = match.basis;
    k1 = match.kernel_dim;
  } else {
    const Index kk = match.kernel_dim;
    basis << match.basis.rightCols(n - kk), match.basis.leftCols(kk);
    k1 = n - kk;
  }
  const Index k2 = n - k1;

  ComplexMatrix a_t(n, n), ax_t(n, n), b_t(n, m);
  if (n > 0) {
    Eigen::PartialPivLU<ComplexMatrix> lu(basis);
    a_t = lu.solve(sys.a() * basis);
    ax_t = lu.solve(cross.a_cross * basis);
    b_t = lu.solve(sys.b());
  }
  const ComplexMatrix c_t = sys.c() * basis;
  const ComplexMatrix a11 = a_t.topLeftCorner(k1, k1);
  const ComplexMatrix a22 = a_t.bottomRightCorner(k2, k2);
  const ComplexMatrix ax11 = ax_t.topLeftCorner(k1, k1);
  const ComplexMatrix ax22 = ax_t.bottomRightCorner(k2, k2);
  const ComplexMatrix b1 = b_t.topRows(k1);
  const ComplexMatrix b2 = b_t.bottomRows(k2);
  const ComplexMatrix c1 = c_t.leftCols(k1);
  const ComplexMatrix c2 = c_t.rightCols(k2);
  const ComplexMatrix& d1 = split.d1;
  const ComplexMatrix& d2 = split.d2;

  WienerHopfFactorization wh;
  wh.side = side;
  wh.projection = match.projection;
  wh.basis_cond = match.basis_cond;
  if (side == Side::kRight) {
    wh.factor_outer = make_factor(d1, c1, a11, b1 * d2_inv, Domain::kOuter);
    wh.factor_inner = make_factor(d2, d1_inv * c2, a22, b2, Domain::kInner);
    wh.inverse_outer = make_factor(d1_inv, -(d1_inv * c1), ax11, b1 * ipd_inv, Domain::kOuter);
    wh.inverse_inner = make_factor(d2_inv, -(ipd_inv * c2), ax22, b2 * d2_inv, Domain::kInner);
  } else {
    wh.factor_inner = make_factor(d1, c2, a22, b2 * d2_inv, Domain::kInner);
    wh.inverse_inner = make_factor(d1_inv, -(d1_inv * c2), ax22, b2 * ipd_inv, Domain::kInner);
    wh.factor_outer = make_factor(d2, d1_inv * c1, a11, b1, Domain::kOuter);
    wh.inverse_outer = make_factor(d2_inv, -(ipd_inv * c1), ax11, b1 * d2_inv, Domain::kOuter);
  }
  require_containment(wh.factor_outer, "factor_outer", tol);
  require_containment(wh.factor_inner, "factor_inner", tol);
  require_containment(wh.inverse_outer, "inverse_outer", tol);
  require_containment(wh.inverse_inner, "inverse_inner", tol);
  return wh;
}

WienerHopfFactorization factorize(const StateSpaceSystem& sys, Side side,
                                  const Tolerances& tol) {
  require_square(sys);
  return factorize(sys, side, split_identity_plus_d(sys.d(), SplitStrategy::kLeftIdentity, tol),
                   tol);
}

ComplexMatrix eval_factor(const FactorRealization& f, Complex z, const Tolerances& tol) {
  if (z == Complex(0.0, 0.0) || f.states() == 0) return f.dterm;
  const Index k = f.states();
  const ComplexMatrix resolvent = ComplexMatrix::Identity(k, k) - z * f.amat;
  Eigen::PartialPivLU<ComplexMatrix> lu(resolvent);
  if (!(lu.rcond() > tol.sing)) {
    const ComplexVector eig = linalg::eigenvalues(f.amat);
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
    os << "factor has a pole at z = " << (pole ? *pole : z);
    throw Error(ErrorKind::kSingularResolvent, os.str(), pole);
  }
  return f.dterm + z * f.cvec * lu.solve(f.bvec);
}

std::vector<ComplexMatrix> factor_laurent_coefficients(const FactorRealization& f,
                                                       int count) {
  if (count < 1) throw Error(ErrorKind::kInvalidArgument, "coefficient count must be positive");
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(count));
  const Index k = f.states();
  if (f.domain == Domain::kInner) {
    out.push_back(f.dterm);
    ComplexMatrix power_b = f.bvec;
    for (int i = 1; i < count; ++i) {
      out.push_back(f.cvec * power_b);
      power_b = f.amat * power_b;
    }
    return out;
  }
  // Expansion at infinity: d - c a^{-1} b, then -c a^{-j-1} b.
  if (k == 0) {
    out.push_back(f.dterm);
    for (int i = 1; i < count; ++i) out.push_back(ComplexMatrix::Zero(f.dterm.rows(), f.dterm.cols()));
    return out;
  }
  Eigen::PartialPivLU<ComplexMatrix> lu(f.amat);
  ComplexMatrix inv_power_b = lu.solve(f.bvec);
  out.push_back(f.dterm - f.cvec * inv_power_b);
  for (int i = 1; i < count; ++i) {
    inv_power_b = lu.solve(inv_power_b);
    out.push_back(-(f.cvec * inv_power_b));
  }
  return out;
}

}  // namespace whfactor
