#include "whfactor/kyp_krein.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "whfactor/linalg.hpp"

namespace whfactor {

namespace {

void require_selfadjoint(const ComplexMatrix& h, Index n, const Tolerances& tol) {
  if (h.rows() != n || h.cols() != n) {
    std::ostringstream os;
    os << "H must be " << n << "x" << n << ", got " << h.rows() << "x" << h.cols();
    throw Error(ErrorKind::kDimensionMismatch, os.str());
  }
  const double asym = (h - h.adjoint()).norm();
  if (asym > tol.sym * std::max(1.0, h.norm())) {
    throw Error(ErrorKind::kNotSelfadjoint,
                "|H - H*| = " + std::to_string(asym) + " exceeds tolerance");
  }
}

ComplexMatrix hermitian(const ComplexMatrix& h) { return 0.5 * (h + h.adjoint()); }

ComplexMatrix inverse_of_gram(const ComplexMatrix& h, const Tolerances& tol) {
  if (h.rows() == 0) return h;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian(h));
  const auto& w = eig.eigenvalues();
  const double largest = w.cwiseAbs().maxCoeff();
  const double smallest = w.cwiseAbs().minCoeff();
  if (!(smallest > tol.sing * largest)) {
    throw Error(ErrorKind::kSingularGram, "Gram matrix is numerically singular");
  }
  return eig.eigenvectors() * w.cwiseInverse().asDiagonal() *
         eig.eigenvectors().adjoint();
}

ComplexMatrix block_diag(const ComplexMatrix& top, Index identity_size) {
  const Index n = top.rows();
  ComplexMatrix out = ComplexMatrix::Zero(n + identity_size, n + identity_size);
  out.topLeftCorner(n, n) = top;
  out.bottomRightCorner(identity_size, identity_size).setIdentity();
  return out;
}

// Largest norm of the state response z (I - zA)^{-1} B on the circle grid.
double state_response_norm(const StateSpaceSystem& sys, int grid_points,
                           const Tolerances& tol) {
  const Index n = sys.states();
  const StateSpaceSystem response(sys.a(), sys.b(), ComplexMatrix::Identity(n, n),
                                  ComplexMatrix::Zero(n, sys.inputs()));
  return sup_norm_on_circle(response, grid_points, false, tol);
}

// Weights of the bounded-real Riccati equation
//   X = A*XA + Q - (A*XB + S)(R + B*XB)^{-1}(B*XA + S*)
// whose solutions give KYP solutions H = -X. The state slack keeps the
// resulting inequality strict.
struct RiccatiWeights {
  ComplexMatrix q, s, r;
};

RiccatiWeights bounded_real_weights(const StateSpaceSystem& sys, double slack) {
  RiccatiWeights w;
  w.q = -(sys.c().adjoint() * sys.c());
  w.q.diagonal().array() -= slack;
  w.s = -(sys.c().adjoint() * sys.d());
  w.r = ComplexMatrix::Identity(sys.inputs(), sys.inputs()) - sys.d().adjoint() * sys.d();
  return w;
}

ComplexMatrix riccati_residual(const StateSpaceSystem& sys, const RiccatiWeights& w,
                               const ComplexMatrix& x, ComplexMatrix* closed_loop) {
  const ComplexMatrix& a = sys.a();
  const ComplexMatrix& b = sys.b();
  const ComplexMatrix gain_rhs = b.adjoint() * x * a + w.s.adjoint();
  const ComplexMatrix k = (w.r + b.adjoint() * x * b).partialPivLu().solve(gain_rhs);
  if (closed_loop != nullptr) *closed_loop = a - b * k;
  return hermitian(a.adjoint() * x * a - x + w.q - gain_rhs.adjoint() * k);
}

// Stable deflating subspace of the extended pencil F v = mu E v with
// v = (x, lambda, u). The Cayley map mu -> (mu - 1)/(mu + 1) turns it into
// a standard eigenproblem and sends the open disc to the left half-plane.
ComplexMatrix riccati_from_pencil(const StateSpaceSystem& sys, const RiccatiWeights& w,
                                  const Tolerances& tol) {
  const Index n = sys.states();
  const Index m = sys.inputs();
  const Index size = 2 * n + m;
  ComplexMatrix f = ComplexMatrix::Zero(size, size);
  ComplexMatrix e = ComplexMatrix::Zero(size, size);
  f.block(0, 0, n, n) = sys.a();
  f.block(0, 2 * n, n, m) = sys.b();
  f.block(n, 0, n, n) = w.q;
  f.block(n, n, n, n) = -ComplexMatrix::Identity(n, n);
  f.block(n, 2 * n, n, m) = w.s;
  f.block(2 * n, 0, m, n) = w.s.adjoint();
  f.block(2 * n, 2 * n, m, m) = w.r;
  e.block(0, 0, n, n).setIdentity();
  e.block(n, n, n, n) = -sys.a().adjoint();
  e.block(2 * n, n, m, n) = -sys.b().adjoint();

  Eigen::PartialPivLU<ComplexMatrix> lu(f + e);
  if (!(lu.rcond() > tol.sing)) {
    throw Error(ErrorKind::kPencilSelectionFailed,
                "pencil has an eigenvalue at -1 (F + E singular)");
  }
  const ComplexMatrix cayley = lu.solve(f - e);
  constexpr double kImaginaryAxisGap = 1e-10;
  const auto schur = linalg::ordered_schur(
      cayley, [](Complex mu) { return mu.real() < 0.0; });
  for (Index i = 0; i < size; ++i) {
    if (std::abs(schur.t(i, i).real()) < kImaginaryAxisGap) {
      throw Error(ErrorKind::kPencilSelectionFailed,
                  "pencil has eigenvalues on the unit circle");
    }
  }
  if (schur.selected != n) {
    throw Error(ErrorKind::kPencilSelectionFailed,
                "expected " + std::to_string(n) + " stable pencil eigenvalues, found " +
                    std::to_string(schur.selected));
  }
  const ComplexMatrix x1 = schur.u.block(0, 0, n, n);
  const ComplexMatrix x2 = schur.u.block(n, 0, n, n);
  Eigen::PartialPivLU<ComplexMatrix> x1_lu(x1);
  if (!(x1_lu.rcond() > tol.sing)) {
    throw Error(ErrorKind::kPencilSelectionFailed,
                "stable deflating subspace is not a graph over the state space");
  }
  return hermitian(x2 * x1_lu.inverse());
}

// Newton (Hewer) refinement: X <- X + Delta with
// Delta = A_K* Delta A_K + residual(X), stopping once the residual no longer
// decreases.
ComplexMatrix refine_riccati(const StateSpaceSystem& sys, const RiccatiWeights& w,
                             ComplexMatrix x) {
  ComplexMatrix closed_loop;
  ComplexMatrix res = riccati_residual(sys, w, x, &closed_loop);
  double res_norm = res.norm();
  for (int step = 0; step < 10 && res_norm > 0.0; ++step) {
    const ComplexMatrix candidate = hermitian(x + linalg::solve_stein(closed_loop, res));
    ComplexMatrix next_loop;
    const ComplexMatrix next_res = riccati_residual(sys, w, candidate, &next_loop);
    const double next_norm = next_res.norm();
    if (!(next_norm < res_norm)) break;
    x = candidate;
    res = next_res;
    res_norm = next_norm;
    closed_loop = std::move(next_loop);
  }
  return x;
}

}  // namespace

KreinSpace::KreinSpace(ComplexMatrix gram, const Tolerances& tol)
    : gram_(std::move(gram)) {
  require_selfadjoint(gram_, gram_.rows(), tol);
  gram_inverse_ = inverse_of_gram(gram_, tol);
}

Inertia inertia_of(const ComplexMatrix& h, const Tolerances& tol) {
  require_selfadjoint(h, h.rows(), tol);
  Inertia out;
  if (h.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian(h), Eigen::EigenvaluesOnly);
  const auto& w = eig.eigenvalues();
  const double largest = w.cwiseAbs().maxCoeff();
  for (Index i = 0; i < w.size(); ++i) {
    if (!(std::abs(w(i)) > tol.sing * largest)) {
      throw Error(ErrorKind::kSingularGram, "H has a numerically zero eigenvalue");
    }
    (w(i) > 0.0 ? out.positive : out.negative) += 1;
  }
  return out;
}

double verify_kyp(const StateSpaceSystem& sys, const ComplexMatrix& h,
                  const Tolerances& tol) {
  require_selfadjoint(h, sys.states(), tol);
  const ComplexMatrix sigma = sys.system_matrix();
  const ComplexMatrix hh = hermitian(h);
  const ComplexMatrix lhs = block_diag(hh, sys.inputs()) -
                            sigma.adjoint() * block_diag(hh, sys.outputs()) * sigma;
  return linalg::min_hermitian_eigenvalue(lhs);
}

double verify_adjoint_kyp(const StateSpaceSystem& sys, const ComplexMatrix& h,
                          const Tolerances& tol) {
  require_selfadjoint(h, sys.states(), tol);
  const ComplexMatrix h_inv = inverse_of_gram(h, tol);
  const ComplexMatrix sigma = sys.system_matrix();
  const ComplexMatrix lhs = block_diag(h_inv, sys.outputs()) -
                            sigma * block_diag(h_inv, sys.inputs()) * sigma.adjoint();
  return linalg::min_hermitian_eigenvalue(lhs);
}

KypCertificate solve_kyp(const StateSpaceSystem& sys, const Tolerances& tol) {
  (void)dichotomy_info(sys.a(), tol);
  const double gamma = sup_norm_on_circle(sys, 512, true, tol);
  if (!(gamma < 1.0 - tol.norm)) {
    throw Error(ErrorKind::kNormNotStrictlyContractive,
                "sup norm on the circle is " + std::to_string(gamma));
  }

  // The slack eps must keep [F; sqrt(eps) z (I - zA)^{-1} B] contractive.
  const double beta = sys.states() > 0 ? state_response_norm(sys, 512, tol) : 0.0;
  double slack = beta > 0.0 ? std::min(1.0, 0.5 * (1.0 - gamma * gamma) / (beta * beta))
                            : 1.0;

  constexpr int kAttempts = 6;
  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt < kAttempts; ++attempt, slack *= 0.1) {
    KypCertificate cert;
    cert.slack = slack;
    if (sys.states() > 0) {
      const RiccatiWeights weights = bounded_real_weights(sys, slack);
      try {
        cert.h = -refine_riccati(sys, weights, riccati_from_pencil(sys, weights, tol));
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::kPencilSelectionFailed || attempt + 1 == kAttempts) throw;
        last_failure = err.what();
        continue;
      }
    } else {
      cert.h = ComplexMatrix(0, 0);
    }
    try {
      cert.inertia = inertia_of(cert.h, tol);
      cert.margin = verify_kyp(sys, cert.h, tol);
      cert.adjoint_margin = verify_adjoint_kyp(sys, cert.h, tol);
    } catch (const Error& err) {
      last_failure = err.what();
      continue;
    }
    if (cert.margin > 0.0 && cert.adjoint_margin > 0.0) return cert;
    std::ostringstream os;
    os << "margins " << cert.margin << ", " << cert.adjoint_margin
       << " at slack " << slack;
    last_failure = os.str();
  }
  throw Error(ErrorKind::kCertificationFailed, last_failure);
}

bool inertia_check(const KypCertificate& cert, const DichotomyInfo& info) {
  return cert.inertia.positive == info.dim_plus &&
         cert.inertia.negative == info.dim_minus;
}

ComplexMatrix krein_adjoint(const ComplexMatrix& s, const KreinSpace& space) {
  if (s.rows() != space.dim() || s.cols() != space.dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "operator and Krein space dimensions differ");
  }
  return space.gram_inverse() * s.adjoint() * space.gram();
}

std::pair<double, double> bicontraction_margins(const ComplexMatrix& m,
                                                const KreinSpace& space) {
  if (m.rows() != space.dim() || m.cols() != space.dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "operator and Krein space dimensions differ");
  }
  const ComplexMatrix& g = space.gram();
  const ComplexMatrix& gi = space.gram_inverse();
  return {linalg::min_hermitian_eigenvalue(g - m.adjoint() * g * m),
          linalg::min_hermitian_eigenvalue(gi - m * gi * m.adjoint())};
}

}  // namespace whfactor
