#include "cptp/dual_bounds.hpp"

#include <cmath>
#include <string>

namespace cptp {

namespace {

Index outputDim(const HermitianMatrix& A, const HermitianMatrix& R) {
  if (A.dim() < 1 || R.dim() % A.dim() != 0) {
    throw InvalidDimension("R has dim " + std::to_string(R.dim()) +
                           ", not a multiple of dim A = " + std::to_string(A.dim()));
  }
  return R.dim() / A.dim();
}

HermitianMatrix traceless(const HermitianMatrix& a) {
  return a - HermitianMatrix::identity(a.dim()) * (a.trace() / static_cast<double>(a.dim()));
}

}  // namespace

DualCertificate::DualCertificate(double a0, HermitianMatrix A) : a0_(a0), A_(std::move(A)) {
  if (!std::isfinite(a0_)) throw InvalidCertificate("a0 must be finite");
  if (std::abs(A_.trace()) > kTraceTol) {
    throw InvalidCertificate("certificate matrix A must be traceless (Tr A = " +
                             std::to_string(A_.trace()) + ")");
  }
}

HermitianMatrix dual_matrix(const DualCertificate& cert, const HermitianMatrix& R) {
  const Index d2 = outputDim(cert.A(), R);
  return HermitianMatrix::identity(R.dim()) * cert.a0() +
         kron(cert.A(), HermitianMatrix::identity(d2)) - R;
}

double a0_of_A(const HermitianMatrix& A, const HermitianMatrix& R) {
  const Index d2 = outputDim(A, R);
  if (std::abs(A.trace()) > DualCertificate::kTraceTol) {
    throw InvalidCertificate("a0_of_A requires traceless A (Tr A = " +
                             std::to_string(A.trace()) + ")");
  }
  return -min_eigenvalue(kron(A, HermitianMatrix::identity(d2)) - R);
}

double fidelity_upper_bound(const HermitianMatrix& A, const HermitianMatrix& R,
                            Index d1, Index d2) {
  checkBipartite(R.dim(), d1, d2);
  if (A.dim() != d1) {
    throw InvalidDimension("A has dim " + std::to_string(A.dim()) + ", expected " +
                           std::to_string(d1));
  }
  return static_cast<double>(d1) * a0_of_A(A, R);
}

ExtractedCertificate extract_certificate(const HermitianMatrix& Z,
                                         const HermitianMatrix& R, Index d1, Index d2) {
  checkBipartite(Z.dim(), d1, d2);
  checkBipartite(R.dim(), d1, d2);
  const HermitianMatrix zr = Z + R;
  const double a0 = zr.trace() / static_cast<double>(d1 * d2);
  HermitianMatrix A = partial_trace_out(zr, d1, d2) * (1.0 / static_cast<double>(d2)) -
                      HermitianMatrix::identity(d1) * a0;
  // Removes roundoff in Tr A; exact arithmetic gives zero.
  A = traceless(A);
  DualCertificate cert(a0, A);
  const double residual = (Z - dual_matrix(cert, R)).norm();
  return {std::move(cert), residual};
}

DualCertificate minimize_a0(const HermitianMatrix& R, Index d1, Index d2,
                            const SolverOptions& opts) {
  const SDPProblem prob = build_sdp(R, d1, d2);
  const SDPSolution sol = solve(prob, opts);
  if (sol.status != SolveStatus::Converged) {
    throw NumericalFailure("minimize_a0: SDP solve ended with status " +
                           to_string(sol.status));
  }
  const auto extracted = extract_certificate(sol.Z, R, d1, d2);
  const HermitianMatrix& A = extracted.certificate.A();
  return DualCertificate(a0_of_A(A, R), A);
}

DualCertificate minimize_a0_subgradient(const HermitianMatrix& R, Index d1, Index d2,
                                        const SubgradientOptions& opts) {
  checkBipartite(R.dim(), d1, d2);
  const auto basis = hermitian_basis(d1);
  const HermitianMatrix idOut = HermitianMatrix::identity(d2);

  // f(A) = λ_max(R − A⊗1); the top eigenspace projector P gives the
  // subgradient −Tr_out(P) with respect to A.
  auto evaluate = [&](const HermitianMatrix& A, Eigen::VectorXd& grad) {
    const auto e = eigh(R - kron(A, idOut));
    const Index n = e.eigenvalues.size();
    const double top = e.eigenvalues(n - 1);
    HermitianMatrix::Matrix proj = HermitianMatrix::Matrix::Zero(n, n);
    int count = 0;
    for (Index k = n - 1; k >= 0 && e.eigenvalues(k) >= top - opts.degeneracy_tol; --k) {
      proj += e.eigenvectors.col(k) * e.eigenvectors.col(k).adjoint();
      ++count;
    }
    proj /= static_cast<double>(count);
    const HermitianMatrix reduced = partial_trace_out(HermitianMatrix(proj), d1, d2);
    grad.resize(d1 * d1 - 1);
    for (Index j = 1; j < d1 * d1; ++j) {
      grad(j - 1) = -hs_inner(reduced, basis[static_cast<std::size_t>(j)]) / 2.0;
    }
    return top;
  };
  auto assemble = [&](const Eigen::VectorXd& coords) {
    HermitianMatrix::Matrix a = HermitianMatrix::Matrix::Zero(d1, d1);
    for (Index j = 1; j < d1 * d1; ++j) a += coords(j - 1) * basis[static_cast<std::size_t>(j)].matrix();
    return HermitianMatrix(std::move(a));
  };

  Eigen::VectorXd coords = Eigen::VectorXd::Zero(d1 * d1 - 1);
  Eigen::VectorXd grad;
  double best = evaluate(assemble(coords), grad);
  Eigen::VectorXd bestCoords = coords;
  double step = opts.initial_step;
  int stall = 0;
  constexpr int kStallLimit = 20;

  for (int it = 0; it < opts.max_iter && step > 1e-14; ++it) {
    const double gnorm = grad.norm();
    if (gnorm == 0) break;
    coords -= (step / gnorm) * grad;
    const double f = evaluate(assemble(coords), grad);
    if (f < best - 1e-15) {
      best = f;
      bestCoords = coords;
      stall = 0;
    } else if (++stall >= kStallLimit) {
      step /= 2;
      stall = 0;
      coords = bestCoords;
      evaluate(assemble(coords), grad);
    }
  }
  const HermitianMatrix A = assemble(bestCoords);
  return DualCertificate(a0_of_A(A, R), A);
}

}  // namespace cptp
