#include "cptp/certifier.hpp"

#include <cmath>

namespace cptp {

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::CertifiedOptimal: return "certified-optimal";
    case Verdict::FeasibleNotCertified: return "feasible-not-certified";
    case Verdict::Infeasible: return "infeasible";
  }
  return "unknown";
}

CertReport certify(const HermitianMatrix& X, const DualCertificate& cert,
                   const HermitianMatrix& R, Index d1, Index d2,
                   const CertTolerances& tols) {
  checkBipartite(X.dim(), d1, d2);
  checkBipartite(R.dim(), d1, d2);
  if (cert.A().dim() != d1) {
    throw InvalidDimension("certificate A has dim " + std::to_string(cert.A().dim()) +
                           ", expected " + std::to_string(d1));
  }
  const HermitianMatrix Z = dual_matrix(cert, R);

  CertReport rep;
  rep.primal_psd_margin = min_eigenvalue(X);
  rep.tp_violation =
      (partial_trace_out(X, d1, d2).matrix() - HermitianMatrix::Matrix::Identity(d1, d1)).norm();
  rep.dual_psd_margin = min_eigenvalue(Z);
  const HermitianMatrix::Matrix zx = Z.matrix() * X.matrix();
  rep.cs_residual = zx.norm();
  rep.cs_symmetrized = (zx + zx.adjoint()).norm() / 2;
  rep.primal_fidelity = fidelity(X, R);
  rep.dual_bound = static_cast<double>(d1) * cert.a0();
  rep.gap = rep.dual_bound - rep.primal_fidelity;

  const bool feasible = rep.primal_psd_margin >= -tols.psd && rep.tp_violation <= tols.tp &&
                        rep.dual_psd_margin >= -tols.psd;
  const bool slack = rep.cs_residual <= tols.cs * (1 + Z.norm() * X.norm());
  const bool closed = rep.gap <= tols.gap * (1 + std::abs(rep.primal_fidelity));
  if (!feasible) {
    rep.verdict = Verdict::Infeasible;
  } else if (slack && closed) {
    rep.verdict = Verdict::CertifiedOptimal;
  } else {
    rep.verdict = Verdict::FeasibleNotCertified;
  }
  return rep;
}

CsSolution solve_cs_for_certificate(const HermitianMatrix& X, const HermitianMatrix& R,
                                    Index d1, Index d2) {
  checkBipartite(X.dim(), d1, d2);
  checkBipartite(R.dim(), d1, d2);
  const Index n = d1 * d2;
  const auto sigma = hermitian_basis(d1);
  const HermitianMatrix idOut = HermitianMatrix::identity(d2);

  // Column 0: vec(X) for a0; column j: vec((σʲ⊗1)X). Real and imaginary
  // parts are stacked so the unknowns stay real.
  const Index unknowns = d1 * d1;
  Eigen::MatrixXd lhs(2 * n * n, unknowns);
  auto stack = [n](const HermitianMatrix::Matrix& m) {
    Eigen::VectorXd v(2 * n * n);
    v.head(n * n) = m.real().reshaped();
    v.tail(n * n) = m.imag().reshaped();
    return v;
  };
  lhs.col(0) = stack(X.matrix());
  for (Index j = 1; j < unknowns; ++j) {
    lhs.col(j) = stack(kron(sigma[static_cast<std::size_t>(j)], idOut).matrix() * X.matrix());
  }
  const Eigen::VectorXd rhs = stack(R.matrix() * X.matrix());

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(lhs);
  const double scale = std::max(1.0, lhs.cwiseAbs().maxCoeff());
  cod.setThreshold(1e-12 * scale);
  const Eigen::VectorXd coeffs = cod.solve(rhs);

  HermitianMatrix::Matrix a = HermitianMatrix::Matrix::Zero(d1, d1);
  for (Index j = 1; j < unknowns; ++j) a += coeffs(j) * sigma[static_cast<std::size_t>(j)].matrix();
  DualCertificate cert(coeffs(0), HermitianMatrix(std::move(a)));
  const double residual = (dual_matrix(cert, R).matrix() * X.matrix()).norm();
  return {std::move(cert), residual, cod.rank() < unknowns};
}

}  // namespace cptp
