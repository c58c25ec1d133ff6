#include "cptp/sdp.hpp"

#include <cmath>
#include <iostream>
#include <limits>

namespace cptp {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kFractionToBoundary = 0.98;
constexpr double kSchurRcondFloor = 1e-12;
constexpr double kSchurShift = 1e-12;
constexpr double kMeritSlack = 1e-12;
constexpr int kMaxBacktracks = 40;

MatrixXd sym(const MatrixXd& a) { return (a + a.transpose()) / 2; }

// Tr(A B) for symmetric A.
double trProd(const MatrixXd& a, const MatrixXd& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

MatrixXd affine(const RealSDP& prob, const VectorXd& x) {
  MatrixXd s = prob.F0;
  for (Index i = 0; i < x.size(); ++i) s += x(i) * prob.F[static_cast<std::size_t>(i)];
  return s;
}

MatrixXd linearCombination(const RealSDP& prob, const VectorXd& dx) {
  MatrixXd s = MatrixXd::Zero(prob.F0.rows(), prob.F0.cols());
  for (Index i = 0; i < dx.size(); ++i) s += dx(i) * prob.F[static_cast<std::size_t>(i)];
  return s;
}

VectorXd constraintTraces(const RealSDP& prob, const MatrixXd& z) {
  VectorXd t(prob.c.size());
  for (Index i = 0; i < t.size(); ++i) t(i) = trProd(prob.F[static_cast<std::size_t>(i)], z);
  return t;
}

// Largest α with X + α·dX ⪰ 0, for X ≻ 0 with Cholesky factor L.
double maxStep(const Eigen::LLT<MatrixXd>& llt, const MatrixXd& dx) {
  const auto& l = llt.matrixL();
  MatrixXd w = l.solve(dx);
  w = l.solve(w.transpose()).transpose();
  const double lmin = detail::jacobiEigen<double>(sym(w)).eigenvalues(0);
  return lmin < 0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

MatrixXd initialDual(const RealSDP& prob) {
  const Index n = prob.F0.rows();
  const Index m = prob.c.size();
  MatrixXd gram(m, m);
  VectorXd traces(m);
  for (Index i = 0; i < m; ++i) {
    traces(i) = prob.F[static_cast<std::size_t>(i)].trace();
    for (Index j = 0; j <= i; ++j) {
      gram(i, j) = gram(j, i) =
          trProd(prob.F[static_cast<std::size_t>(i)], prob.F[static_cast<std::size_t>(j)]);
    }
  }
  const double fscale = m > 0 ? gram.diagonal().cwiseAbs().maxCoeff() : 1.0;
  // A scaled identity can be added without disturbing Tr F_i Z only when
  // every F_i is traceless; then start from a strictly feasible dual point.
  if (m == 0 || traces.cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, std::sqrt(fscale))) {
    MatrixXd z = MatrixXd::Zero(n, n);
    if (m > 0) {
      const VectorXd y = gram.ldlt().solve(prob.c);
      z = linearCombination(prob, y);
    }
    const auto eig = detail::jacobiEigen<double>(sym(z)).eigenvalues;
    const double spread = std::max(std::abs(eig(0)), std::abs(eig(n - 1)));
    return sym(z) + (1.0 + 2.0 * spread) * MatrixXd::Identity(n, n);
  }
  const double beta = std::max(1.0, prob.c.cwiseAbs().maxCoeff());
  return beta * MatrixXd::Identity(n, n);
}

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::IterationLimit: return "iteration-limit";
    case SolveStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

void SolverOptions::validate() const {
  if (!(gap_tol > 0)) throw InvalidArgument("gap_tol must be positive");
  if (!(feas_tol > 0)) throw InvalidArgument("feas_tol must be positive");
  if (max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
}

RealSDP embed_problem(const SDPProblem& problem) {
  RealSDP out;
  out.F0 = real_embed(problem.F0).matrix();
  out.F.reserve(problem.F.size());
  for (const auto& f : problem.F) out.F.push_back(real_embed(f).matrix());
  out.c = problem.c;
  return out;
}

RealSDPResult solve_real(const RealSDP& prob, const SolverOptions& opts) {
  opts.validate();
  const Index n = prob.F0.rows();
  const Index m = prob.c.size();
  if (static_cast<Index>(prob.F.size()) != m) {
    throw InvalidDimension("number of constraint matrices does not match c");
  }

  RealSDPResult res;
  VectorXd x = VectorXd::Zero(m);
  MatrixXd s = prob.F0;
  Eigen::LLT<MatrixXd> sChol(s);
  if (sChol.info() != Eigen::Success) {
    throw InvalidArgument("F0 must be positive definite (x = 0 strictly feasible)");
  }
  MatrixXd z = initialDual(prob);

  auto meritOf = [&](const MatrixXd& sm, const MatrixXd& zm, const VectorXd& r) {
    return trProd(sm, zm) + r.norm();
  };

  res.status = SolveStatus::IterationLimit;
  int it = 0;
  for (;; ++it) {
    const VectorXd r = prob.c - constraintTraces(prob, z);
    const double p = prob.c.dot(x);
    const double d = -trProd(prob.F0, z);
    res.gap_history.push_back(p - d);
    if (opts.verbosity > 0) {
      std::cerr << "iter " << it << "  p " << p << "  d " << d << "  gap " << p - d
                << "  dual_res " << r.cwiseAbs().maxCoeff() << '\n';
    }
    const double rmax = m > 0 ? r.cwiseAbs().maxCoeff() : 0.0;
    if (p - d <= opts.gap_tol && rmax <= opts.feas_tol) {
      res.status = SolveStatus::Converged;
      break;
    }
    if (it >= opts.max_iter) break;

    const MatrixXd sinv = sChol.solve(MatrixXd::Identity(n, n));
    const double mu = trProd(s, z) / static_cast<double>(n);

    // Schur complement M_ij = Tr(F_i S⁻¹ F_j Z).
    std::vector<MatrixXd> b(static_cast<std::size_t>(m));
    for (Index j = 0; j < m; ++j) b[static_cast<std::size_t>(j)] = sinv * prob.F[static_cast<std::size_t>(j)] * z;
    MatrixXd schur(m, m);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j)
        schur(i, j) = trProd(prob.F[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]);
    schur = sym(schur);
    Eigen::LLT<MatrixXd> mChol(schur);
    if (mChol.info() != Eigen::Success || mChol.rcond() < kSchurRcondFloor) {
      const double shift = kSchurShift * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
      schur.diagonal().array() += shift;
      mChol.compute(schur);
      res.schur_perturbed = true;
      if (mChol.info() != Eigen::Success) {
        res.status = SolveStatus::NumericalFailure;
        break;
      }
    }
    VectorXd trFSinv(m);
    for (Index i = 0; i < m; ++i) trFSinv(i) = trProd(prob.F[static_cast<std::size_t>(i)], sinv);

    // Predictor (pure Newton step toward μ = 0).
    const VectorXd dxAff = mChol.solve(-prob.c);
    const MatrixXd dsAff = linearCombination(prob, dxAff);
    const MatrixXd dzAff = -z - sym(sinv * dsAff * z);
    Eigen::LLT<MatrixXd> zChol(z);
    if (zChol.info() != Eigen::Success) {
      res.status = SolveStatus::NumericalFailure;
      break;
    }
    const double aP = std::min(1.0, maxStep(sChol, dsAff));
    const double aD = std::min(1.0, maxStep(zChol, dzAff));
    const double muAff = trProd(s + aP * dsAff, z + aD * dzAff) / static_cast<double>(n);
    const double sigma = std::clamp(std::pow(muAff / mu, 3), 0.0, 1.0);

    // Corrector with the second-order term.
    const MatrixXd corr = sym(sinv * dsAff * dzAff);
    VectorXd rhs(m);
    for (Index i = 0; i < m; ++i) {
      rhs(i) = sigma * mu * trFSinv(i) - prob.c(i) - trProd(prob.F[static_cast<std::size_t>(i)], corr);
    }
    const VectorXd dx = mChol.solve(rhs);
    const MatrixXd ds = linearCombination(prob, dx);
    const MatrixXd dz = sigma * mu * sinv - z - sym(sinv * ds * z) - corr;

    double alpha = std::min(
        1.0, kFractionToBoundary * std::min(maxStep(sChol, ds), maxStep(zChol, dz)));

    const double meritNow = meritOf(s, z, r);
    bool accepted = false;
    for (int bt = 0; bt < kMaxBacktracks; ++bt, alpha /= 2) {
      const VectorXd xn = x + alpha * dx;
      const MatrixXd sn = affine(prob, xn);
      const MatrixXd zn = sym(z + alpha * dz);
      Eigen::LLT<MatrixXd> snChol(sn), znChol(zn);
      if (snChol.info() != Eigen::Success || znChol.info() != Eigen::Success) continue;
      const VectorXd rn = prob.c - constraintTraces(prob, zn);
      if (meritOf(sn, zn, rn) > meritNow + kMeritSlack) continue;
      x = xn;
      s = sn;
      z = zn;
      sChol = std::move(snChol);
      accepted = true;
      break;
    }
    if (!accepted) {
      res.status = SolveStatus::NumericalFailure;
      break;
    }
  }

  res.x = x;
  res.Z = z;
  res.p = prob.c.dot(x);
  res.d = -trProd(prob.F0, z);
  res.dual_residual = m > 0 ? (prob.c - constraintTraces(prob, z)).cwiseAbs().maxCoeff() : 0.0;
  res.iterations = it;
  return res;
}

SDPSolution solve(const SDPProblem& problem, const SolverOptions& opts) {
  const RealSDPResult real = solve_real(embed_problem(problem), opts);

  SDPSolution sol;
  sol.x = real.x;
  sol.Z = real_unembed(SymmetricMatrix(real.Z)) * 2.0;
  sol.p = problem.c.dot(sol.x);
  sol.d = -hs_inner(problem.F0, sol.Z);
  sol.gap = sol.p - sol.d;
  double viol = 0;
  for (Index i = 0; i < problem.size(); ++i) {
    viol = std::max(viol, std::abs(hs_inner(problem.F[static_cast<std::size_t>(i)], sol.Z) - problem.c(i)));
  }
  sol.dual_residual = viol;
  sol.status = real.status;
  sol.iterations = real.iterations;
  sol.schur_perturbed = real.schur_perturbed;
  sol.gap_history = real.gap_history;
  return sol;
}

FeasibilityReport check_primal_feasible(const Eigen::VectorXd& x,
                                        const SDPProblem& problem, double tol) {
  FeasibilityReport rep;
  rep.min_eigenvalue = min_eigenvalue(assemble_X(x, problem));
  rep.max_equality_violation = 0;
  rep.feasible = rep.min_eigenvalue >= -tol;
  return rep;
}

FeasibilityReport check_dual_feasible(const HermitianMatrix& Z,
                                      const SDPProblem& problem, double tol) {
  FeasibilityReport rep;
  rep.min_eigenvalue = min_eigenvalue(Z);
  for (Index i = 0; i < problem.size(); ++i) {
    rep.max_equality_violation =
        std::max(rep.max_equality_violation,
                 std::abs(hs_inner(problem.F[static_cast<std::size_t>(i)], Z) - problem.c(i)));
  }
  rep.feasible = rep.min_eigenvalue >= -tol && rep.max_equality_violation <= tol;
  return rep;
}

}  // namespace cptp
