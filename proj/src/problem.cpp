#include "cptp/problem.hpp"

#include <cmath>
#include <string>

namespace cptp {

namespace {

constexpr double kWeightWarnTol = 1e-6;
constexpr double kExtractTpTol = 1e-8;

double maxTpViolation(const HermitianMatrix& X, Index d1, Index d2) {
  const auto reduced = partial_trace_out(X, d1, d2);
  return (reduced.matrix() - HermitianMatrix::Matrix::Identity(d1, d1))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace

PureState::PureState(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw InvalidDimension("pure state has no amplitudes");
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw InvalidArgument("pure state is not normalized (norm^2 = " +
                          std::to_string(norm2) + ")");
  }
}

HermitianMatrix PureState::projector() const {
  return HermitianMatrix(amps_ * amps_.adjoint());
}

TransformationEnsemble::TransformationEnsemble(Index d1, Index d2,
                                               std::vector<WeightedPair> pairs)
    : d1_(d1), d2_(d2), pairs_(std::move(pairs)) {
  if (d1_ < 1 || d2_ < 1) throw InvalidEnsemble("ensemble dimensions must be positive");
  if (pairs_.empty()) throw InvalidEnsemble("ensemble has no pairs");
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    const auto& p = pairs_[k];
    const std::string tag = "pair " + std::to_string(k + 1) + ": ";
    if (p.input.dim() != d1_) {
      throw InvalidEnsemble(tag + "input dim " + std::to_string(p.input.dim()) +
                            ", expected " + std::to_string(d1_));
    }
    if (p.output.dim() != d2_) {
      throw InvalidEnsemble(tag + "output dim " + std::to_string(p.output.dim()) +
                            ", expected " + std::to_string(d2_));
    }
    if (!(p.weight >= 0.0) || !std::isfinite(p.weight)) {
      throw InvalidEnsemble(tag + "weight must be finite and nonnegative");
    }
    raw_sum_ += p.weight;
  }
  if (!(raw_sum_ > 0.0)) throw InvalidEnsemble("ensemble weights sum to zero");
  renormalized_ = std::abs(raw_sum_ - 1.0) > kWeightWarnTol;
  for (auto& p : pairs_) p.weight /= raw_sum_;
}

HermitianMatrix build_R(const TransformationEnsemble& ensemble) {
  const Index n = ensemble.d1() * ensemble.d2();
  HermitianMatrix::Matrix r = HermitianMatrix::Matrix::Zero(n, n);
  for (const auto& p : ensemble.pairs()) {
    // (|in⟩⟨in|)ᵀ = conj(|in⟩⟨in|) for a Hermitian projector.
    const HermitianMatrix inT(p.input.projector().matrix().conjugate());
    r += p.weight * kron(inT, p.output.projector()).matrix();
  }
  return HermitianMatrix(std::move(r));
}

TransformationEnsemble identity_six_state_ensemble() {
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  const std::vector<Eigen::Vector2cd> states = {
      Eigen::Vector2cd(h, h),      Eigen::Vector2cd(h, -h),
      Eigen::Vector2cd(h, h * i),  Eigen::Vector2cd(h, -h * i),
      Eigen::Vector2cd(1.0, 0.0),  Eigen::Vector2cd(0.0, 1.0)};
  std::vector<WeightedPair> pairs;
  for (const auto& s : states) {
    pairs.push_back({1.0 / 6.0, PureState(s), PureState(s)});
  }
  return TransformationEnsemble(2, 2, std::move(pairs));
}

SDPProblem build_sdp(const HermitianMatrix& R, Index d1, Index d2) {
  checkBipartite(R.dim(), d1, d2);
  const auto sigma = hermitian_basis(d1);
  const auto tau = hermitian_basis(d2);

  SDPProblem prob;
  prob.d1 = d1;
  prob.d2 = d2;
  prob.F0 = HermitianMatrix::identity(d1 * d2) * (1.0 / static_cast<double>(d2));
  const Index m = d1 * d1 * (d2 * d2 - 1);
  prob.F.reserve(static_cast<std::size_t>(m));
  prob.index_map.reserve(static_cast<std::size_t>(m));
  prob.c.resize(m);
  Index i = 0;
  for (Index j = 0; j < d1 * d1; ++j) {
    for (Index k = 1; k < d2 * d2; ++k, ++i) {
      prob.F.push_back(kron(sigma[j], tau[k]));
      prob.index_map.emplace_back(j, k);
      prob.c(i) = -hs_inner(prob.F.back(), R);
    }
  }
  return prob;
}

HermitianMatrix assemble_X(const Eigen::VectorXd& x, const SDPProblem& problem) {
  if (x.size() != problem.size()) {
    throw InvalidDimension("parameter vector has length " + std::to_string(x.size()) +
                           ", expected " + std::to_string(problem.size()));
  }
  HermitianMatrix::Matrix out = problem.F0.matrix();
  for (Index i = 0; i < x.size(); ++i) out += x(i) * problem.F[i].matrix();
  return HermitianMatrix(std::move(out));
}

Eigen::VectorXd extract_x(const HermitianMatrix& X, const SDPProblem& problem) {
  checkBipartite(X.dim(), problem.d1, problem.d2);
  const double viol = maxTpViolation(X, problem.d1, problem.d2);
  if (viol > kExtractTpTol) {
    throw NotTracePreserving("Tr_out X deviates from identity by " +
                             std::to_string(viol));
  }
  Eigen::VectorXd x(problem.size());
  for (Index i = 0; i < problem.size(); ++i) {
    const auto [j, k] = problem.index_map[static_cast<std::size_t>(i)];
    x(i) = hs_inner(X, problem.F[i]) /
           (basis_norm(problem.d1, j) * basis_norm(problem.d2, k));
  }
  return x;
}

double fidelity(const HermitianMatrix& X, const HermitianMatrix& R) {
  if (X.dim() != R.dim()) {
    throw InvalidDimension("fidelity: X has dim " + std::to_string(X.dim()) +
                           ", R has dim " + std::to_string(R.dim()));
  }
  return hs_inner(X, R);
}

ChoiOperator::ChoiOperator(HermitianMatrix matrix, Index d1, Index d2)
    : x_(std::move(matrix)), d1_(d1), d2_(d2) {
  checkBipartite(x_.dim(), d1, d2);
  if (!is_psd(x_, kPsdTol)) {
    throw InvalidArgument("Choi operator is not positive semidefinite (lambda_min = " +
                          std::to_string(min_eigenvalue(x_)) + ")");
  }
  const double viol = maxTpViolation(x_, d1, d2);
  if (viol > kTpTol) {
    throw NotTracePreserving("Choi operator is not trace preserving (violation " +
                             std::to_string(viol) + ")");
  }
}

HermitianMatrix identity_choi(Index d) {
  HermitianMatrix::Matrix out = HermitianMatrix::Matrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) out(i * d + i, j * d + j) = 1.0;
  return HermitianMatrix(std::move(out));
}

HermitianMatrix apply_channel(const ChoiOperator& X, const HermitianMatrix& rho) {
  const Index d1 = X.d1(), d2 = X.d2();
  if (rho.dim() != d1) {
    throw InvalidDimension("apply_channel: rho has dim " + std::to_string(rho.dim()) +
                           ", expected " + std::to_string(d1));
  }
  // Tr_in[(ρᵀ⊗1) X](k, l) = Σ_ij ρᵀ(i, j) X(j·d2 + k, i·d2 + l).
  HermitianMatrix::Matrix out = HermitianMatrix::Matrix::Zero(d2, d2);
  const auto& xm = X.matrix().matrix();
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d1; ++j)
      out += rho(j, i) * xm.block(j * d2, i * d2, d2, d2);
  return HermitianMatrix(std::move(out));
}

}  // namespace cptp
