#pragma once

// Fidelity operator R, the trace-preserving parameterization of Choi
// operators, and the semidefinite program data built from them.

#include <utility>
#include <vector>

#include "cptp/hermitian.hpp"

namespace cptp {

/// Normalized pure state vector.
class PureState {
 public:
  static constexpr double kNormTol = 1e-10;

  /// Throws InvalidArgument unless Σ|a_i|² = 1 within kNormTol.
  explicit PureState(Eigen::VectorXcd amplitudes);

  Index dim() const { return amps_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  /// |ψ⟩⟨ψ|
  HermitianMatrix projector() const;

 private:
  Eigen::VectorXcd amps_;
};

struct WeightedPair {
  double weight;
  PureState input;
  PureState output;
};

/// Weighted input/output pairs describing the desired transformation.
///
/// Weights are normalized to sum 1 on construction. weightsRenormalized()
/// reports whether the supplied sum differed from 1 by more than 1e-6.
class TransformationEnsemble {
 public:
  TransformationEnsemble(Index d1, Index d2, std::vector<WeightedPair> pairs);

  Index d1() const { return d1_; }
  Index d2() const { return d2_; }
  const std::vector<WeightedPair>& pairs() const { return pairs_; }
  bool weightsRenormalized() const { return renormalized_; }
  double rawWeightSum() const { return raw_sum_; }

 private:
  Index d1_, d2_;
  std::vector<WeightedPair> pairs_;
  bool renormalized_ = false;
  double raw_sum_ = 0;
};

/// R = Σ_k w_k (|in_k⟩⟨in_k|)ᵀ ⊗ |out_k⟩⟨out_k|, transpose in the computational basis.
HermitianMatrix build_R(const TransformationEnsemble& ensemble);

/// Ensemble of the six Pauli axis states (±x, ±y, ±z), each mapped to itself.
TransformationEnsemble identity_six_state_ensemble();

/// Primal data: minimize cᵀx subject to F0 + Σ x_i F_i ⪰ 0, plus the
/// basis-index map i ↔ (j, k), k ≠ 0, that produced each F_i.
struct SDPProblem {
  Index d1 = 0;
  Index d2 = 0;
  HermitianMatrix F0;
  std::vector<HermitianMatrix> F;
  Eigen::VectorXd c;
  std::vector<std::pair<Index, Index>> index_map;

  Index size() const { return static_cast<Index>(F.size()); }
};

/// F0 = 1/d2, F_i = σʲ⊗τᵏ (j outer, k = 1.. inner), c_i = −Tr(σʲ⊗τᵏ R).
SDPProblem build_sdp(const HermitianMatrix& R, Index d1, Index d2);

/// X = F0 + Σ x_i F_i. Trace preserving by construction; not necessarily PSD.
HermitianMatrix assemble_X(const Eigen::VectorXd& x, const SDPProblem& problem);

/// Hilbert–Schmidt coordinates x_i = Tr(X σʲ⊗τᵏ) / (N_j N_k).
/// Throws NotTracePreserving if ‖Tr_out X − 1‖_max > 1e-8.
Eigen::VectorXd extract_x(const HermitianMatrix& X, const SDPProblem& problem);

/// Re Tr(XR).
double fidelity(const HermitianMatrix& X, const HermitianMatrix& R);

/// F_opt = −p* + 1/d2.
inline double fidelity_from_primal(double p_star, Index d2) {
  return -p_star + 1.0 / static_cast<double>(d2);
}

/// Validated Choi operator of a CPTP map: PSD (relative tol 1e-9) and
/// Tr_out X = 1 (entrywise tol 1e-9).
class ChoiOperator {
 public:
  static constexpr double kPsdTol = 1e-9;
  static constexpr double kTpTol = 1e-9;

  ChoiOperator(HermitianMatrix matrix, Index d1, Index d2);

  const HermitianMatrix& matrix() const { return x_; }
  Index d1() const { return d1_; }
  Index d2() const { return d2_; }

 private:
  HermitianMatrix x_;
  Index d1_, d2_;
};

/// Σ_ij |ii⟩⟨jj|.
HermitianMatrix identity_choi(Index d);

/// $(ρ) = Tr_in[(ρᵀ ⊗ 1) X], consistent with F = Tr XR.
HermitianMatrix apply_channel(const ChoiOperator& X, const HermitianMatrix& rho);

}  // namespace cptp
