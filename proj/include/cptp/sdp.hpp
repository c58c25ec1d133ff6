#pragma once

// Primal-dual interior-point solver for
//
//   (primal)  minimize cᵀx   subject to  F(x) = F0 + Σ x_i F_i ⪰ 0
//   (dual)    maximize −Tr F0 Z  subject to  Tr F_i Z = c_i,  Z ⪰ 0
//
// Complex Hermitian data is solved through its real symmetric embedding;
// reported objective values and Z are in the original complex coordinates.

#include <iosfwd>
#include <string>
#include <vector>

#include "cptp/problem.hpp"

namespace cptp {

enum class SolveStatus { Converged, IterationLimit, NumericalFailure };

std::string to_string(SolveStatus status);

struct SolverOptions {
  double gap_tol = 1e-8;
  double feas_tol = 1e-9;
  int max_iter = 200;
  int verbosity = 0;

  /// Throws InvalidArgument on non-positive tolerances or iteration cap.
  void validate() const;
};

struct SDPSolution {
  Eigen::VectorXd x;
  HermitianMatrix Z;
  double p = 0;     // cᵀx
  double d = 0;     // −Tr F0 Z
  double gap = 0;   // p − d
  double dual_residual = 0;  // max_i |Tr F_i Z − c_i|
  SolveStatus status = SolveStatus::NumericalFailure;
  int iterations = 0;
  bool schur_perturbed = false;
  std::vector<double> gap_history;
};

SDPSolution solve(const SDPProblem& problem, const SolverOptions& opts = {});

struct FeasibilityReport {
  double min_eigenvalue = 0;
  double max_equality_violation = 0;
  bool feasible = false;
};

/// λ_min of F(x); feasible iff λ_min ≥ −tol.
FeasibilityReport check_primal_feasible(const Eigen::VectorXd& x,
                                        const SDPProblem& problem, double tol);

/// λ_min of Z and max_i |Tr F_i Z − c_i|; feasible iff both within tol.
FeasibilityReport check_dual_feasible(const HermitianMatrix& Z,
                                      const SDPProblem& problem, double tol);

/// Real symmetric SDP in the same primal/dual form.
struct RealSDP {
  Eigen::MatrixXd F0;
  std::vector<Eigen::MatrixXd> F;
  Eigen::VectorXd c;
};

struct RealSDPResult {
  Eigen::VectorXd x;
  Eigen::MatrixXd Z;
  double p = 0;
  double d = 0;
  double dual_residual = 0;
  SolveStatus status = SolveStatus::NumericalFailure;
  int iterations = 0;
  bool schur_perturbed = false;
  std::vector<double> gap_history;
};

/// Each F_i replaced by real_embed(F_i); c unchanged. A structured dual
/// Z̃ = real_embed(Z)/2 then satisfies Tr F̃_i Z̃ = Tr F_i Z.
RealSDP embed_problem(const SDPProblem& problem);

/// Requires F0 ≻ 0 so that x = 0 is strictly feasible.
RealSDPResult solve_real(const RealSDP& problem, const SolverOptions& opts);

}  // namespace cptp
