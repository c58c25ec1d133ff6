#pragma once

// Universal qubit θ-shifter: a map taking ψ(θ, φ) to ψ(θ + α, φ) as
// closely as a CPTP map allows. Closed-form fidelity operator R(α),
// primal and dual optima in both regimes, and a numeric sweep.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cptp/certifier.hpp"

namespace cptp::shifter {

/// α ∈ [0, π] with c = cos α / 12 and s = π sin α / 16.
struct ShifterParams {
  double alpha;
  double c;
  double s;

  /// Throws DomainError outside [0, π].
  static ShifterParams at(double alpha);
};

enum class Regime { CosBetaOne, CosBetaRatio };

/// arctan(8 / (3π)); the switch between the two optimal primal forms.
double alpha0();

/// CosBetaOne iff α ≤ α0.
Regime regime(double alpha);

/// 4×4 real R with diagonal (1/4+c−s, 1/4−c+s, 1/4−c−s, 1/4+c+s) and corners 2c.
HermitianMatrix shifter_R(double alpha);

/// cos β of the optimal primal point: 1, or c/(s − c) in the second regime.
double cos_beta(double alpha);

/// [[cos²β,0,0,cos β],[0,sin²β,0,0],[0,0,0,0],[cos β,0,0,1]].
HermitianMatrix primal_ansatz(double alpha);

/// (1 + cos α)/2 for α ≤ α0, else 1/2 + 2s + 2c²/(s − c).
double analytic_fidelity(double alpha);

/// a0 and δ with A = δσz solving ZX = 0:
///   α ≤ α0: a0 = 1/4 + 3c, δ = −s
///   α > α0: a0 = 1/4 + s + c²/(s − c), δ = −c·s/(s − c)
struct DualAnsatzParams {
  double a0;
  double delta;
};
DualAnsatzParams dual_ansatz_params(double alpha);
/// Same formulas with the regime chosen by the caller.
DualAnsatzParams dual_ansatz_params(double alpha, Regime regime);

DualCertificate dual_ansatz(double alpha);

/// Residuals of the three independent entries of ZX = 0 for the regime's
/// (a0, δ, cos β):
///   (a0 + δ − r1) cos β − r5,  (a0 + δ − r2) sin²β,  (a0 − δ − r4) − r5 cos β.
std::array<double, 3> cs_equation_residuals(double alpha);

/// n equally spaced points covering [0, π] inclusive (n ≥ 2), or {0} for n = 1.
std::vector<double> uniform_grid(int n);

struct SweepRecord {
  double alpha = 0;
  double F_analytic = 0;
  double F_numeric = 0;
  double gap = 0;
  double bound_A0 = 0;   // 2·λ_max(R(α))
  bool certified = false;
  SolveStatus status = SolveStatus::NumericalFailure;
  std::optional<std::string> error;
};

/// Solves, bounds and certifies each grid point. Records are ordered as
/// the grid; per-point failures are stored in the record.
std::vector<SweepRecord> sweep(const std::vector<double>& alpha_grid,
                               const SolverOptions& opts = {});

}  // namespace cptp::shifter
