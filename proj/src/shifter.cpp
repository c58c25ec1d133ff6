#include "cptp/shifter.hpp"

#include <cmath>
#include <numbers>

namespace cptp::shifter {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRatioGuard = 1e-12;

struct Entries {
  double r1, r2, r3, r4, r5;
};

Entries entries(const ShifterParams& p) {
  return {0.25 + p.c - p.s, 0.25 - p.c + p.s, 0.25 - p.c - p.s, 0.25 + p.c + p.s, 2 * p.c};
}

double ratioDenominator(const ShifterParams& p) {
  const double den = p.s - p.c;
  if (den <= kRatioGuard) {
    throw DomainError("second-regime formula needs s - c > 0 (alpha = " +
                      std::to_string(p.alpha) + ")");
  }
  return den;
}

}  // namespace

ShifterParams ShifterParams::at(double alpha) {
  if (!(alpha >= 0.0 && alpha <= kPi)) {
    throw DomainError("shift angle must lie in [0, pi], got " + std::to_string(alpha));
  }
  return {alpha, std::cos(alpha) / 12.0, kPi * std::sin(alpha) / 16.0};
}

double alpha0() { return std::atan(8.0 / (3.0 * kPi)); }

Regime regime(double alpha) {
  ShifterParams::at(alpha);
  return alpha <= alpha0() ? Regime::CosBetaOne : Regime::CosBetaRatio;
}

HermitianMatrix shifter_R(double alpha) {
  const auto e = entries(ShifterParams::at(alpha));
  Eigen::Matrix4cd r = Eigen::Matrix4cd::Zero();
  r(0, 0) = e.r1;
  r(1, 1) = e.r2;
  r(2, 2) = e.r3;
  r(3, 3) = e.r4;
  r(0, 3) = r(3, 0) = e.r5;
  return HermitianMatrix(r);
}

double cos_beta(double alpha) {
  const auto p = ShifterParams::at(alpha);
  if (regime(alpha) == Regime::CosBetaOne) return 1.0;
  return p.c / ratioDenominator(p);
}

HermitianMatrix primal_ansatz(double alpha) {
  const double cb = cos_beta(alpha);
  Eigen::Matrix4cd x = Eigen::Matrix4cd::Zero();
  x(0, 0) = cb * cb;
  x(1, 1) = 1.0 - cb * cb;
  x(3, 3) = 1.0;
  x(0, 3) = x(3, 0) = cb;
  return HermitianMatrix(x);
}

double analytic_fidelity(double alpha) {
  const auto p = ShifterParams::at(alpha);
  if (regime(alpha) == Regime::CosBetaOne) return (1.0 + std::cos(alpha)) / 2.0;
  return 0.5 + 2 * p.s + 2 * p.c * p.c / ratioDenominator(p);
}

DualAnsatzParams dual_ansatz_params(double alpha, Regime which) {
  const auto p = ShifterParams::at(alpha);
  if (which == Regime::CosBetaOne) return {0.25 + 3 * p.c, -p.s};
  const double den = ratioDenominator(p);
  return {0.25 + p.s + p.c * p.c / den, -p.c * p.s / den};
}

DualAnsatzParams dual_ansatz_params(double alpha) {
  return dual_ansatz_params(alpha, regime(alpha));
}

DualCertificate dual_ansatz(double alpha) {
  const auto [a0, delta] = dual_ansatz_params(alpha);
  return DualCertificate(a0, pauli_z() * delta);
}

std::array<double, 3> cs_equation_residuals(double alpha) {
  const auto e = entries(ShifterParams::at(alpha));
  const auto [a0, delta] = dual_ansatz_params(alpha);
  const double cb = cos_beta(alpha);
  const double sb2 = 1.0 - cb * cb;
  return {(a0 + delta - e.r1) * cb - e.r5, (a0 + delta - e.r2) * sb2,
          (a0 - delta - e.r4) - e.r5 * cb};
}

std::vector<double> uniform_grid(int n) {
  if (n < 1) return {};
  if (n == 1) return {0.0};
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) grid[static_cast<std::size_t>(k)] = kPi * k / (n - 1);
  grid.back() = kPi;
  return grid;
}

std::vector<SweepRecord> sweep(const std::vector<double>& alpha_grid,
                               const SolverOptions& opts) {
  std::vector<SweepRecord> out;
  out.reserve(alpha_grid.size());
  for (const double alpha : alpha_grid) {
    SweepRecord rec;
    rec.alpha = alpha;
    try {
      const HermitianMatrix R = shifter_R(alpha);
      rec.F_analytic = analytic_fidelity(alpha);
      rec.bound_A0 = 2.0 * max_eigenvalue(R);
      const SDPSolution sol = solve(build_sdp(R, 2, 2), opts);
      rec.status = sol.status;
      rec.F_numeric = fidelity_from_primal(sol.p, 2);
      rec.gap = sol.gap;
      const CertReport rep = certify(primal_ansatz(alpha), dual_ansatz(alpha), R, 2, 2);
      rec.certified = rep.verdict == Verdict::CertifiedOptimal;
    } catch (const Error& e) {
      rec.error = e.what();
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace cptp::shifter
