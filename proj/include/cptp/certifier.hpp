#pragma once

// Optimality certificates for a candidate Choi operator X: both sides
// feasible, complementary slackness ZX = 0, and a vanishing duality gap
// d1·a0 − Tr XR.

#include <string>

#include "cptp/dual_bounds.hpp"

namespace cptp {

enum class Verdict { CertifiedOptimal, FeasibleNotCertified, Infeasible };

std::string to_string(Verdict verdict);

struct CertTolerances {
  double psd = 1e-9;     // λ_min(X), λ_min(Z) ≥ −psd
  double tp = 1e-9;      // ‖Tr_out X − 1‖_F ≤ tp
  double cs = 1e-8;      // ‖ZX‖_F ≤ cs·(1 + ‖Z‖_F‖X‖_F)
  double gap = 1e-8;     // d1·a0 − Tr XR ≤ gap·(1 + |Tr XR|)
};

struct CertReport {
  double primal_psd_margin = 0;
  double tp_violation = 0;
  double dual_psd_margin = 0;
  double cs_residual = 0;
  double cs_symmetrized = 0;  // ‖ZX + XZ‖_F / 2
  double primal_fidelity = 0;
  double dual_bound = 0;
  double gap = 0;
  Verdict verdict = Verdict::Infeasible;
};

CertReport certify(const HermitianMatrix& X, const DualCertificate& cert,
                   const HermitianMatrix& R, Index d1, Index d2,
                   const CertTolerances& tols = {});

struct CsSolution {
  DualCertificate certificate;
  double residual;   // ‖ZX‖_F at the solution
  bool degenerate;   // least-squares system was rank deficient
};

/// Least-squares solution of (a0·1 + A⊗1 − R) X = 0 over a0 and traceless
/// Hermitian A (d1² real unknowns); minimum norm when rank deficient. The
/// resulting Z is not checked for positivity.
CsSolution solve_cs_for_certificate(const HermitianMatrix& X, const HermitianMatrix& R,
                                    Index d1, Index d2);

}  // namespace cptp
