#pragma once

// Reduced dual of the CPTP fidelity problem. Every dual feasible Z has the
// form Z = a0·1 + A⊗1 − R with A traceless Hermitian on the input space,
// and the dual objective is −d1·a0 + 1/d2, so d1·a0 bounds the fidelity of
// every CPTP map from above.

#include "cptp/sdp.hpp"

namespace cptp {

/// Scalar a0 and traceless Hermitian A (|Tr A| ≤ 1e-10, else InvalidCertificate).
class DualCertificate {
 public:
  static constexpr double kTraceTol = 1e-10;

  DualCertificate(double a0, HermitianMatrix A);

  double a0() const { return a0_; }
  const HermitianMatrix& A() const { return A_; }

 private:
  double a0_;
  HermitianMatrix A_;
};

/// Z = a0·1 + A⊗1 − R.
HermitianMatrix dual_matrix(const DualCertificate& cert, const HermitianMatrix& R);

/// Smallest a0 making Z PSD for this A: −λ_min(A⊗1 − R).
double a0_of_A(const HermitianMatrix& A, const HermitianMatrix& R);

/// d1·a0_of_A(A, R).
double fidelity_upper_bound(const HermitianMatrix& A, const HermitianMatrix& R,
                            Index d1, Index d2);

struct ExtractedCertificate {
  DualCertificate certificate;
  /// ‖Z − (a0·1 + A⊗1 − R)‖_F; zero iff Z meets the dual equality constraints.
  double residual;
};

/// a0 = Tr(Z + R)/(d1·d2), A = Tr_out(Z + R)/d2 − a0·1.
ExtractedCertificate extract_certificate(const HermitianMatrix& Z,
                                         const HermitianMatrix& R, Index d1, Index d2);

/// Minimizes a0_of_A over traceless A by solving the SDP and extracting
/// the certificate; a0 is then reset to a0_of_A(A) so the returned
/// certificate is exactly feasible.
DualCertificate minimize_a0(const HermitianMatrix& R, Index d1, Index d2,
                            const SolverOptions& opts = {});

struct SubgradientOptions {
  int max_iter = 20000;
  double initial_step = 0.5;
  /// Eigenvalues within this distance of the maximum count as the top eigenspace.
  double degeneracy_tol = 1e-9;
};

/// Independent route: projected subgradient descent on λ_max(R − A⊗1) in
/// the d1² − 1 real coordinates of A. Returns the best iterate seen.
DualCertificate minimize_a0_subgradient(const HermitianMatrix& R, Index d1, Index d2,
                                        const SubgradientOptions& opts = {});

}  // namespace cptp
