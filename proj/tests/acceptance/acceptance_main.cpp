// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "cptp/certifier.hpp"
#include "cptp/shifter.hpp"
#include "test_support.hpp"

namespace {

using namespace cptp;
using cptp::testing::Rng;
using Matrix = HermitianMatrix::Matrix;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double analyticClosed(double alpha) {
  const double c = std::cos(alpha) / 12, s = kPi * std::sin(alpha) / 16;
  return alpha <= std::atan(8 / (3 * kPi)) ? (1 + std::cos(alpha)) / 2
                                           : 0.5 + 2 * s + 2 * c * c / (s - c);
}

Outcome ac1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto recs = shifter::sweep(shifter::uniform_grid(101));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double worst = 0;
  bool ok = recs.size() == 101;
  for (const auto& r : recs) {
    if (r.error || r.status != SolveStatus::Converged) ok = false;
    worst = std::max(worst, std::abs(r.F_numeric - analyticClosed(r.alpha)));
  }
  ok = ok && worst <= 1e-6 && secs < 60;
  return {ok, fmt("101 points, max |F_num - F_an| = %.3e (tol 1e-6), %.3f s (limit 60 s)", worst, secs)};
}

Outcome ac2() {
  SolverOptions opts;
  opts.gap_tol = 1e-11;
  struct Spot {
    double alpha, want, tol;
  };
  const Spot spots[] = {{0.0, 1.0, 1e-9}, {kPi / 2, 0.5 + kPi / 8, 1e-7}, {kPi, 2.0 / 3, 1e-7}};
  bool ok = true;
  std::string detail;
  for (const auto& sp : spots) {
    const auto sol = solve(build_sdp(shifter::shifter_R(sp.alpha), 2, 2), opts);
    const double err = std::abs(fidelity_from_primal(sol.p, 2) - sp.want);
    ok = ok && sol.status == SolveStatus::Converged && err <= sp.tol;
    detail += fmt("F(%.4f) err %.2e (tol %.0e); ", sp.alpha, err, sp.tol);
  }
  return {ok, detail + "gap_tol 1e-11"};
}

Outcome ac3() {
  double worstCs = 0, worstGap = 0;
  int certified = 0;
  const auto grid = shifter::uniform_grid(101);
  for (double a : grid) {
    const auto X = shifter::primal_ansatz(a);
    const auto cert = shifter::dual_ansatz(a);
    const auto rep = certify(X, cert, shifter::shifter_R(a), 2, 2);
    if (rep.verdict == Verdict::CertifiedOptimal) ++certified;
    worstCs = std::max(worstCs, rep.cs_residual);
    worstGap = std::max(worstGap, std::abs(2 * cert.a0() - rep.primal_fidelity));
  }
  const bool ok = certified == static_cast<int>(grid.size()) && worstCs <= 1e-10 && worstGap <= 1e-10;
  return {ok, fmt("%d/%zu certified-optimal, max cs %.2e, max |2a0 - Tr XR| %.2e (tol 1e-10)",
                  certified, grid.size(), worstCs, worstGap)};
}

// λ_max(R(α)) from the {|00⟩,|11⟩} block and the two isolated diagonal entries.
double blockLambdaMax(double alpha) {
  const double c = std::cos(alpha) / 12, s = kPi * std::sin(alpha) / 16;
  const double r1 = 0.25 + c - s, r2 = 0.25 - c + s, r3 = 0.25 - c - s, r4 = 0.25 + c + s;
  const double block = (r1 + r4) / 2 + std::sqrt((r1 - r4) * (r1 - r4) / 4 + 4 * c * c);
  return std::max({block, r2, r3});
}

Outcome ac4() {
  bool ok = true;
  std::string detail;
  for (double a : {0.0, kPi / 2, kPi}) {
    const double bound = 2 * max_eigenvalue(shifter::shifter_R(a));
    const double oracle = 2 * blockLambdaMax(a);
    const double diff = std::abs(bound - analyticClosed(a));
    ok = ok && diff <= 1e-9 && std::abs(bound - oracle) <= 1e-12;
    detail += fmt("|2lmax - F| at %.4f = %.1e; ", a, diff);
  }
  const double excess = 2 * max_eigenvalue(shifter::shifter_R(0.3)) - analyticClosed(0.3);
  ok = ok && excess >= 1e-3;
  return {ok, detail + fmt("excess at 0.3 = %.5f (need >= 1e-3)", excess)};
}

Outcome ac5() {
  Rng rng(2024);
  int violations = 0;
  double worst = -1e300;
  for (int t = 0; t < 1000; ++t) {
    const Index d1 = 2 + static_cast<Index>(rng() % 2), d2 = 2 + static_cast<Index>(rng() % 2);
    const auto R = cptp::testing::random_density(rng, d1 * d2, 1 + static_cast<Index>(rng() % 4));
    const auto X = cptp::testing::random_cptp(rng, build_sdp(R, d1, d2));
    // Scales down to 1e-3 keep some bounds close to λ_max-tight.
    const double scale = std::pow(10.0, -static_cast<double>(t % 4));
    const auto A = cptp::testing::random_traceless(rng, d1) * scale;
    const double excess = fidelity(X, R) - fidelity_upper_bound(A, R, d1, d2);
    worst = std::max(worst, excess);
    if (excess > 1e-10) ++violations;
  }
  return {violations == 0, fmt("1000 trials, %d violations, max(Tr XR - d1 a0) = %.3e", violations, worst)};
}

Outcome ac6() {
  int solves = 0, bad = 0;
  double worstGap = 0;
  auto check = [&](const HermitianMatrix& R, Index d1, Index d2, double fOpt) {
    const auto sol = solve(build_sdp(R, d1, d2));
    ++solves;
    if (sol.status != SolveStatus::Converged) {
      ++bad;
      return;
    }
    worstGap = std::max(worstGap, sol.p - sol.d);
    bool ok = sol.d <= sol.p && sol.p - sol.d <= 1e-8;
    if (!std::isnan(fOpt)) {
      ok = ok && fidelity_from_primal(sol.p, d2) <= fOpt + 1e-12 &&
           fidelity_from_primal(sol.d, d2) >= fOpt - 1e-12;
    }
    if (!ok) ++bad;
  };
  for (double a : shifter::uniform_grid(101)) check(shifter::shifter_R(a), 2, 2, analyticClosed(a));
  Rng rng(77);
  for (int t = 0; t < 50; ++t) {
    const Index d1 = 2 + t % 2, d2 = 2 + (t / 2) % 2;
    check(cptp::testing::random_density(rng, d1 * d2, 1 + t % 3), d1, d2, std::nan(""));
  }
  return {bad == 0, fmt("%d solves, %d outside bracket, max p - d = %.2e (tol 1e-8)", solves, bad, worstGap)};
}

Outcome ac7() {
  Rng rng(7);
  double eigRes = 0, eigOrth = 0;
  for (int t = 0; t < 1000; ++t) {
    const Index n = 1 + t % 16;
    const auto H = cptp::testing::random_hermitian(rng, n);
    const auto e = eigh(H);
    const Matrix V = e.eigenvectors;
    eigRes = std::max(eigRes, (H.matrix() * V - V * e.eigenvalues.asDiagonal()).norm());
    eigOrth = std::max(eigOrth, (V.adjoint() * V - Matrix::Identity(n, n)).norm());
  }
  double kronErr = 0;
  for (int t = 0; t < 200; ++t) {
    const Index d1 = 2 + t % 3, d2 = 2 + (t / 3) % 3;
    const auto A = cptp::testing::random_hermitian(rng, d1), B = cptp::testing::random_hermitian(rng, d2);
    const auto C = cptp::testing::random_hermitian(rng, d1), D = cptp::testing::random_hermitian(rng, d2);
    const auto AB = kron(A, B);
    kronErr = std::max(kronErr, (partial_trace_out(AB, d1, d2).matrix() - A.matrix() * B.trace()).norm());
    kronErr = std::max(kronErr, (partial_trace_in(AB, d1, d2).matrix() - B.matrix() * A.trace()).norm());
    const Matrix prod = AB.matrix() * kron(C, D).matrix();
    Matrix expect(d1 * d2, d1 * d2);
    const Matrix ac = A.matrix() * C.matrix(), bd = B.matrix() * D.matrix();
    for (Index i = 0; i < d1; ++i)
      for (Index j = 0; j < d1; ++j) expect.block(i * d2, j * d2, d2, d2) = ac(i, j) * bd;
    kronErr = std::max(kronErr, (prod - expect).norm());
  }
  double embedErr = 0;
  for (int t = 0; t < 200; ++t) {
    const Index n = 1 + t % 8;
    const auto H = cptp::testing::random_hermitian(rng, n);
    const Eigen::VectorXd ev = eigh(H).eigenvalues;
    Eigen::VectorXd doubled(2 * n);
    for (Index i = 0; i < n; ++i) doubled(2 * i) = doubled(2 * i + 1) = ev(i);
    std::sort(doubled.data(), doubled.data() + doubled.size());
    Eigen::VectorXd got = eigh(real_embed(H)).eigenvalues;
    std::sort(got.data(), got.data() + got.size());
    embedErr = std::max(embedErr, (got - doubled).cwiseAbs().maxCoeff());
  }
  const bool ok = eigRes <= 1e-10 && eigOrth <= 1e-10 && kronErr <= 1e-12 && embedErr <= 1e-10;
  return {ok, fmt("eig residual %.2e, orthonormality %.2e (tol 1e-10); kron/ptrace %.2e (tol 1e-12); "
                  "embedding %.2e (tol 1e-10)",
                  eigRes, eigOrth, kronErr, embedErr)};
}

Outcome ac8() {
  double worstCs = 0;
  int signMismatch = 0;
  for (double a : shifter::uniform_grid(101)) {
    for (double r : shifter::cs_equation_residuals(a)) worstCs = std::max(worstCs, std::abs(r));
    const double c = std::cos(a) / 12, s = kPi * std::sin(a) / 16;
    const auto d = shifter::dual_ansatz_params(a, shifter::Regime::CosBetaOne);
    const auto Z = dual_matrix(DualCertificate(d.a0, pauli_z() * d.delta), shifter::shifter_R(a));
    Eigen::VectorXd got = eigh(Z).eigenvalues;
    std::vector<double> want{4 * c - 2 * s, 4 * c + 2 * s, 0.0, 4 * c};
    std::sort(want.begin(), want.end());
    for (Index k = 0; k < 4; ++k) {
      if (std::abs(got(k) - want[static_cast<std::size_t>(k)]) > 1e-12) ++signMismatch;
    }
    const bool nonneg = want.front() >= -1e-14;
    if (nonneg != (a <= std::atan(8 / (3 * kPi)))) ++signMismatch;
  }
  // Both sides of the regime switch.
  for (double a : {shifter::alpha0(), std::nextafter(shifter::alpha0(), 4.0)}) {
    for (double r : shifter::cs_equation_residuals(a)) worstCs = std::max(worstCs, std::abs(r));
  }
  return {worstCs <= 1e-12 && signMismatch == 0,
          fmt("max CS equation residual %.2e (tol 1e-12), %d spectrum/sign mismatches", worstCs,
              signMismatch)};
}

Outcome ac9() {
  const auto ens = identity_six_state_ensemble();
  const auto R = build_R(ens);
  const auto prob = build_sdp(R, 2, 2);
  const auto sol = solve(prob);
  const double F = fidelity_from_primal(sol.p, 2);
  const ChoiOperator X(assemble_X(sol.x, prob), 2, 2);
  double worstOverlap = 1;
  for (const auto& pr : ens.pairs()) {
    const auto& psi = pr.input.amplitudes();
    const auto out = apply_channel(X, pr.input.projector());
    worstOverlap = std::min(worstOverlap, (psi.adjoint() * out.matrix() * psi)(0).real());
  }
  const bool ok = sol.status == SolveStatus::Converged && std::abs(F - 1) <= 1e-7 &&
                  worstOverlap >= 1 - 1e-6;
  return {ok, fmt("F_opt = %.12f (tol 1e-7), min overlap %.12f (need >= 1 - 1e-6)", F, worstOverlap)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 shifter sweep matches closed form", ac1},
      {"AC2 spot values", ac2},
      {"AC3 closed-form primal/dual certify", ac3},
      {"AC4 spectral bound tightness pattern", ac4},
      {"AC5 weak duality", ac5},
      {"AC6 solver bracket", ac6},
      {"AC7 linear algebra", ac7},
      {"AC8 slackness equations and regime-1 spectrum", ac8},
      {"AC9 identity ensemble", ac9},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o{false, ""};
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
