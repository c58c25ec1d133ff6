// cptp: best-fidelity quantum channels for a target state transformation.
//
// Exit codes: 0 success / converged / certified, 1 input or usage error,
// 2 solver did not converge, 3 candidate not certified optimal.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "cptp/io.hpp"

namespace {

using namespace cptp;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitNotCertified = 3;

struct Common {
  double gap_tol = 1e-8;
  double feas_tol = 1e-9;
  int max_iter = 200;
  int verbosity = 0;

  SolverOptions solver() const {
    SolverOptions o{gap_tol, feas_tol, max_iter, verbosity};
    o.validate();
    return o;
  }
};

void addSolverFlags(CLI::App* cmd, Common& common) {
  cmd->add_option("--tol-gap", common.gap_tol, "Duality-gap tolerance")->capture_default_str();
  cmd->add_option("--tol-feas", common.feas_tol, "Feasibility tolerance")->capture_default_str();
  cmd->add_option("--max-iter", common.max_iter, "Interior-point iteration cap")
      ->capture_default_str();
  cmd->add_flag("-v,--verbose", common.verbosity, "Print solver iterations to stderr");
}

std::optional<Index> opt(int v) {
  return v > 0 ? std::optional<Index>(v) : std::nullopt;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    io::write_file(path, text);
  }
}

std::vector<double> parseAlphaList(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("--alpha: cannot parse '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw InvalidArgument("--alpha: cannot parse '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best-fidelity quantum channels for a target state transformation"};
  app.require_subcommand(1);

  Common common;
  int d1 = 0, d2 = 0;

  // solve
  std::string solveInput, solveOut = ".";
  auto* solveCmd = app.add_subcommand("solve", "Maximize Tr XR over CPTP maps");
  solveCmd->add_option("input", solveInput, "Ensemble or R matrix file")->required();
  solveCmd->add_option("--out", solveOut, "Output directory for X, Z, certificate, summary")
      ->capture_default_str();
  solveCmd->add_option("--d1", d1, "Input dimension (matrix input only)");
  solveCmd->add_option("--d2", d2, "Output dimension (matrix input only)");
  addSolverFlags(solveCmd, common);

  // bound
  std::string boundR, boundA;
  auto* boundCmd = app.add_subcommand("bound", "Fidelity upper bound d1*a0(A)");
  boundCmd->add_option("R", boundR, "R matrix or ensemble file")->required();
  boundCmd->add_option("--A", boundA, "Traceless A matrix file (default A = 0)");
  boundCmd->add_option("--d1", d1, "Input dimension");
  boundCmd->add_option("--d2", d2, "Output dimension");

  // certify
  std::string certX, certFile, certR, certOut;
  auto* certifyCmd = app.add_subcommand("certify", "Check optimality of X with a dual certificate");
  certifyCmd->add_option("X", certX, "Candidate Choi operator file")->required();
  certifyCmd->add_option("certificate", certFile, "Dual certificate file")->required();
  certifyCmd->add_option("R", certR, "R matrix or ensemble file")->required();
  certifyCmd->add_option("--out", certOut, "Report file (default stdout)");
  certifyCmd->add_option("--d1", d1, "Input dimension");
  certifyCmd->add_option("--d2", d2, "Output dimension");
  CertTolerances certTols;
  certifyCmd->add_option("--tol-psd", certTols.psd, "PSD margin tolerance")->capture_default_str();
  certifyCmd->add_option("--tol-tp", certTols.tp, "Trace-preservation tolerance")
      ->capture_default_str();
  certifyCmd->add_option("--tol-cs", certTols.cs, "Relative slackness tolerance")
      ->capture_default_str();
  certifyCmd->add_option("--tol-gap", certTols.gap, "Relative gap tolerance")->capture_default_str();

  // shifter
  int gridN = 101;
  std::string alphaList, shifterOut, format = "delimited";
  auto* shifterCmd = app.add_subcommand("shifter", "Sweep the qubit theta-shifter over shift angles");
  auto* gridOpt = shifterCmd->add_option("--grid", gridN, "Uniform grid size over [0, pi]")
                      ->capture_default_str();
  shifterCmd->add_option("--alpha", alphaList, "Comma-separated shift angles in radians")
      ->excludes(gridOpt);
  shifterCmd->add_option("--out", shifterOut, "Table file (default stdout)");
  shifterCmd->add_option("--format", format, "Table format")
      ->check(CLI::IsMember({"text", "delimited"}))
      ->capture_default_str();
  addSolverFlags(shifterCmd, common);

  // export-shifter
  double exportAlpha = 0;
  std::string exportOut = ".";
  auto* exportCmd = app.add_subcommand(
      "export-shifter", "Write R, the optimal X and its dual certificate for one shift angle");
  exportCmd->add_option("--alpha", exportAlpha, "Shift angle in radians")->required();
  exportCmd->add_option("--out", exportOut, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (solveCmd->parsed()) {
      const auto opts = common.solver();
      const auto in = io::parse_problem(io::read_file(solveInput), opt(d1), opt(d2));
      if (in.weights_renormalized) {
        std::cerr << "warning: ensemble weights did not sum to 1; renormalized\n";
      }
      const SDPProblem prob = build_sdp(in.R, in.d1, in.d2);
      const SDPSolution sol = solve(prob, opts);
      namespace fs = std::filesystem;
      fs::create_directories(solveOut);
      const auto cert = extract_certificate(sol.Z, in.R, in.d1, in.d2);
      io::write_file((fs::path(solveOut) / "X.json").string(),
                     io::format_matrix(assemble_X(sol.x, prob)));
      io::write_file((fs::path(solveOut) / "Z.json").string(), io::format_matrix(sol.Z));
      io::write_file((fs::path(solveOut) / "certificate.json").string(),
                     io::format_certificate(cert.certificate));
      const std::string summary = io::format_solution_summary(sol, in.d2);
      io::write_file((fs::path(solveOut) / "summary.json").string(), summary);
      std::cout << summary;
      return sol.status == SolveStatus::Converged ? kExitOk : kExitNotConverged;
    }

    if (boundCmd->parsed()) {
      const auto in = io::parse_problem(io::read_file(boundR), opt(d1), opt(d2));
      const HermitianMatrix A = boundA.empty() ? HermitianMatrix::zero(in.d1)
                                               : io::parse_matrix(io::read_file(boundA));
      std::cout << g17(fidelity_upper_bound(A, in.R, in.d1, in.d2)) << "\n";
      return kExitOk;
    }

    if (certifyCmd->parsed()) {
      const HermitianMatrix X = io::parse_matrix(io::read_file(certX));
      const DualCertificate cert = io::parse_certificate(io::read_file(certFile));
      const auto in = io::parse_problem(io::read_file(certR), opt(d1), opt(d2));
      if (!(certTols.psd >= 0 && certTols.tp >= 0 && certTols.cs >= 0 && certTols.gap >= 0)) {
        throw InvalidArgument("certify tolerances must be non-negative");
      }
      const CertReport rep = certify(X, cert, in.R, in.d1, in.d2, certTols);
      emit(certOut, io::format_report(rep));
      return rep.verdict == Verdict::CertifiedOptimal ? kExitOk : kExitNotCertified;
    }

    if (shifterCmd->parsed()) {
      const auto opts = common.solver();
      const std::vector<double> grid =
          alphaList.empty() && shifterCmd->count("--alpha") == 0 ? shifter::uniform_grid(gridN)
                                                                 : parseAlphaList(alphaList);
      if (grid.empty()) throw InvalidArgument("empty shift-angle grid");
      for (const double a : grid) shifter::ShifterParams::at(a);
      const auto records = shifter::sweep(grid, opts);
      emit(shifterOut, format == "text" ? io::format_sweep_text(records)
                                        : io::format_sweep_csv(records));
      for (const auto& r : records) {
        if (r.error) std::cerr << "alpha " << g17(r.alpha) << ": " << *r.error << "\n";
      }
      return kExitOk;
    }

    if (exportCmd->parsed()) {
      namespace fs = std::filesystem;
      fs::create_directories(exportOut);
      io::write_file((fs::path(exportOut) / "R.json").string(),
                     io::format_matrix(shifter::shifter_R(exportAlpha)));
      io::write_file((fs::path(exportOut) / "X.json").string(),
                     io::format_matrix(shifter::primal_ansatz(exportAlpha)));
      io::write_file((fs::path(exportOut) / "certificate.json").string(),
                     io::format_certificate(shifter::dual_ansatz(exportAlpha)));
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
