#pragma once

// Text file formats (JSON documents):
//
//   matrix       {"dim": n, "entries": [[[re, im], ...], ...]}     n×n rows
//   ensemble     {"d1": a, "d2": b,
//                 "pairs": [{"weight": w, "in": [[re, im], ...], "out": [...]}]}
//   certificate  {"a0": x, "A": <matrix>}
//   report       every CertReport field plus "verdict"
//   summary      {"F_opt", "p", "d", "gap", "status", ...}
//
// Numbers are written in shortest round-trip form, so re-reading a file
// reproduces every double exactly. The sweep table is comma-separated text
// with %.17g fields.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cptp/certifier.hpp"
#include "cptp/shifter.hpp"

namespace cptp::io {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

HermitianMatrix parse_matrix(std::string_view text);
std::string format_matrix(const HermitianMatrix& m);

TransformationEnsemble parse_ensemble(std::string_view text);

DualCertificate parse_certificate(std::string_view text);
std::string format_certificate(const DualCertificate& cert);

/// An R matrix plus its bipartite split, read from either an ensemble
/// document or a matrix document.
struct ProblemInput {
  HermitianMatrix R;
  Index d1 = 0;
  Index d2 = 0;
  bool from_ensemble = false;
  bool weights_renormalized = false;
};

/// Ensemble documents carry d1/d2. For a bare matrix, d1/d2 come from the
/// arguments or, when omitted, from a square dimension (d1 = d2 = √dim).
ProblemInput parse_problem(std::string_view text, std::optional<Index> d1 = {},
                           std::optional<Index> d2 = {});

std::string format_report(const CertReport& report);
std::string format_solution_summary(const SDPSolution& sol, Index d2);

std::string format_sweep_csv(const std::vector<shifter::SweepRecord>& records);
std::string format_sweep_text(const std::vector<shifter::SweepRecord>& records);

}  // namespace cptp::io
