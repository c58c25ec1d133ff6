#include "cptp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cptp::io {

namespace {

using nlohmann::json;

json parseJson(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object() || !obj.contains(name)) {
    throw ParseError(where + ": missing field '" + name + "'");
  }
  return obj.at(name);
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return v.get<double>();
}

Index positiveInt(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ParseError(where + ": expected a positive integer");
  }
  return static_cast<Index>(v.get<long long>());
}

Complex complexPair(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw ParseError(where + ": expected [re, im]");
  return {number(v[0], where), number(v[1], where)};
}

Eigen::VectorXcd complexVector(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw ParseError(where + ": expected a non-empty array");
  Eigen::VectorXcd out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Index>(i)) = complexPair(v[i], where + "[" + std::to_string(i) + "]");
  }
  return out;
}

json pair(Complex z) { return json::array({z.real(), z.imag()}); }

json matrixJson(const HermitianMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.dim(); ++j) row.push_back(pair(m(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"dim", m.dim()}, {"entries", std::move(rows)}};
}

HermitianMatrix matrixFromJson(const json& doc, const std::string& where) {
  const Index dim = positiveInt(field(doc, "dim", where), where + ".dim");
  const json& rows = field(doc, "entries", where);
  const std::string ew = where + ".entries";
  if (!rows.is_array() || static_cast<Index>(rows.size()) != dim) {
    throw ParseError(ew + ": expected " + std::to_string(dim) + " rows, got " +
                     std::to_string(rows.is_array() ? rows.size() : 0));
  }
  HermitianMatrix::Matrix m(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    const std::string rw = ew + "[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<Index>(row.size()) != dim) {
      throw ParseError(rw + ": expected " + std::to_string(dim) + " entries");
    }
    for (Index j = 0; j < dim; ++j) {
      m(i, j) = complexPair(row[static_cast<std::size_t>(j)],
                            rw + "[" + std::to_string(j) + "]");
    }
  }
  try {
    return HermitianMatrix(std::move(m));
  } catch (const Error& e) {
    throw ParseError(ew + ": " + e.what());
  }
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

HermitianMatrix parse_matrix(std::string_view text) {
  return matrixFromJson(parseJson(text), "matrix");
}

std::string format_matrix(const HermitianMatrix& m) { return matrixJson(m).dump(1) + "\n"; }

TransformationEnsemble parse_ensemble(std::string_view text) {
  const json doc = parseJson(text);
  const Index d1 = positiveInt(field(doc, "d1", "ensemble"), "ensemble.d1");
  const Index d2 = positiveInt(field(doc, "d2", "ensemble"), "ensemble.d2");
  const json& pairs = field(doc, "pairs", "ensemble");
  if (!pairs.is_array()) throw ParseError("ensemble.pairs: expected an array");

  std::vector<WeightedPair> out;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const std::string where = "pair " + std::to_string(k + 1);
    const json& p = pairs[k];
    const double w = number(field(p, "weight", where), where + ".weight");
    const Eigen::VectorXcd in = complexVector(field(p, "in", where), where + ".in");
    const Eigen::VectorXcd outv = complexVector(field(p, "out", where), where + ".out");
    // Dimension checks come first so the message names the expected size.
    if (in.size() != d1) {
      throw ParseError(where + ": input dim " + std::to_string(in.size()) + ", expected " +
                       std::to_string(d1));
    }
    if (outv.size() != d2) {
      throw ParseError(where + ": output dim " + std::to_string(outv.size()) +
                       ", expected " + std::to_string(d2));
    }
    try {
      out.push_back({w, PureState(in), PureState(outv)});
    } catch (const Error& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  try {
    return TransformationEnsemble(d1, d2, std::move(out));
  } catch (const Error& e) {
    throw ParseError(std::string("ensemble: ") + e.what());
  }
}

DualCertificate parse_certificate(std::string_view text) {
  const json doc = parseJson(text);
  const double a0 = number(field(doc, "a0", "certificate"), "certificate.a0");
  HermitianMatrix A = matrixFromJson(field(doc, "A", "certificate"), "certificate.A");
  try {
    return DualCertificate(a0, std::move(A));
  } catch (const Error& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
}

std::string format_certificate(const DualCertificate& cert) {
  const json doc = {{"a0", cert.a0()}, {"A", matrixJson(cert.A())}};
  return doc.dump(1) + "\n";
}

ProblemInput parse_problem(std::string_view text, std::optional<Index> d1,
                           std::optional<Index> d2) {
  const json doc = parseJson(text);
  ProblemInput in;
  if (doc.is_object() && doc.contains("pairs")) {
    const auto ens = parse_ensemble(text);
    in.R = build_R(ens);
    in.d1 = ens.d1();
    in.d2 = ens.d2();
    in.from_ensemble = true;
    in.weights_renormalized = ens.weightsRenormalized();
    if ((d1 && *d1 != in.d1) || (d2 && *d2 != in.d2)) {
      throw ParseError("ensemble: d1/d2 disagree with the requested dimensions");
    }
    return in;
  }
  in.R = matrixFromJson(doc, "matrix");
  const Index dim = in.R.dim();
  if (d1 && d2) {
    in.d1 = *d1;
    in.d2 = *d2;
  } else if (d1 || d2) {
    const Index known = d1 ? *d1 : *d2;
    if (known < 1 || dim % known != 0) {
      throw ParseError("matrix.dim " + std::to_string(dim) + " is not divisible by " +
                       std::to_string(known));
    }
    in.d1 = d1 ? known : dim / known;
    in.d2 = d2 ? known : dim / known;
  } else {
    const auto root = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(dim))));
    if (root * root != dim) {
      throw ParseError("matrix.dim " + std::to_string(dim) +
                       " is not a perfect square; pass --d1/--d2");
    }
    in.d1 = in.d2 = root;
  }
  if (in.d1 * in.d2 != dim) {
    throw ParseError("matrix.dim " + std::to_string(dim) + " does not equal d1*d2");
  }
  return in;
}

std::string format_report(const CertReport& r) {
  const json doc = {{"primal_psd_margin", r.primal_psd_margin},
                    {"tp_violation", r.tp_violation},
                    {"dual_psd_margin", r.dual_psd_margin},
                    {"cs_residual", r.cs_residual},
                    {"cs_symmetrized", r.cs_symmetrized},
                    {"primal_fidelity", r.primal_fidelity},
                    {"dual_bound", r.dual_bound},
                    {"gap", r.gap},
                    {"verdict", to_string(r.verdict)}};
  return doc.dump(1) + "\n";
}

std::string format_solution_summary(const SDPSolution& sol, Index d2) {
  const json doc = {{"F_opt", fidelity_from_primal(sol.p, d2)},
                    {"F_upper", fidelity_from_primal(sol.d, d2)},
                    {"p", sol.p},
                    {"d", sol.d},
                    {"gap", sol.gap},
                    {"dual_residual", sol.dual_residual},
                    {"iterations", sol.iterations},
                    {"status", to_string(sol.status)}};
  return doc.dump(1) + "\n";
}

std::string format_sweep_csv(const std::vector<shifter::SweepRecord>& records) {
  std::string out = "alpha,F_analytic,F_numeric,gap,bound_A0,certified\n";
  for (const auto& r : records) {
    out += g17(r.alpha) + "," + g17(r.F_analytic) + "," + g17(r.F_numeric) + "," +
           g17(r.gap) + "," + g17(r.bound_A0) + "," + (r.certified ? "true" : "false") + "\n";
  }
  return out;
}

std::string format_sweep_text(const std::vector<shifter::SweepRecord>& records) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-22s %-22s %-22s %-24s %-22s %s\n", "alpha",
                "F_analytic", "F_numeric", "gap", "bound_A0", "certified");
  out += line;
  for (const auto& r : records) {
    std::snprintf(line, sizeof line, "%-22.17g %-22.17g %-22.17g %-24.17g %-22.17g %s\n",
                  r.alpha, r.F_analytic, r.F_numeric, r.gap, r.bound_A0,
                  r.certified ? "true" : "false");
    out += line;
  }
  return out;
}

}  // namespace cptp::io
