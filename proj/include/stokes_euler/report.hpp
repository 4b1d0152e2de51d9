#pragma once

#include <array>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "serialize.hpp"
#include "unfolding.hpp"

namespace stokes_euler {

inline constexpr int report_schema = 1;
inline constexpr const char* tool_version = "0.3.0";

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
  friend bool operator==(const Check&, const Check&) = default;
};

struct StokesSummary {
  IntMatrix S;
  std::vector<Complex> values;  // dominance order
  double residual = 0.0;
  double condition = 0.0;
  double max_int_distance = 0.0;
  double phi = 0.0;
  double eps = 0.0;
  Complex u0;
  bool stable = false;
  friend bool operator==(const StokesSummary&, const StokesSummary&) = default;
};

struct LatticeSummary {
  IntMatrix intersection;  // I = -(chi + chi^T)
  std::vector<BigInt> char_poly;
  std::string char_poly_text;
  std::vector<Complex> eigenvalues;
  double max_unit_circle_defect = 0.0;
  friend bool operator==(const LatticeSummary&, const LatticeSummary&) = default;
};

struct EquivalenceSummary {
  std::string status;  // found | inconclusive | invariant-mismatch
  std::string moves;
  int depth = 0;
  std::uint64_t states = 0;
  std::string note;
  friend bool operator==(const EquivalenceSummary&, const EquivalenceSummary&) = default;
};

struct ErrorInfo {
  std::string stage;
  std::string kind;
  std::string message;
  friend bool operator==(const ErrorInfo&, const ErrorInfo&) = default;
};

/// Everything `verify` found out about one (A, q, seed, tolerances).
struct VerifyReport {
  int schema = report_schema;
  std::string version = tool_version;
  std::array<int, 3> A{1, 1, 1};
  Complex q{1.0, 0.0};
  std::uint64_t seed = 0;
  std::string tolerance_profile;
  int mu = 0;
  IntMatrix chi;
  std::vector<std::string> collection;
  std::uint64_t jacobian_dim = 0;
  bool perturbed = false;
  std::vector<Complex> perturbation;  // s_{i,1} added to each arm
  std::vector<Complex> critical_values;
  std::optional<StokesSummary> stokes;
  std::optional<LatticeSummary> lattice;
  std::optional<EquivalenceSummary> equivalence;
  std::vector<Check> checks;
  std::string status = "ok";
  int exit_code = 0;
  std::optional<ErrorInfo> error;
  std::map<std::string, double> timings;  // only filled on request

  bool all_checks_pass() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  friend bool operator==(const VerifyReport&, const VerifyReport&) = default;
};

namespace json_io {

inline Json to_json(const VerifyReport& r) {
  Json j;
  j["schema"] = r.schema;
  j["version"] = r.version;
  j["A"] = r.A;
  j["q"] = complex_json(r.q);
  j["seed"] = r.seed;
  j["tolerance_profile"] = r.tolerance_profile;
  j["mu"] = r.mu;
  j["chi"] = matrix_json(r.chi);
  j["collection"] = r.collection;
  j["jacobian"] = {{"dim", r.jacobian_dim},
                   {"perturbed", r.perturbed},
                   {"perturbation", complex_list(r.perturbation)},
                   {"critical_values", complex_list(r.critical_values)}};
  if (r.stokes) {
    const auto& s = *r.stokes;
    j["stokes"] = {{"S", matrix_json(s.S)},          {"values", complex_list(s.values)},
                   {"residual", s.residual},         {"condition", s.condition},
                   {"max_int_distance", s.max_int_distance}, {"phi", s.phi},
                   {"eps", s.eps},                   {"u0", complex_json(s.u0)},
                   {"stable", s.stable}};
  }
  if (r.lattice) {
    const auto& l = *r.lattice;
    Json poly = Json::array();
    for (const auto& c : l.char_poly) poly.push_back(bigint_json(c));
    j["lattice"] = {{"intersection", matrix_json(l.intersection)},
                    {"char_poly", poly},
                    {"char_poly_text", l.char_poly_text},
                    {"eigenvalues", complex_list(l.eigenvalues)},
                    {"max_unit_circle_defect", l.max_unit_circle_defect}};
  }
  if (r.equivalence) {
    const auto& e = *r.equivalence;
    j["equivalence"] = {{"status", e.status}, {"moves", e.moves}, {"depth", e.depth}, {"states", e.states}, {"note", e.note}};
  }
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = checks;
  j["status"] = r.status;
  j["exit_code"] = r.exit_code;
  if (r.error) j["error"] = {{"stage", r.error->stage}, {"kind", r.error->kind}, {"message", r.error->message}};
  if (!r.timings.empty()) j["timings"] = r.timings;
  return j;
}

inline VerifyReport report_from(const Json& j) {
  if (j.at("schema").get<int>() != report_schema)
    fail(ErrorKind::InvalidArgument, "unsupported report schema " + j.at("schema").dump());
  VerifyReport r;
  r.schema = j["schema"];
  r.version = j.at("version");
  r.A = j.at("A").get<std::array<int, 3>>();
  r.q = complex_from(j.at("q"));
  r.seed = j.at("seed");
  r.tolerance_profile = j.at("tolerance_profile");
  r.mu = j.at("mu");
  r.chi = matrix_from(j.at("chi"));
  r.collection = j.at("collection").get<std::vector<std::string>>();
  const auto& jac = j.at("jacobian");
  r.jacobian_dim = jac.at("dim");
  r.perturbed = jac.at("perturbed");
  r.perturbation = complex_list_from(jac.at("perturbation"));
  r.critical_values = complex_list_from(jac.at("critical_values"));
  if (j.contains("stokes")) {
    const auto& s = j["stokes"];
    r.stokes = StokesSummary{matrix_from(s.at("S")), complex_list_from(s.at("values")), s.at("residual"),
                             s.at("condition"), s.at("max_int_distance"), s.at("phi"), s.at("eps"),
                             complex_from(s.at("u0")), s.at("stable")};
  }
  if (j.contains("lattice")) {
    const auto& l = j["lattice"];
    LatticeSummary ls;
    ls.intersection = matrix_from(l.at("intersection"));
    for (const auto& c : l.at("char_poly")) ls.char_poly.push_back(bigint_from(c));
    ls.char_poly_text = l.at("char_poly_text");
    ls.eigenvalues = complex_list_from(l.at("eigenvalues"));
    ls.max_unit_circle_defect = l.at("max_unit_circle_defect");
    r.lattice = ls;
  }
  if (j.contains("equivalence")) {
    const auto& e = j["equivalence"];
    r.equivalence = EquivalenceSummary{e.at("status"), e.at("moves"), e.at("depth"), e.at("states"), e.at("note")};
  }
  for (const auto& c : j.at("checks")) r.checks.push_back({c.at("name"), c.at("passed"), c.at("detail")});
  r.status = j.at("status");
  r.exit_code = j.at("exit_code");
  if (j.contains("error")) r.error = ErrorInfo{j["error"].at("stage"), j["error"].at("kind"), j["error"].at("message")};
  if (j.contains("timings")) r.timings = j["timings"].get<std::map<std::string, double>>();
  return r;
}

}  // namespace json_io

inline std::string format_complex(Complex z, int digits = 10) {
  std::ostringstream o;
  o << std::setprecision(digits) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return o.str();
}

inline std::string indent(const std::string& block, const std::string& pad = "  ") {
  std::string out;
  std::istringstream in(block);
  for (std::string line; std::getline(in, line);) out += pad + line + "\n";
  return out;
}

/// Plain-text rendering for terminals.
inline std::string report_text(const VerifyReport& r) {
  std::ostringstream o;
  o << "A = (" << r.A[0] << "," << r.A[1] << "," << r.A[2] << ")  mu = " << r.mu << "  q = " << format_complex(r.q)
    << "  seed = " << r.seed << "\n";
  o << "status: " << r.status << " (exit " << r.exit_code << ")\n";
  if (r.error) o << "error at stage " << r.error->stage << ": " << r.error->message << "\n";
  if (r.chi.rows()) o << "chi:\n" << indent(r.chi.to_text());
  if (!r.critical_values.empty()) {
    o << "critical values" << (r.perturbed ? " (perturbed)" : "") << ":\n";
    for (auto w : r.critical_values) o << "  " << format_complex(w) << "\n";
  }
  if (r.stokes) {
    o << "numerical Stokes matrix (phi = " << r.stokes->phi << ", |u0| = " << std::abs(r.stokes->u0) << "):\n"
      << indent(r.stokes->S.to_text());
    o << "  residual " << r.stokes->residual << ", condition " << r.stokes->condition << ", integer distance "
      << r.stokes->max_int_distance << (r.stokes->stable ? ", stable" : ", NOT stable") << "\n";
  }
  if (r.lattice) {
    o << "intersection form:\n" << indent(r.lattice->intersection.to_text());
    o << "Coxeter polynomial: " << r.lattice->char_poly_text << "  (unit-circle defect "
      << r.lattice->max_unit_circle_defect << ")\n";
  }
  if (r.equivalence) {
    o << "equivalence: " << r.equivalence->status;
    if (r.equivalence->status == "found") o << " at depth " << r.equivalence->depth << ": " << (r.equivalence->moves.empty() ? "(none)" : r.equivalence->moves);
    if (!r.equivalence->note.empty()) o << " [" << r.equivalence->note << "]";
    o << "\n";
  }
  for (const auto& c : r.checks) o << (c.passed ? "  ok   " : "  FAIL ") << c.name << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
  for (const auto& [k, v] : r.timings) o << "  time " << k << " " << v << " s\n";
  return o.str();
}

}  // namespace stokes_euler
