#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "int_matrix.hpp"
#include "lattice.hpp"
#include "moves.hpp"

// JSON conventions: complex numbers are [re, im], matrices are arrays of rows.
namespace stokes_euler::json_io {

using Json = nlohmann::json;

inline Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

inline std::complex<double> complex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) fail(ErrorKind::InvalidArgument, "complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Json complex_list(const std::vector<std::complex<double>>& v) {
  Json out = Json::array();
  for (auto z : v) out.push_back(complex_json(z));
  return out;
}

inline std::vector<std::complex<double>> complex_list_from(const Json& j) {
  std::vector<std::complex<double>> out;
  for (const auto& e : j) out.push_back(complex_from(e));
  return out;
}

inline Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline IntMatrix matrix_from(const Json& j) {
  const std::size_t n = j.size();
  const std::size_t c = n ? j[0].size() : 0;
  IntMatrix m(n, c);
  for (std::size_t i = 0; i < n; ++i) {
    if (j[i].size() != c) fail(ErrorKind::InvalidArgument, "ragged matrix");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = j[i][k].get<std::int64_t>();
  }
  return m;
}

inline Json matrix_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Eigen::MatrixXcd complex_matrix_from(const Json& j) {
  const auto n = static_cast<Eigen::Index>(j.size());
  const auto c = n ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Eigen::MatrixXcd m(n, c);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = complex_from(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
  return m;
}

/// Integers that fit are numbers, larger ones decimal strings.
inline Json bigint_json(const BigInt& b) {
  if (b >= std::numeric_limits<std::int64_t>::min() && b <= std::numeric_limits<std::int64_t>::max())
    return Json(static_cast<std::int64_t>(b));
  return Json(b.str());
}

inline BigInt bigint_from(const Json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  return BigInt(j.get<std::int64_t>());
}

inline Json coxeter_json(const CoxeterInvariants& c) {
  Json poly = Json::array();
  for (const auto& x : c.char_poly) poly.push_back(bigint_json(x));
  return {{"char_poly", poly},
          {"char_poly_text", c.poly_text()},
          {"eigenvalues", complex_list(c.eigenvalues)},
          {"max_unit_circle_defect", c.max_unit_circle_defect()}};
}

inline CoxeterInvariants coxeter_from(const Json& j) {
  CoxeterInvariants c;
  for (const auto& x : j.at("char_poly")) c.char_poly.push_back(bigint_from(x));
  c.eigenvalues = complex_list_from(j.at("eigenvalues"));
  return c;
}

/// Move scripts travel as their text form, e.g. "b3 s1 B2".
inline Json moves_json(const MoveSequence& s) { return s.to_text(); }
inline MoveSequence moves_from(const Json& j) { return MoveSequence::parse(j.get<std::string>()); }

/// Accepts "1,2;0,1" (rows separated by ';') or a JSON array of rows.
inline IntMatrix parse_matrix(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '[') return matrix_from(Json::parse(text));
  std::vector<std::vector<std::int64_t>> rows(1);
  std::string tok;
  auto flush = [&] {
    if (!tok.empty()) rows.back().push_back(std::stoll(tok));
    tok.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      flush();
    } else if (ch == ';' || ch == '\n') {
      flush();
      rows.emplace_back();
    } else {
      tok.push_back(ch);
    }
  }
  flush();
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) fail(ErrorKind::InvalidArgument, "ragged matrix \"" + text + "\"");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace stokes_euler::json_io
