// Copyright 2026 The opsq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Matrix documents and the JSON writer used for every report.
//
// A square matrix is written as
//   {"dim": n, "entries": [[re, im], ...]}        (row-major, n*n pairs)
// and a rectangular one as
//   {"rows": r, "cols": c, "entries": [[re, im], ...]}.
// Floating-point numbers are printed with 17 significant digits, which
// round-trips every double exactly through strtod.

#ifndef OPSQ_IO_HPP
#define OPSQ_IO_HPP

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "opsq/error.hpp"
#include "opsq/linalg.hpp"

namespace opsq {

using Json = nlohmann::json;

inline std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  // Keep floats recognisable as floats after a round trip.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace detail {

inline void write_json(std::ostringstream& os, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        os << Json(it.key()).dump() << (indent < 0 ? ":" : ": ");
        write_json(os, it.value(), indent, depth + 1);
      }
      newline(depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Short numeric arrays ([re, im] pairs, weights) stay on one line.
      const bool flat = j.size() <= 8 && std::all_of(j.begin(), j.end(), [](const Json& e) {
                          return e.is_number();
                        });
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << (flat && indent >= 0 ? ", " : ",");
        if (!flat) newline(depth + 1);
        write_json(os, j[i], indent, depth + 1);
      }
      if (!flat) newline(depth);
      os << ']';
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
      return;
  }
}

}  // namespace detail

/// Deterministic serialization: keys sorted, doubles with 17 significant digits.
inline std::string dump_json(const Json& j, int indent = 2) {
  std::ostringstream os;
  detail::write_json(os, j, indent, 0);
  return os.str();
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json doc;
  if (m.rows() == m.cols()) {
    doc["dim"] = m.rows();
  } else {
    doc["rows"] = m.rows();
    doc["cols"] = m.cols();
  }
  Json entries = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      entries.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
  }
  doc["entries"] = std::move(entries);
  return doc;
}

inline Json matrix_to_json(const HermitianMatrix& h) { return matrix_to_json(h.matrix()); }

inline ComplexMatrix matrix_from_json(const Json& doc) {
  try {
    Index rows = 0;
    Index cols = 0;
    if (doc.contains("dim")) {
      rows = cols = doc.at("dim").get<Index>();
    } else {
      rows = doc.at("rows").get<Index>();
      cols = doc.at("cols").get<Index>();
    }
    if (rows < 1 || cols < 1) throw ParseError("matrix document: dimensions must be positive");
    const Json& entries = doc.at("entries");
    if (!entries.is_array() || static_cast<Index>(entries.size()) != rows * cols) {
      throw ParseError("matrix document: expected " + std::to_string(rows * cols) + " entries");
    }
    ComplexMatrix m(rows, cols);
    for (Index k = 0; k < rows * cols; ++k) {
      const Json& e = entries[static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ParseError("matrix document: entry " + std::to_string(k) + " is not [re, im]");
      }
      m(k / cols, k % cols) = Complex(e[0].get<double>(), e[1].get<double>());
    }
    require_finite(m, "matrix document");
    return m;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("matrix document: ") + e.what());
  }
}

/// Parses a square document and enforces Hermitian symmetry to `tol`
/// before symmetrizing.
inline HermitianMatrix hermitian_from_json(const Json& doc, double tol = 1e-12) {
  const ComplexMatrix m = matrix_from_json(doc);
  if (m.rows() != m.cols()) throw ParseError("matrix document: Hermitian matrix must be square");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    throw ParseError("matrix document: entries are not Hermitian");
  }
  return HermitianMatrix(m);
}

inline Json vector_to_json(const ComplexVector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(Json::array({v(i).real(), v(i).imag()}));
  return a;
}

inline ComplexVector vector_from_json(const Json& a) {
  if (!a.is_array() || a.empty()) throw ParseError("vector document: expected non-empty array");
  ComplexVector v(static_cast<Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_array() || a[i].size() != 2) throw ParseError("vector document: entry not [re, im]");
    v(static_cast<Index>(i)) = Complex(a[i][0].get<double>(), a[i][1].get<double>());
  }
  return v;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes via a sibling temp file and rename, so readers never observe a
/// partially written document.
inline void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << text;
    if (!out.flush()) throw Error("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot rename '" + tmp.string() + "': " + ec.message());
}

inline HermitianMatrix read_matrix_file(const std::filesystem::path& path) {
  return hermitian_from_json(parse_json(read_text_file(path)));
}

inline void write_matrix_file(const std::filesystem::path& path, const HermitianMatrix& h) {
  write_text_atomic(path, dump_json(matrix_to_json(h)) + "\n");
}

}  // namespace opsq

#endif  // OPSQ_IO_HPP
