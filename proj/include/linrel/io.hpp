#pragma once

// Text formats shared by the library and the command-line tool.
//
// Matrix file:     line 1 is "rows cols real|complex", followed by `rows`
//                  lines of `cols` whitespace-separated entries; a complex
//                  entry is written "re,im".  Ragged rows are rejected.
// Form file:       a matrix file followed by a trailer line
//                  "kind=general|symmetric|skew".
// Relation file:   a first line "nx ny", then a matrix file whose rows
//                  number nx+ny; columns span the graph.
// Config file:     line-oriented "key = value"; '#' starts a comment.
// Reports:         "key = value" lines, fixed per-command key order, twelve
//                  digits after the decimal point for real values.

#include "linrel/core.hpp"
#include "linrel/forms.hpp"
#include "linrel/relations.hpp"
#include "linrel/subspace.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace linrel {

// ---------------------------------------------------------------------------
// parsing helpers

namespace io_detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    fail(Err::ParseError, "bad numeric literal '" + s + "'");
  }
  require(pos == s.size(), Err::ParseError, "trailing characters in numeric literal '" + s + "'");
  require(std::isfinite(v), Err::InvalidMatrix, "non-finite entry '" + s + "'");
  return v;
}

inline Complex parse_entry(const std::string& s, Field f) {
  auto comma = s.find(',');
  if (comma == std::string::npos) {
    return Complex(parse_double(s), 0.0);
  }
  require(f == Field::Complex, Err::ParseError, "complex entry in a real matrix");
  return Complex(parse_double(s.substr(0, comma)), parse_double(s.substr(comma + 1)));
}

inline std::string format_entry(Complex v, Field f) {
  char buf[64];
  if (f == Field::Real) {
    std::snprintf(buf, sizeof buf, "%.17g", v.real());
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g,%.17g", v.real(), v.imag());
  return buf;
}

}  // namespace io_detail

// ---------------------------------------------------------------------------
// matrix format

struct ParsedMatrix {
  Mat matrix;
  Field field = Field::Real;
};

/// Parse the matrix block starting at line `pos` of `lines`; advances `pos`.
inline ParsedMatrix parse_matrix_block(const std::vector<std::string>& lines,
                                       std::size_t& pos) {
  require(pos < lines.size(), Err::ParseError, "missing matrix header line");
  auto head = io_detail::tokenize(lines[pos]);
  require(head.size() == 3, Err::ParseError, "matrix header must be 'rows cols real|complex'");
  long rows = 0, cols = 0;
  try {
    rows = std::stol(head[0]);
    cols = std::stol(head[1]);
  } catch (const std::exception&) {
    fail(Err::ParseError, "bad matrix dimensions in header");
  }
  require(rows >= 1 && cols >= 0, Err::ParseError, "matrix dimensions out of range");
  Field f;
  if (head[2] == "real")
    f = Field::Real;
  else if (head[2] == "complex")
    f = Field::Complex;
  else
    fail(Err::ParseError, "field must be 'real' or 'complex'");
  ++pos;
  Mat m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    require(pos < lines.size(), Err::ParseError, "matrix has fewer rows than declared");
    auto toks = io_detail::tokenize(lines[pos]);
    require(static_cast<long>(toks.size()) == cols, Err::ParseError,
            "ragged row: expected " + std::to_string(cols) + " entries, got " +
                std::to_string(toks.size()));
    for (long j = 0; j < cols; ++j) m(i, j) = io_detail::parse_entry(toks[j], f);
    ++pos;
  }
  return {m, f};
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Err::ParseError, "cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  // drop trailing blank lines
  while (!lines.empty() && io_detail::tokenize(lines.back()).empty()) lines.pop_back();
  return lines;
}

inline ParsedMatrix read_matrix(const std::string& path) {
  auto lines = read_lines(path);
  std::size_t pos = 0;
  ParsedMatrix pm = parse_matrix_block(lines, pos);
  require(pos == lines.size(), Err::ParseError, "unexpected content after matrix block");
  return pm;
}

inline std::string matrix_to_string(const Mat& m, Field f) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << ' ' << field_name(f) << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << io_detail::format_entry(m(i, j), f);
    }
    out << '\n';
  }
  return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  require(static_cast<bool>(out), Err::ParseError, "cannot write '" + path + "'");
  out << content;
}

inline void write_matrix(const std::string& path, const Mat& m, Field f) {
  write_file(path, matrix_to_string(m, f));
}

// ---------------------------------------------------------------------------
// form and relation formats

inline Form read_form(const std::string& path, double tol = kDefaultTol) {
  auto lines = read_lines(path);
  std::size_t pos = 0;
  ParsedMatrix pm = parse_matrix_block(lines, pos);
  require(pos < lines.size(), Err::ParseError, "form file is missing the kind= trailer");
  std::string trailer = lines[pos];
  ++pos;
  require(pos == lines.size(), Err::ParseError, "unexpected content after kind= trailer");
  // accept "kind=skew" and "kind = skew"
  std::string flat;
  for (char ch : trailer)
    if (!std::isspace(static_cast<unsigned char>(ch))) flat.push_back(ch);
  require(flat.rfind("kind=", 0) == 0, Err::ParseError, "trailer must start with 'kind='");
  std::string kind_str = flat.substr(5);
  FormKind kind;
  if (kind_str == "general")
    kind = FormKind::General;
  else if (kind_str == "symmetric")
    kind = FormKind::Symmetric;
  else if (kind_str == "skew")
    kind = FormKind::Skew;
  else
    fail(Err::ParseError, "unknown form kind '" + kind_str + "'");
  return make_form(pm.matrix, pm.field, kind, tol);
}

inline void write_form(const std::string& path, const Form& f) {
  write_file(path, matrix_to_string(f.matrix, f.field) + "kind=" + kind_name(f.kind) + "\n");
}

inline Relation read_relation(const std::string& path, double tol = kDefaultTol) {
  auto lines = read_lines(path);
  require(!lines.empty(), Err::ParseError, "empty relation file");
  auto head = io_detail::tokenize(lines[0]);
  require(head.size() == 2, Err::ParseError, "relation header must be 'nx ny'");
  long nx = 0, ny = 0;
  try {
    nx = std::stol(head[0]);
    ny = std::stol(head[1]);
  } catch (const std::exception&) {
    fail(Err::ParseError, "bad relation header");
  }
  require(nx >= 1 && ny >= 1, Err::ParseError, "relation factor dimensions out of range");
  std::size_t pos = 1;
  ParsedMatrix pm = parse_matrix_block(lines, pos);
  require(pos == lines.size(), Err::ParseError, "unexpected content after relation block");
  require(pm.matrix.rows() == nx + ny, Err::DimensionMismatch,
          "spanning-set rows must equal nx + ny");
  return Relation::from_graph(pm.matrix, static_cast<int>(nx), static_cast<int>(ny),
                              pm.field, tol);
}

inline void write_relation(const std::string& path, const Relation& r) {
  std::ostringstream out;
  out << r.nx << ' ' << r.ny << '\n';
  out << matrix_to_string(r.graph.basis, r.field());
  write_file(path, out.str());
}

// ---------------------------------------------------------------------------
// config files

inline std::map<std::string, std::string> read_config(const std::string& path) {
  auto lines = read_lines(path);
  std::map<std::string, std::string> out;
  for (const auto& raw : lines) {
    std::string line = raw.substr(0, raw.find('#'));
    auto toks = io_detail::tokenize(line);
    if (toks.empty()) continue;
    require(toks.size() == 3 && toks[1] == "=", Err::ParseError,
            "config lines must read 'key = value': '" + raw + "'");
    out[toks[0]] = toks[2];
  }
  return out;
}

// ---------------------------------------------------------------------------
// reports

class Report {
 public:
  void add(const std::string& key, const std::string& value) {
    entries_.emplace_back(key, value);
  }
  void add(const std::string& key, long value) { add(key, std::to_string(value)); }
  void add(const std::string& key, int value) { add(key, std::to_string(value)); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
  void add(const std::string& key, double value) {
    char buf[64];
    if (value == 0.0) value = 0.0;  // normalize -0
    std::snprintf(buf, sizeof buf, "%.12f", value);
    add(key, std::string(buf));
  }
  void add_complex(const std::string& key, Complex v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.12f%+.12fi", v.real() == 0.0 ? 0.0 : v.real(),
                  v.imag() == 0.0 ? 0.0 : v.imag());
    add(key, std::string(buf));
  }

  std::string str() const {
    std::ostringstream out;
    for (const auto& [k, v] : entries_) out << k << " = " << v << '\n';
    return out.str();
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace linrel
