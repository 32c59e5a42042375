#pragma once

#include <tropsys/cell_solver.hpp>
#include <tropsys/error.hpp>
#include <tropsys/matrix.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace tropsys {

enum class ProblemKind {
  Eq,      ///< A x = B x
  Leq,     ///< A x <= B x
  EqB,     ///< A x = b
  Hetero,  ///< C x = D y
  Affine,  ///< A x + a = B x + b
};

inline std::string_view problem_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::Eq: return "eq";
    case ProblemKind::Leq: return "leq";
    case ProblemKind::EqB: return "eqb";
    case ProblemKind::Hetero: return "hetero";
    case ProblemKind::Affine: return "affine";
  }
  return "eq";
}

inline std::optional<ProblemKind> parse_problem_kind(std::string_view s) {
  for (ProblemKind k : {ProblemKind::Eq, ProblemKind::Leq, ProblemKind::EqB, ProblemKind::Hetero,
                        ProblemKind::Affine}) {
    if (problem_name(k) == s) return k;
  }
  return std::nullopt;
}

/// A parsed instance file. For `hetero`, C is s x n and D is s x m; for the
/// other kinds the matrices are m x n and the vectors have length m.
struct InstanceFile {
  ProblemKind problem = ProblemKind::Eq;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t s = 0;
  std::map<char, Matrix> matrices;
  std::map<char, Vector> vectors;

  const Matrix& matrix(char name) const { return matrices.at(name); }
  const Vector& vector(char name) const { return vectors.at(name); }

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

namespace detail {

struct BlockShape {
  char name;
  bool is_matrix;
};

inline std::vector<BlockShape> required_blocks(ProblemKind k) {
  switch (k) {
    case ProblemKind::Eq:
    case ProblemKind::Leq: return {{'A', true}, {'B', true}};
    case ProblemKind::EqB: return {{'A', true}, {'b', false}};
    case ProblemKind::Hetero: return {{'C', true}, {'D', true}};
    case ProblemKind::Affine: return {{'A', true}, {'B', true}, {'a', false}, {'b', false}};
  }
  return {};
}

inline std::pair<std::size_t, std::size_t> block_dims(const InstanceFile& f, char name) {
  if (f.problem == ProblemKind::Hetero) return {f.s, name == 'C' ? f.n : f.m};
  return {f.m, f.n};
}

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline Scalar parse_token(const std::string& t, std::size_t line) {
  if (t == "-inf") return Scalar::neg_inf();
  if (auto r = parse_rational(t)) return Scalar(std::move(*r));
  throw ParseError(line, "unknown token '" + t + "'");
}

inline std::size_t parse_count(std::string_view value, std::size_t line, std::string_view key) {
  auto r = parse_rational(value);
  if (!r || boost::multiprecision::denominator(*r) != 1 || *r < 0 || *r > 100000) {
    throw ParseError(line, std::string(key) + ": expected a non-negative integer, got '" + std::string(value) + "'");
  }
  return static_cast<std::size_t>(boost::multiprecision::numerator(*r));
}

}  // namespace detail

/// Reads the instance grammar: `#` comments, `problem:`, `m:`, `n:`, `s:`
/// headers, then matrix blocks (`A:` followed by one line per row) and vector
/// blocks (`b:` followed by one line, or the entries on the same line).
inline InstanceFile parse_instance(std::string_view text) {
  InstanceFile f;
  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto end = text.find('\n', start);
      const auto stop = end == std::string_view::npos ? text.size() : end;
      std::string_view line = text.substr(start, stop - start);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      lines.emplace_back(detail::trim(line));
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
  }

  // Errors found at end of input name the last line with content.
  std::size_t last = lines.size();
  while (last > 1 && lines[last - 1].empty()) --last;

  bool seen_problem = false;
  std::map<std::string, bool> seen_dim;
  std::size_t i = 0;
  auto next_content = [&]() -> std::optional<std::size_t> {
    while (i < lines.size() && lines[i].empty()) ++i;
    if (i == lines.size()) return std::nullopt;
    return i++;
  };
  auto require_dims = [&](std::size_t line) {
    const bool hetero = f.problem == ProblemKind::Hetero;
    for (const char* key : {"m", "n"}) {
      if (!seen_dim[key]) throw ParseError(line, std::string("block before the '") + key + ":' header");
    }
    if (hetero && !seen_dim["s"]) throw ParseError(line, "block before the 's:' header");
    if (f.n == 0) throw ParseError(line, "n must be positive");
    if (hetero && f.m == 0) throw ParseError(line, "m must be positive");
  };
  auto read_row = [&](std::string_view content, std::size_t width, std::size_t line) {
    const auto toks = detail::tokens(content);
    if (toks.size() != width) {
      throw ParseError(line, "expected " + std::to_string(width) + " entries, found " + std::to_string(toks.size()));
    }
    Vector row;
    for (const auto& t : toks) row.push_back(detail::parse_token(t, line));
    return row;
  };

  while (auto idx = next_content()) {
    const std::size_t line_no = *idx + 1;
    const std::string& line = lines[*idx];
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(line_no, "expected 'key:'");
    const std::string key(detail::trim(std::string_view(line).substr(0, colon)));
    const std::string_view value = detail::trim(std::string_view(line).substr(colon + 1));

    if (key == "problem") {
      if (seen_problem || !f.matrices.empty() || !f.vectors.empty()) {
        throw ParseError(line_no, "'problem:' must come first and only once");
      }
      auto k = parse_problem_kind(value);
      if (!k) throw ParseError(line_no, "unknown problem '" + std::string(value) + "'");
      f.problem = *k;
      seen_problem = true;
    } else if (key == "m" || key == "n" || key == "s") {
      if (seen_dim[key]) throw ParseError(line_no, "duplicate '" + key + ":'");
      if (!f.matrices.empty() || !f.vectors.empty()) throw ParseError(line_no, "dimensions after a block");
      seen_dim[key] = true;
      const std::size_t v = detail::parse_count(value, line_no, key);
      (key == "m" ? f.m : key == "n" ? f.n : f.s) = v;
    } else if (key.size() == 1) {
      const char name = key[0];
      const auto shapes = detail::required_blocks(f.problem);
      const auto shape = std::find_if(shapes.begin(), shapes.end(), [&](const auto& b) { return b.name == name; });
      if (shape == shapes.end()) {
        throw ParseError(line_no, "block '" + key + "' is not used by problem " + std::string(problem_name(f.problem)));
      }
      if (f.matrices.count(name) || f.vectors.count(name)) throw ParseError(line_no, "duplicate block '" + key + "'");
      require_dims(line_no);
      const auto [rows, cols] = detail::block_dims(f, name);
      if (shape->is_matrix) {
        if (!value.empty()) throw ParseError(line_no, "matrix rows start on the next line");
        std::vector<Vector> data;
        for (std::size_t r = 0; r < rows; ++r) {
          auto row_idx = next_content();
          if (!row_idx) throw ParseError(last, "block '" + key + "' ends after " + std::to_string(r) + " rows");
          data.push_back(read_row(lines[*row_idx], cols, *row_idx + 1));
        }
        Matrix mat(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
          for (std::size_t c = 0; c < cols; ++c) mat(r, c) = data[r][c];
        }
        f.matrices.emplace(name, std::move(mat));
      } else if (!value.empty() || rows == 0) {
        f.vectors.emplace(name, read_row(value, rows, line_no));
      } else {
        auto row_idx = next_content();
        if (!row_idx) throw ParseError(last, "block '" + key + "' has no entries");
        f.vectors.emplace(name, read_row(lines[*row_idx], rows, *row_idx + 1));
      }
    } else {
      throw ParseError(line_no, "unknown key '" + key + "'");
    }
  }

  for (const auto& shape : detail::required_blocks(f.problem)) {
    if (!f.matrices.count(shape.name) && !f.vectors.count(shape.name)) {
      throw ParseError(last, std::string("missing block '") + shape.name + "'");
    }
  }
  return f;
}

/// Canonical text form; parse_instance(write_instance(f)) == f.
inline std::string write_instance(const InstanceFile& f) {
  std::ostringstream out;
  out << "problem: " << problem_name(f.problem) << "\n";
  if (f.problem == ProblemKind::Hetero) out << "s: " << f.s << "\n";
  out << "m: " << f.m << "\n" << "n: " << f.n << "\n";
  auto row = [&](const auto& entries) {
    for (std::size_t j = 0; j < entries.size(); ++j) out << (j ? " " : "") << entries[j].str();
    out << "\n";
  };
  for (const auto& shape : detail::required_blocks(f.problem)) {
    out << shape.name << ":\n";
    if (shape.is_matrix) {
      const Matrix& mat = f.matrix(shape.name);
      for (std::size_t r = 0; r < mat.rows(); ++r) row(mat.row(r));
    } else {
      row(f.vector(shape.name));
    }
  }
  return out.str();
}

/// What the emitters need to know beyond the solution set.
struct EmitContext {
  ProblemKind problem = ProblemKind::Eq;
  std::optional<std::size_t> y_from;       ///< hetero: variables from here on are y
  std::optional<Vector> principal;         ///< eqb with a real matrix
  bool principal_attained = false;
};

namespace detail {

inline std::string variable_name(std::size_t v, const EmitContext& ctx) {
  if (ctx.y_from && v >= *ctx.y_from) return "y" + std::to_string(v - *ctx.y_from + 1);
  return "x" + std::to_string(v + 1);
}

inline std::string plus_constant(const Rational& c) {
  if (c > 0) return " + " + to_string(c);
  if (c < 0) return " - " + to_string(Rational(-c));
  return {};
}

inline std::string assignment_text(const SolutionCell& cell, std::size_t v, const EmitContext& ctx) {
  auto it = cell.assignments.find(v);
  if (it == cell.assignments.end()) return "-inf";
  const CellAssignment& a = it->second;
  if (cell.pinned && a.param == *cell.pinned) return to_string(a.offset);
  return variable_name(a.param, ctx) + plus_constant(a.offset);
}

inline std::string constraint_text(const SolutionCell& cell, const Constraint& c, const EmitContext& ctx) {
  const bool plus_pinned = cell.pinned && c.plus == *cell.pinned;
  const bool minus_pinned = cell.pinned && c.minus == *cell.pinned;
  if (minus_pinned) return variable_name(c.plus, ctx) + " <= " + to_string(Rational(-c.constant));
  if (plus_pinned) return variable_name(c.minus, ctx) + " >= " + to_string(c.constant);
  return variable_name(c.plus, ctx) + " - " + variable_name(c.minus, ctx) + plus_constant(c.constant) + " <= 0";
}

template <class Range>
nlohmann::ordered_json one_based(const Range& r) {
  auto out = nlohmann::ordered_json::array();
  for (std::size_t v : r) out.push_back(v + 1);
  return out;
}

inline std::string joined_one_based(const std::vector<std::size_t>& r, const EmitContext& ctx) {
  if (r.empty()) return "none";
  std::string out;
  for (std::size_t v : r) out += (out.empty() ? "" : " ") + variable_name(v, ctx);
  return out;
}

}  // namespace detail

/// Human-readable report: per cell the win sequence, the parametric vector,
/// its inequalities and the dimension bound.
inline std::string emit_text(const SolutionSet& set, const EmitContext& ctx = {}) {
  std::ostringstream out;
  out << "problem: " << problem_name(ctx.problem) << "\n";
  out << "n: " << set.n << "\n";
  out << "p: " << set.win_sequence_count << "\n";
  out << "trivial_only: " << (set.trivial_only ? "true" : "false") << "\n";
  out << "globally_forced: " << detail::joined_one_based(set.globally_forced, ctx) << "\n";
  if (ctx.principal) {
    out << "principal solution: (";
    for (std::size_t j = 0; j < ctx.principal->size(); ++j) out << (j ? ", " : "") << (*ctx.principal)[j];
    out << ")" << (ctx.principal_attained ? " solves the system" : " does not solve the system") << "\n";
  }
  if (set.cells.empty() && !set.trivial_only) out << "no solution\n";
  out << "cells: " << set.cells.size() << "\n";
  for (std::size_t c = 0; c < set.cells.size(); ++c) {
    const SolutionCell& cell = set.cells[c];
    out << "\ncell " << c + 1 << "\n";
    out << "  win sequence:";
    if (cell.win_sequence.empty()) out << " none";
    for (const PlacedPair& p : cell.win_sequence) {
      out << " (" << p.pair.first + 1 << "," << p.pair.second + 1 << ")";
    }
    out << "\n";
    if (!cell.dead_rows.empty()) {
      out << "  rows:";
      for (const PlacedPair& p : cell.win_sequence) out << " " << p.row + 1;
      out << "\n  dead rows:";
      for (std::size_t r : cell.dead_rows) out << " " << r + 1;
      out << "\n";
    }
    out << "  ";
    if (ctx.y_from) {
      std::string xs, ys;
      for (std::size_t v = 0; v < set.n; ++v) {
        std::string& dst = v < *ctx.y_from ? xs : ys;
        dst += (dst.empty() ? "" : ", ") + detail::assignment_text(cell, v, ctx);
      }
      out << "(x; y) = (" << xs << "; " << ys << ")\n";
    } else {
      out << "x = (";
      for (std::size_t v = 0; v < set.n; ++v) out << (v ? ", " : "") << detail::assignment_text(cell, v, ctx);
      out << ")\n";
    }
    for (const Constraint& k : cell.constraints) out << "  " << detail::constraint_text(cell, k, ctx) << "\n";
    out << "  parameters: " << cell.parameter_count() << ", dimension bound: " << cell.dimension_bound << "\n";
  }
  return out.str();
}

/// Single JSON document, 1-based indices, rationals as strings.
inline std::string emit_json(const SolutionSet& set, const EmitContext& ctx = {}) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["problem"] = std::string(problem_name(ctx.problem));
  doc["n"] = set.n;
  if (ctx.y_from) doc["y_from"] = *ctx.y_from + 1;
  doc["trivial_only"] = set.trivial_only;
  doc["p"] = set.win_sequence_count;
  doc["globally_forced"] = detail::one_based(set.globally_forced);
  if (ctx.principal) {
    auto xs = ordered_json::array();
    for (const Scalar& s : *ctx.principal) xs.push_back(s.str());
    doc["principal_solution"] = std::move(xs);
    doc["principal_attained"] = ctx.principal_attained;
  }
  auto cells = ordered_json::array();
  for (const SolutionCell& cell : set.cells) {
    ordered_json jc;
    auto seq = ordered_json::array();
    auto rows = ordered_json::array();
    for (const PlacedPair& p : cell.win_sequence) {
      seq.push_back({p.pair.first + 1, p.pair.second + 1});
      rows.push_back(p.row + 1);
    }
    jc["win_sequence"] = std::move(seq);
    jc["rows"] = std::move(rows);
    jc["dead_rows"] = detail::one_based(cell.dead_rows);
    jc["neg_inf"] = detail::one_based(cell.neg_inf);
    ordered_json assignments = ordered_json::object();
    for (const auto& [v, a] : cell.assignments) {
      assignments[std::to_string(v + 1)] = {{"param", a.param + 1}, {"offset", to_string(a.offset)}};
    }
    jc["assignments"] = std::move(assignments);
    auto constraints = ordered_json::array();
    for (const Constraint& k : cell.constraints) {
      constraints.push_back({{"plus", k.plus + 1}, {"minus", k.minus + 1}, {"const", to_string(k.constant)}});
    }
    jc["constraints"] = std::move(constraints);
    jc["pinned"] = cell.pinned ? ordered_json(*cell.pinned + 1) : ordered_json(nullptr);
    jc["parameter_count"] = cell.parameter_count();
    jc["dimension_bound"] = cell.dimension_bound;
    cells.push_back(std::move(jc));
  }
  doc["cells"] = std::move(cells);
  return doc.dump(2) + "\n";
}

}  // namespace tropsys
