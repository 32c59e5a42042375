#pragma once

#include <tropsys/matrix.hpp>

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace tropsys {

/// Keeps a_ij where a_ij >= b_ij and b_ij where b_ij >= a_ij; -inf elsewhere.
inline std::pair<Matrix, Matrix> bold_pair(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "bold_pair");
  Matrix ab(a.rows(), a.cols());
  Matrix bb(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) >= b(i, j)) ab(i, j) = a(i, j);
      if (b(i, j) >= a(i, j)) bb(i, j) = b(i, j);
    }
  }
  return {std::move(ab), std::move(bb)};
}

inline Matrix maximum_matrix(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "maximum_matrix");
  Matrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = oplus(a(i, j), b(i, j));
  }
  return m;
}

enum class Verdict {
  Reduced,      ///< rows and columns remain; proceed to winning pairs
  TrivialOnly,  ///< every column is forced to -inf
  AllRowsGone,  ///< no row constrains anything; remaining columns are free
};

/// The bolded, reduced instance together with the maps back to the input.
/// All index lists are 0-based and sorted ascending.
struct ReducedInstance {
  Matrix a_bold;
  Matrix b_bold;
  Matrix max_matrix;
  std::vector<std::size_t> row_origin;  // reduced row -> original row
  std::vector<std::size_t> col_origin;  // reduced column -> original column
  std::vector<std::size_t> forced_neg_inf;
  std::vector<std::size_t> free_cols;
  std::size_t original_rows = 0;
  std::size_t original_cols = 0;
  Verdict verdict = Verdict::Reduced;
};

namespace detail {

inline Matrix submatrix(const Matrix& m, std::span<const std::size_t> rows,
                        std::span<const std::size_t> cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  }
  return out;
}

}  // namespace detail

/// Normalizes (A, B) by repeatedly dropping identical rows, forcing the
/// columns of a row whose other side is entirely -inf, and setting aside
/// columns that are -inf on both sides. `seed_forced` lists original columns
/// known to be -inf before the reduction starts.
inline ReducedInstance reduce_instance(const Matrix& a, const Matrix& b,
                                       std::span<const std::size_t> seed_forced) {
  require_same_shape(a, b, "reduce_instance");
  auto [ab, bb] = bold_pair(a, b);

  std::vector<std::size_t> rows(a.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  std::vector<std::size_t> cols;
  std::vector<std::size_t> forced(seed_forced.begin(), seed_forced.end());
  std::sort(forced.begin(), forced.end());
  forced.erase(std::unique(forced.begin(), forced.end()), forced.end());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (!std::binary_search(forced.begin(), forced.end(), j)) cols.push_back(j);
  }
  std::vector<std::size_t> free_cols;

  auto row_all_neg_inf = [&](const Matrix& m, std::size_t i) {
    return std::all_of(cols.begin(), cols.end(), [&](std::size_t j) { return m(i, j).is_neg_inf(); });
  };
  auto col_all_neg_inf = [&](const Matrix& m, std::size_t j) {
    return std::all_of(rows.begin(), rows.end(), [&](std::size_t i) { return m(i, j).is_neg_inf(); });
  };

  // Every move removes a row or a column, so this terminates after at most
  // m + n changes.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = rows.begin(); it != rows.end(); ++it) {
      const std::size_t i = *it;
      const bool same = std::all_of(cols.begin(), cols.end(), [&](std::size_t j) { return ab(i, j) == bb(i, j); });
      if (same) {
        rows.erase(it);
        changed = true;
        break;
      }
      const bool a_dead = row_all_neg_inf(ab, i);
      const bool b_dead = row_all_neg_inf(bb, i);
      if (a_dead != b_dead) {
        const Matrix& live = a_dead ? bb : ab;
        std::vector<std::size_t> keep;
        for (std::size_t j : cols) {
          if (live(i, j).is_finite()) {
            forced.push_back(j);
          } else {
            keep.push_back(j);
          }
        }
        cols = std::move(keep);
        rows.erase(it);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    for (auto it = cols.begin(); it != cols.end(); ++it) {
      if (col_all_neg_inf(ab, *it) && col_all_neg_inf(bb, *it)) {
        free_cols.push_back(*it);
        cols.erase(it);
        changed = true;
        break;
      }
    }
  }

  std::sort(forced.begin(), forced.end());
  std::sort(free_cols.begin(), free_cols.end());

  ReducedInstance out;
  out.a_bold = detail::submatrix(ab, rows, cols);
  out.b_bold = detail::submatrix(bb, rows, cols);
  out.max_matrix = maximum_matrix(out.a_bold, out.b_bold);
  out.row_origin = std::move(rows);
  out.col_origin = std::move(cols);
  out.forced_neg_inf = std::move(forced);
  out.free_cols = std::move(free_cols);
  out.original_rows = a.rows();
  out.original_cols = a.cols();
  if (!out.row_origin.empty()) {
    out.verdict = Verdict::Reduced;
  } else if (out.free_cols.empty()) {
    out.verdict = Verdict::TrivialOnly;
  } else {
    out.verdict = Verdict::AllRowsGone;
  }
  return out;
}

inline ReducedInstance reduce_instance(const Matrix& a, const Matrix& b) {
  return reduce_instance(a, b, std::span<const std::size_t>{});
}

}  // namespace tropsys
