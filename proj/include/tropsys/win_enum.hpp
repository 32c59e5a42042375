#pragma once

#include <tropsys/matrix.hpp>

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <vector>

namespace tropsys {

/// Column partition of one row: strict A wins, strict B wins, finite ties,
/// and -inf on both sides.
struct RowClassification {
  std::vector<std::size_t> wa;
  std::vector<std::size_t> wb;
  std::vector<std::size_t> e;
  std::vector<std::size_t> f;
};

/// (first, second) with first in WA and second in WB, or first == second in E.
struct WinningPair {
  std::size_t first = 0;
  std::size_t second = 0;

  bool is_tie() const noexcept { return first == second; }

  /// The support {first, second}; a tie has a single column.
  std::vector<std::size_t> support() const {
    if (first == second) return {first};
    return {first, second};
  }

  friend auto operator<=>(const WinningPair&, const WinningPair&) = default;
};

/// One winning pair per row, pairwise compatible.
using WinSequence = std::vector<WinningPair>;

inline RowClassification classify_row(const Matrix& a_bold, const Matrix& b_bold, std::size_t i) {
  require_same_shape(a_bold, b_bold, "classify_row");
  RowClassification c;
  for (std::size_t j = 0; j < a_bold.cols(); ++j) {
    const Scalar& a = a_bold(i, j);
    const Scalar& b = b_bold(i, j);
    if (a > b) {
      c.wa.push_back(j);
    } else if (a < b) {
      c.wb.push_back(j);
    } else if (a.is_finite()) {
      c.e.push_back(j);
    } else {
      c.f.push_back(j);
    }
  }
  return c;
}

/// WA x WB plus the diagonal of E x E, in lexicographic order.
inline std::vector<WinningPair> winning_pairs(const RowClassification& c) {
  std::vector<WinningPair> out;
  out.reserve(c.wa.size() * c.wb.size() + c.e.size());
  for (std::size_t a : c.wa) {
    for (std::size_t b : c.wb) out.push_back({a, b});
  }
  for (std::size_t e : c.e) out.push_back({e, e});
  std::sort(out.begin(), out.end());
  return out;
}

/// r = max(ceil(n/2) * floor(n/2), n), the largest possible |win(i)|.
inline std::size_t max_pairs_per_row(std::size_t n) {
  return std::max((n + 1) / 2 * (n / 2), n);
}

/// K (row k) is compatible with I (row i) when every 2x2 tropical minor of M
/// on rows (i, k) and columns (iota, kappa) attains its value on the main
/// diagonal: m_i,kappa + m_k,iota <= m_i,iota + m_k,kappa.
inline bool is_compatible(const Matrix& m, std::size_t i, const WinningPair& pi, std::size_t k,
                          const WinningPair& pk) {
  const std::array<std::size_t, 2> iotas{pi.first, pi.second};
  const std::array<std::size_t, 2> kappas{pk.first, pk.second};
  for (std::size_t iota : iotas) {
    for (std::size_t kappa : kappas) {
      if (iota == kappa) continue;
      const Scalar off = odot(m(i, kappa), m(k, iota));
      const Scalar diag = odot(m(i, iota), m(k, kappa));
      if (off > diag) return false;
    }
  }
  return true;
}

struct Interval {
  ExtScalar lo;
  ExtScalar hi;
};

/// [dif(M; iota, kappa)_k, dif(M; iota, kappa)_i]; non-empty when the pairs
/// spanning it are compatible.
inline Interval interval(const Matrix& m, std::size_t i, std::size_t k, std::size_t iota,
                         std::size_t kappa) {
  Interval out{dif(m, iota, kappa, k), dif(m, iota, kappa, i)};
  if (out.lo > out.hi) throw DomainError("interval: empty, the spanning pairs are incompatible");
  return out;
}

struct Enumeration {
  std::vector<WinSequence> sequences;
  std::size_t nodes = 0;  ///< partial tuples visited by the backtracking
};

/// All tuples (I_1, ..., I_m) with I_h in pairs[h] and I_h compatible with
/// every I_i, i < h. Depth-first in row order; output is lexicographic.
inline Enumeration enumerate_win_sequences(const Matrix& m,
                                           const std::vector<std::vector<WinningPair>>& pairs) {
  Enumeration out;
  if (pairs.empty()) return out;
  WinSequence partial;
  partial.reserve(pairs.size());

  auto extend = [&](auto&& self, std::size_t row) -> void {
    ++out.nodes;
    if (row == pairs.size()) {
      out.sequences.push_back(partial);
      return;
    }
    for (const WinningPair& candidate : pairs[row]) {
      bool ok = true;
      for (std::size_t prev = 0; prev < row && ok; ++prev) {
        ok = is_compatible(m, prev, partial[prev], row, candidate);
      }
      if (!ok) continue;
      partial.push_back(candidate);
      self(self, row + 1);
      partial.pop_back();
    }
  };
  extend(extend, 0);
  return out;
}

}  // namespace tropsys
