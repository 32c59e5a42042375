#pragma once

#include <tropsys/cell_solver.hpp>
#include <tropsys/matrix.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace tropsys {

/// Candidate coordinates for brute force: `values` plus -inf.
struct GridSpec {
  std::vector<Rational> values;
  bool include_neg_inf = true;

  /// lo, lo + 1, ..., hi.
  static GridSpec range(long long lo, long long hi) {
    GridSpec g;
    for (long long v = lo; v <= hi; ++v) g.values.emplace_back(v);
    return g;
  }

  void validate() const {
    if (values.empty()) throw DomainError("grid: no values");
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (!(values[i - 1] < values[i])) throw DomainError("grid: values must be strictly ascending");
    }
  }

  /// Coordinates in ascending order, -inf first.
  std::vector<Scalar> coordinates() const {
    std::vector<Scalar> out;
    if (include_neg_inf) out.push_back(Scalar::neg_inf());
    for (const Rational& v : values) out.emplace_back(v);
    return out;
  }
};

inline constexpr std::size_t kDefaultGridCap = 1'000'000;

/// Number of candidate vectors, or cap + 1 if it exceeds cap.
inline std::size_t grid_size(const GridSpec& grid, std::size_t n, std::size_t cap) {
  const std::size_t base = grid.values.size() + (grid.include_neg_inf ? 1 : 0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > cap / base) return cap + 1;
    total *= base;
  }
  return total;
}

namespace detail {

/// Calls f on every grid vector of length n, lexicographically.
template <class F>
void for_each_grid_point(const GridSpec& grid, std::size_t n, std::size_t cap, F&& f) {
  grid.validate();
  if (const std::size_t size = grid_size(grid, n, cap); size > cap) {
    throw DomainError("grid: " + std::to_string(grid.values.size() + (grid.include_neg_inf ? 1 : 0)) +
                      "^" + std::to_string(n) + " candidates exceed the cap of " + std::to_string(cap));
  }
  const std::vector<Scalar> coords = grid.coordinates();
  std::vector<std::size_t> digit(n, 0);
  Vector x(n, coords.front());
  for (;;) {
    f(static_cast<const Vector&>(x));
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++digit[pos] < coords.size()) {
        x[pos] = coords[digit[pos]];
        break;
      }
      digit[pos] = 0;
      x[pos] = coords.front();
      if (pos == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace detail

/// Every grid vector x with A (x) x = B (x) x, in lexicographic order.
inline std::vector<Vector> grid_solutions(const Matrix& a, const Matrix& b, const GridSpec& grid,
                                          std::size_t cap = kDefaultGridCap) {
  require_same_shape(a, b, "grid_solutions");
  std::vector<Vector> out;
  detail::for_each_grid_point(grid, a.cols(), cap, [&](const Vector& x) {
    if (matvec_maxplus(a, x) == matvec_maxplus(b, x)) out.push_back(x);
  });
  return out;
}

struct InvalidSample {
  std::size_t cell = 0;
  Vector point;
};

struct CrossValidationReport {
  std::vector<Vector> missed;            ///< oracle solutions in no cell
  std::vector<InvalidSample> invalid;    ///< cell samples that are not solutions
  std::vector<InvalidSample> spurious;   ///< grid points inside a cell that are not solutions
  std::size_t oracle_solutions = 0;
  std::size_t grid_points = 0;
  std::size_t samples = 0;

  bool ok() const { return missed.empty() && invalid.empty() && spurious.empty(); }
};

/// Compares a solution set with brute force on `grid` in both directions, and
/// checks `samples_per_cell` sampled points of every cell by evaluation.
inline CrossValidationReport cross_validate(const Matrix& a, const Matrix& b, const GridSpec& grid,
                                            const SolutionSet& set, std::size_t samples_per_cell = 100,
                                            std::uint64_t seed = 0, std::size_t cap = kDefaultGridCap) {
  require_same_shape(a, b, "cross_validate");
  CrossValidationReport report;
  auto is_solution = [&](const Vector& x) { return matvec_maxplus(a, x) == matvec_maxplus(b, x); };
  auto all_neg_inf = [](const Vector& x) {
    for (const Scalar& s : x) {
      if (s.is_finite()) return false;
    }
    return true;
  };

  detail::for_each_grid_point(grid, a.cols(), cap, [&](const Vector& x) {
    ++report.grid_points;
    const bool solves = is_solution(x);
    bool covered = set.trivial_only && all_neg_inf(x);
    for (std::size_t c = 0; c < set.cells.size(); ++c) {
      if (!cell_membership(set.cells[c], x)) continue;
      covered = true;
      if (!solves) report.spurious.push_back({c, x});
    }
    if (solves) {
      ++report.oracle_solutions;
      if (!covered) report.missed.push_back(x);
    }
  });

  for (std::size_t c = 0; c < set.cells.size(); ++c) {
    for (Vector& x : sample_cell(set.cells[c], samples_per_cell, seed + c)) {
      ++report.samples;
      if (!is_solution(x)) report.invalid.push_back({c, std::move(x)});
    }
  }
  return report;
}

}  // namespace tropsys
