#pragma once

#include <tropsys/cell_solver.hpp>
#include <tropsys/matrix.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace tropsys {

/// A (x) x <= B (x) x has the same solutions as (A + B) (x) x = B (x) x.
inline std::pair<Matrix, Matrix> leq_to_eq(const Matrix& a, const Matrix& b) {
  return {maximum_matrix(a, b), b};
}

/// A (x) x + a = B (x) x + b.
struct AffineInstance {
  Matrix a_mat;
  Matrix b_mat;
  Vector a;
  Vector b;
};

/// C (x) x = D (x) y.
struct HeteroInstance {
  Matrix c;
  Matrix d;
};

namespace detail {

inline Matrix append_column(const Matrix& m, std::span<const Scalar> col) {
  Matrix out(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    out(i, m.cols()) = col[i];
  }
  return out;
}

}  // namespace detail

/// ([A | a], [B | b]) in the variables (x, z); solutions of the affine
/// system are the solutions with z = 0.
inline std::pair<Matrix, Matrix> homogenize_affine(const AffineInstance& inst) {
  require_same_shape(inst.a_mat, inst.b_mat, "homogenize_affine");
  if (inst.a.size() != inst.a_mat.rows() || inst.b.size() != inst.a_mat.rows()) {
    throw DimensionError("homogenize_affine: vector length != rows");
  }
  return {detail::append_column(inst.a_mat, inst.a), detail::append_column(inst.b_mat, inst.b)};
}

/// Restricts `cell` to x_v = 0 and drops v from its variables; v must be the
/// last variable. Returns nullopt when v is -inf throughout the cell.
inline std::optional<SolutionCell> pin_variable(const SolutionCell& cell, std::size_t v) {
  if (v + 1 != cell.dimension()) throw DimensionError("pin_variable: only the last variable can be pinned");
  auto it = cell.assignments.find(v);
  if (it == cell.assignments.end()) return std::nullopt;
  const std::size_t p = it->second.param;
  const Rational shift = it->second.offset;

  // Re-base parameter p so that t_p = 0 exactly when x_v = 0.
  SolutionCell out = cell;
  out.assignments.erase(v);
  for (auto& [w, a] : out.assignments) {
    if (a.param == p) a.offset -= shift;
  }
  for (Constraint& c : out.constraints) {
    if (c.plus == p) c.constant -= shift;
    if (c.minus == p) c.constant += shift;
  }
  sort_canonical(out.constraints);
  std::erase(out.free_indices, v);
  if (out.dimension_bound > 0) --out.dimension_bound;
  out.pinned = p;
  return out;
}

/// Solutions of the affine system: the homogenized instance's cells with
/// z pinned to 0. An empty result means no solution at all; the trivial
/// point solves the affine system only if it appears in a cell.
inline SolutionSet solve_affine(const AffineInstance& inst, SolveStats* stats = nullptr) {
  auto [a, b] = homogenize_affine(inst);
  const std::size_t z = inst.a_mat.cols();
  SolutionSet homo = solve(a, b, stats);
  SolutionSet out;
  out.n = z;
  out.win_sequence_count = homo.win_sequence_count;
  for (std::size_t v : homo.globally_forced) {
    if (v != z) out.globally_forced.push_back(v);
  }
  for (const SolutionCell& cell : homo.cells) {
    if (auto pinned = pin_variable(cell, z)) out.cells.push_back(std::move(*pinned));
  }
  return out;
}

/// ([C | -inf], [-inf | D]) in the variables (x, y).
inline std::pair<Matrix, Matrix> hetero_to_homo(const HeteroInstance& inst) {
  if (inst.c.rows() != inst.d.rows()) throw DimensionError("hetero_to_homo: C and D differ in rows");
  const std::size_t s = inst.c.rows();
  const std::size_t n = inst.c.cols();
  const std::size_t m = inst.d.cols();
  Matrix a(s, n + m);
  Matrix b(s, n + m);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = inst.c(i, j);
    for (std::size_t j = 0; j < m; ++j) b(i, n + j) = inst.d(i, j);
  }
  return {std::move(a), std::move(b)};
}

/// Splits a solution of the homogenized system into (x, y).
inline std::pair<Vector, Vector> split_hetero(std::span<const Scalar> z, std::size_t n) {
  if (n > z.size()) throw DimensionError("split_hetero: split point past the end");
  return {Vector(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n)),
          Vector(z.begin() + static_cast<std::ptrdiff_t>(n), z.end())};
}

/// All solutions of C (x) x = D (x) y, over the variables (x, y).
inline SolutionSet solve_hetero(const HeteroInstance& inst, SolveStats* stats = nullptr) {
  auto [a, b] = hetero_to_homo(inst);
  return solve(a, b, stats);
}

/// x# = A* (x)' b, the greatest x with A (x) x <= b. A must be real.
inline Vector principal_solution(const Matrix& a, std::span<const Scalar> b) {
  if (b.size() != a.rows()) throw DimensionError("principal_solution: vector length != rows");
  if (!a.is_real()) throw DomainError("principal_solution: matrix is not real");
  return matvec_minplus(conjugate(a), b);
}

/// The greatest solution of A (x) x = b, if there is any solution.
inline std::optional<Vector> decide_eq_b(const Matrix& a, std::span<const Scalar> b) {
  Vector x = principal_solution(a, b);
  if (matvec_maxplus(a, x) == Vector(b.begin(), b.end())) return x;
  return std::nullopt;
}

/// All solutions of A (x) x = b for any A, as the affine system with
/// B = -inf and a = -inf.
inline SolutionSet solve_eq_b(const Matrix& a, std::span<const Scalar> b, SolveStats* stats = nullptr) {
  AffineInstance inst{a, Matrix(a.rows(), a.cols()), Vector(a.rows(), Scalar::neg_inf()),
                      Vector(b.begin(), b.end())};
  return solve_affine(inst, stats);
}

}  // namespace tropsys
