#pragma once

#include <tropsys/bivariate.hpp>
#include <tropsys/matrix.hpp>
#include <tropsys/preprocess.hpp>
#include <tropsys/win_enum.hpp>

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace tropsys {

/// A winning pair placed at a row, in the caller's (original) indices.
struct PlacedPair {
  std::size_t row = 0;
  WinningPair pair;

  friend auto operator<=>(const PlacedPair&, const PlacedPair&) = default;
};

/// x_v = t_param + offset.
struct CellAssignment {
  std::size_t param = 0;
  Rational offset{};

  friend bool operator==(const CellAssignment&, const CellAssignment&) = default;
};

/// One convex piece of the solution set: the points arising from a single win
/// sequence. Parameters are named by the smallest variable index carrying
/// them; `constraints` are inequalities between parameters. When `pinned` is
/// set, that parameter is fixed to 0 (an affine specialization).
struct SolutionCell {
  std::vector<PlacedPair> win_sequence;
  std::vector<std::size_t> dead_rows;  ///< rows whose common value is -inf throughout
  std::vector<std::size_t> neg_inf;
  std::map<std::size_t, CellAssignment> assignments;
  std::vector<Constraint> constraints;
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<std::size_t> free_indices;
  std::size_t dimension_bound = 0;
  std::optional<std::size_t> pinned;

  std::size_t dimension() const noexcept { return neg_inf.size() + assignments.size(); }

  /// Distinct free real parameters (the pinned one excluded).
  std::vector<std::size_t> parameters() const {
    std::set<std::size_t> ps;
    for (const auto& [v, a] : assignments) {
      if (!pinned || a.param != *pinned) ps.insert(a.param);
    }
    return {ps.begin(), ps.end()};
  }

  std::size_t parameter_count() const { return parameters().size(); }

  friend bool operator==(const SolutionCell&, const SolutionCell&) = default;
};

struct SolutionSet {
  std::size_t n = 0;
  std::vector<SolutionCell> cells;
  std::vector<std::size_t> globally_forced;
  bool trivial_only = false;
  std::size_t win_sequence_count = 0;  ///< p

  friend bool operator==(const SolutionSet&, const SolutionSet&) = default;
};

/// What happened to one win sequence on its way to a cell.
struct SequenceTrace {
  std::vector<PlacedPair> win_sequence;
  std::vector<std::size_t> dead_rows;
  std::vector<std::size_t> omega;  ///< final -inf set, original indices
  bool inconsistent_equations = false;
  bool infeasible_substitution = false;
  bool negative_cycle = false;
  std::size_t passes = 0;
  bool produced_cell = false;
};

struct SubSpecializationRecord {
  std::size_t rows_in = 0;
  std::size_t equations = 0;
  std::size_t inequalities = 0;
};

struct SolveStats {
  std::size_t enumeration_nodes = 0;
  std::size_t branches = 0;  ///< reduced instances solved, including dead-row branches
  std::vector<SequenceTrace> sequences;
  std::vector<SubSpecializationRecord> sub_specializations;
  double preprocess_ms = 0;
  double enumerate_ms = 0;
  double cells_ms = 0;
};

struct DimensionBound {
  std::size_t bound = 0;
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<std::size_t> free_indices;
};

/// n - card|seq| + c, where the c cycles are the classes of columns linked
/// through overlapping pair supports.
inline DimensionBound dimension_bound(const WinSequence& seq, std::size_t n) {
  std::vector<std::size_t> parent(n);
  for (std::size_t v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<bool> used(n, false);
  for (const WinningPair& p : seq) {
    if (p.first >= n || p.second >= n) throw DimensionError("dimension_bound: column out of range");
    used[p.first] = used[p.second] = true;
    const std::size_t a = find(p.first);
    const std::size_t b = find(p.second);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  DimensionBound out;
  std::map<std::size_t, std::vector<std::size_t>> classes;
  std::size_t card = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!used[v]) {
      out.free_indices.push_back(v);
      continue;
    }
    ++card;
    classes[find(v)].push_back(v);
  }
  for (auto& [root, members] : classes) out.cycles.push_back(std::move(members));
  out.bound = n - card + out.cycles.size();
  return out;
}

/// A (x) = B (x), componentwise and exactly.
inline bool verify_solution(const Matrix& a, const Matrix& b, std::span<const Scalar> x) {
  require_same_shape(a, b, "verify_solution");
  return matvec_maxplus(a, x) == matvec_maxplus(b, x);
}

namespace detail {

/// Parameter values implied by x, or nullopt if x is not of the cell's form.
inline std::optional<std::map<std::size_t, Scalar>> parameter_values(const SolutionCell& cell,
                                                                      std::span<const Scalar> x) {
  if (x.size() != cell.dimension()) throw DimensionError("cell_membership: vector length != n");
  for (std::size_t v : cell.neg_inf) {
    if (x[v].is_finite()) return std::nullopt;
  }
  std::map<std::size_t, Scalar> values;
  for (const auto& [v, a] : cell.assignments) {
    Scalar t = x[v].is_finite() ? Scalar(Rational(x[v].value() - a.offset)) : Scalar::neg_inf();
    auto [it, inserted] = values.emplace(a.param, t);
    if (!inserted && it->second != t) return std::nullopt;
  }
  if (cell.pinned) {
    auto it = values.find(*cell.pinned);
    if (it != values.end() && it->second != Scalar(0)) return std::nullopt;
    values[*cell.pinned] = Scalar(0);
  }
  return values;
}

/// Semiring reading of a Leq on known values.
inline bool holds(const Constraint& c, const Scalar& plus, const Scalar& minus) {
  if (plus.is_neg_inf()) return true;
  if (minus.is_neg_inf()) return false;
  const Rational lhs = plus.value() - minus.value() + c.constant;
  return c.kind == Relation::Leq ? lhs <= 0 : lhs == 0;
}

}  // namespace detail

inline bool cell_membership(const SolutionCell& cell, std::span<const Scalar> x) {
  auto values = detail::parameter_values(cell, x);
  if (!values) return false;
  for (const Constraint& c : cell.constraints) {
    auto p = values->find(c.plus);
    auto m = values->find(c.minus);
    if (p == values->end() || m == values->end()) return false;
    if (!detail::holds(c, p->second, m->second)) return false;
  }
  return true;
}

/// Deterministic pseudo-random members of `cell`. The first point is the
/// all -inf point whenever it belongs to the cell (always, unless pinned).
/// Finite parameter values are drawn from [-box, box] where the cell's
/// constraints allow it, and from the nearest feasible range otherwise.
inline std::vector<Vector> sample_cell(const SolutionCell& cell, std::size_t count, std::uint64_t seed,
                                       const Rational& box = Rational(10)) {
  using Bound = std::optional<Rational>;
  std::vector<Vector> out;
  if (count == 0) return out;
  const std::size_t n = cell.dimension();

  std::vector<std::size_t> params;
  for (const auto& [v, a] : cell.assignments) params.push_back(a.param);
  if (cell.pinned) params.push_back(*cell.pinned);
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end()), params.end());
  const std::size_t k = params.size();
  auto index_of = [&](std::size_t p) {
    return static_cast<std::size_t>(std::lower_bound(params.begin(), params.end(), p) - params.begin());
  };

  // d(u, w): tightest bound on t_w - t_u.
  std::vector<Bound> dist(k * k);
  auto d = [&](std::size_t u, std::size_t w) -> Bound& { return dist[u * k + w]; };
  for (std::size_t v = 0; v < k; ++v) d(v, v) = Rational(0);
  auto tighten = [&](std::size_t u, std::size_t w, Rational value) {
    if (!d(u, w) || value < *d(u, w)) d(u, w) = std::move(value);
  };
  for (const Constraint& c : cell.constraints) {
    tighten(index_of(c.minus), index_of(c.plus), Rational(-c.constant));
    if (c.kind == Relation::Eq) tighten(index_of(c.plus), index_of(c.minus), c.constant);
  }
  for (std::size_t via = 0; via < k; ++via) {
    for (std::size_t u = 0; u < k; ++u) {
      if (!d(u, via)) continue;
      for (std::size_t w = 0; w < k; ++w) {
        if (d(via, w)) tighten(u, w, *d(u, via) + *d(via, w));
      }
    }
  }
  const std::optional<std::size_t> pinned_index =
      cell.pinned ? std::optional<std::size_t>(index_of(*cell.pinned)) : std::nullopt;

  std::mt19937_64 rng(seed);
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  auto pick = [&](const Bound& lo, const Bound& hi) -> Rational {
    const Rational step(1, 4);
    Bound a = lo;
    Bound b = hi;
    if (!a || *a < -box) a = (b && *b < -box) ? Bound() : Bound(Rational(-box));
    if (!b || *b > box) b = (a && *a > box) ? Bound() : Bound(Rational(box));
    if (a && b) {
      const Rational width = *b - *a;
      return *a + width * Rational(static_cast<long long>(uniform(0, 48)), 48);
    }
    if (a) return *a + step * static_cast<long long>(uniform(0, 32));
    return *b - step * static_cast<long long>(uniform(0, 32));
  };

  auto build_point = [&](const std::vector<Scalar>& t) {
    Vector x(n, Scalar::neg_inf());
    for (const auto& [v, a] : cell.assignments) {
      const Scalar& tp = t[index_of(a.param)];
      if (tp.is_finite()) x[v] = Scalar(Rational(tp.value() + a.offset));
    }
    return x;
  };

  if (!pinned_index) out.push_back(Vector(n, Scalar::neg_inf()));
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 64 * count + 64) throw std::logic_error("sample_cell: cannot produce members");
    // Choose the -inf parameters, closed forward along the bounds.
    std::vector<bool> dead(k, false);
    const std::size_t dead_rate = uniform(0, 3);  // 0 => all finite
    for (std::size_t v = 0; v < k; ++v) {
      if (v != pinned_index && dead_rate > 0 && uniform(0, 7) < dead_rate) dead[v] = true;
    }
    for (std::size_t u = 0; u < k; ++u) {
      if (!dead[u]) continue;
      for (std::size_t w = 0; w < k; ++w) {
        if (d(u, w)) dead[w] = true;
      }
    }
    if (pinned_index && dead[*pinned_index]) continue;

    std::vector<std::size_t> order;
    if (pinned_index) order.push_back(*pinned_index);
    for (std::size_t v = 0; v < k; ++v) {
      if (!dead[v] && v != pinned_index) order.push_back(v);
    }
    std::shuffle(order.begin() + (pinned_index ? 1 : 0), order.end(), rng);

    std::vector<Scalar> t(k, Scalar::neg_inf());
    std::vector<bool> assigned(k, false);
    for (std::size_t v : order) {
      Bound lo, hi;
      for (std::size_t u = 0; u < k; ++u) {
        if (!assigned[u]) continue;
        const Rational& tu = t[u].value();
        if (d(v, u)) {  // t_u - t_v <= d(v, u)
          Rational cand = tu - *d(v, u);
          if (!lo || cand > *lo) lo = std::move(cand);
        }
        if (d(u, v)) {  // t_v - t_u <= d(u, v)
          Rational cand = tu + *d(u, v);
          if (!hi || cand < *hi) hi = std::move(cand);
        }
      }
      t[v] = (pinned_index && v == *pinned_index) ? Scalar(0) : Scalar(pick(lo, hi));
      assigned[v] = true;
    }
    Vector x = build_point(t);
    const bool trivial = std::all_of(x.begin(), x.end(), [](const Scalar& s) { return s.is_neg_inf(); });
    if (trivial && k > (pinned_index ? 1u : 0u) && !out.empty()) continue;  // already the first point
    if (cell_membership(cell, x)) out.push_back(std::move(x));
  }
  return out;
}

namespace detail {

class CellSolver {
 public:
  CellSolver(const Matrix& a, const Matrix& b, SolveStats* stats) : a_(a), b_(b), stats_(stats) {}

  SolutionSet run() {
    SolutionSet out;
    out.n = a_.cols();
    top_level_ = true;
    visited_.insert({});
    solve_branch({}, out);
    // Cells of the instance itself (no dead rows) first, then by sequence.
    std::stable_sort(out.cells.begin(), out.cells.end(), [](const SolutionCell& x, const SolutionCell& y) {
      return std::tie(x.dead_rows, x.win_sequence) < std::tie(y.dead_rows, y.win_sequence);
    });
    out.trivial_only = out.cells.empty();
    if (out.trivial_only) {
      out.globally_forced.clear();
      for (std::size_t j = 0; j < out.n; ++j) out.globally_forced.push_back(j);
    }
    return out;
  }

 private:
  using Clock = std::chrono::steady_clock;

  static double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  }

  std::vector<std::size_t> dead_rows_for(const std::vector<std::size_t>& forced) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a_.rows(); ++i) {
      bool dead = true;
      for (std::size_t j = 0; j < a_.cols() && dead; ++j) {
        const bool finite = a_(i, j).is_finite() || b_(i, j).is_finite();
        if (finite && !std::binary_search(forced.begin(), forced.end(), j)) dead = false;
      }
      if (dead) out.push_back(i);
    }
    return out;
  }

  void solve_branch(const std::vector<std::size_t>& seed, SolutionSet& out) {
    const auto t0 = Clock::now();
    const ReducedInstance r = reduce_instance(a_, b_, seed);
    if (stats_) {
      stats_->preprocess_ms += ms_since(t0);
      ++stats_->branches;
    }
    const bool top = top_level_;
    top_level_ = false;
    if (top) out.globally_forced = r.forced_neg_inf;
    const std::vector<std::size_t> dead_rows = top ? std::vector<std::size_t>{} : dead_rows_for(r.forced_neg_inf);

    if (r.verdict == Verdict::TrivialOnly) return;
    if (r.verdict == Verdict::AllRowsGone) {
      SolutionCell cell;
      cell.dead_rows = dead_rows;
      cell.neg_inf = r.forced_neg_inf;
      for (std::size_t j : r.free_cols) cell.assignments[j] = {j, Rational(0)};
      const DimensionBound db = dimension_bound({}, a_.cols());
      cell.free_indices = db.free_indices;
      cell.dimension_bound = db.bound;
      out.cells.push_back(std::move(cell));
      return;
    }

    const auto t1 = Clock::now();
    std::vector<std::vector<WinningPair>> pairs;
    for (std::size_t h = 0; h < r.row_origin.size(); ++h) {
      pairs.push_back(winning_pairs(classify_row(r.a_bold, r.b_bold, h)));
    }
    Enumeration en = enumerate_win_sequences(r.max_matrix, pairs);
    if (top) out.win_sequence_count = en.sequences.size();
    if (stats_) {
      stats_->enumeration_nodes += en.nodes;
      stats_->enumerate_ms += ms_since(t1);
    }

    const auto t2 = Clock::now();
    for (const WinSequence& seq : en.sequences) {
      if (auto cell = solve_sequence(r, seq, dead_rows)) out.cells.push_back(std::move(*cell));
    }
    if (stats_) stats_->cells_ms += ms_since(t2);

    // Solutions in which some row's common value is -inf need not arise from
    // a compatible choice of pairs: cover them by forcing that row's support.
    for (std::size_t h = 0; h < r.row_origin.size(); ++h) {
      std::vector<std::size_t> next = r.forced_neg_inf;
      for (std::size_t j = 0; j < r.col_origin.size(); ++j) {
        if (r.max_matrix(h, j).is_finite()) next.push_back(r.col_origin[j]);
      }
      std::sort(next.begin(), next.end());
      if (visited_.insert(next).second) solve_branch(next, out);
    }
  }

  std::optional<SolutionCell> solve_sequence(const ReducedInstance& r, const WinSequence& seq,
                                             const std::vector<std::size_t>& dead_rows) {
    const std::size_t n = r.col_origin.size();
    const Matrix& m = r.max_matrix;
    SequenceTrace trace;
    for (std::size_t h = 0; h < seq.size(); ++h) {
      trace.win_sequence.push_back(
          {r.row_origin[h], {r.col_origin[seq[h].first], r.col_origin[seq[h].second]}});
    }
    trace.dead_rows = dead_rows;

    BivariateSystems sys = build_systems(seq, m);
    std::vector<Constraint> eqs = std::move(sys.equations);
    std::vector<Constraint> ineqs = std::move(sys.inequalities);
    OmegaSet omega;
    PotentialAssignment pa(n);

    auto absorb = [&](std::size_t root) {
      for (std::size_t v : pa.members(root)) omega.insert(v);
    };

    // Each pass grows Omega or merges two components.
    const std::size_t max_passes = 2 * n + eqs.size() + ineqs.size() + 4;
    for (;;) {
      if (++trace.passes > max_passes) throw std::logic_error("solve_sequence: no fixed point");
      std::vector<Constraint> all = eqs;
      all.insert(all.end(), ineqs.begin(), ineqs.end());
      auto [kept, grown] = remove_and_enlarge(std::move(all), omega);
      omega = std::move(grown);
      eqs.clear();
      ineqs.clear();
      for (auto& c : kept) (c.kind == Relation::Eq ? eqs : ineqs).push_back(std::move(c));

      pa = solve_equations(eqs, n);
      if (auto bad = pa.inconsistent_roots(); !bad.empty()) {
        trace.inconsistent_equations = true;
        for (std::size_t root : bad) absorb(root);
        continue;
      }
      Substitution sub = substitute(ineqs, pa);
      if (!sub.infeasible_roots.empty()) {
        trace.infeasible_substitution = true;
        for (std::size_t root : sub.infeasible_roots) absorb(root);
        continue;
      }
      SubSpecialization ss = sub_specialize(sub.inequalities);
      if (stats_) {
        stats_->sub_specializations.push_back(
            {sub.inequalities.size(), ss.equations.size(), ss.inequalities.size()});
      }
      if (!ss.forced.empty()) {
        trace.negative_cycle = true;
        for (std::size_t root : ss.forced) absorb(root);
        continue;
      }
      if (!ss.equations.empty()) {
        eqs.insert(eqs.end(), ss.equations.begin(), ss.equations.end());
        ineqs = std::move(ss.inequalities);
        continue;
      }
      ineqs = std::move(ss.inequalities);
      break;
    }

    for (std::size_t v : omega.members) trace.omega.push_back(r.col_origin[v]);
    trace.omega.insert(trace.omega.end(), r.forced_neg_inf.begin(), r.forced_neg_inf.end());
    std::sort(trace.omega.begin(), trace.omega.end());

    SolutionCell cell;
    cell.win_sequence = trace.win_sequence;
    cell.dead_rows = dead_rows;
    cell.neg_inf = trace.omega;
    for (std::size_t v = 0; v < n; ++v) {
      if (omega.contains(v)) continue;
      cell.assignments[r.col_origin[v]] = {r.col_origin[pa.representative(v)], pa.offset(v)};
    }
    for (std::size_t j : r.free_cols) cell.assignments[j] = {j, Rational(0)};
    for (const Constraint& c : ineqs) {
      cell.constraints.push_back(Constraint::leq(r.col_origin[c.plus], r.col_origin[c.minus], c.constant));
    }
    sort_canonical(cell.constraints);

    WinSequence original;
    for (const PlacedPair& p : cell.win_sequence) original.push_back(p.pair);
    DimensionBound db = dimension_bound(original, a_.cols());
    cell.cycles = std::move(db.cycles);
    cell.free_indices = std::move(db.free_indices);
    cell.dimension_bound = db.bound;

    trace.produced_cell = !cell.assignments.empty();
    if (stats_) stats_->sequences.push_back(trace);
    if (!trace.produced_cell) return std::nullopt;
    return cell;
  }

  const Matrix& a_;
  const Matrix& b_;
  SolveStats* stats_;
  bool top_level_ = true;
  std::set<std::vector<std::size_t>> visited_;
};

}  // namespace detail

/// All solutions of A (x) x = B (x) x as a union of parameterized cells, one
/// per win sequence, plus the cells of the instances obtained by forcing a
/// row's support to -inf (solutions whose common value vanishes on a row).
/// `win_sequence_count` is p for the input instance itself.
inline SolutionSet solve(const Matrix& a, const Matrix& b, SolveStats* stats = nullptr) {
  require_same_shape(a, b, "solve");
  if (a.cols() == 0) throw DimensionError("solve: no variables");
  return detail::CellSolver(a, b, stats).run();
}

/// Drops cells that describe exactly the same parametric set as an earlier one.
inline void dedupe_cells(SolutionSet& set) {
  std::vector<SolutionCell> kept;
  for (auto& cell : set.cells) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const SolutionCell& k) {
      return k.neg_inf == cell.neg_inf && k.assignments == cell.assignments &&
             k.constraints == cell.constraints && k.pinned == cell.pinned;
    });
    if (!dup) kept.push_back(std::move(cell));
  }
  set.cells = std::move(kept);
}

}  // namespace tropsys
