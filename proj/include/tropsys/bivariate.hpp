#pragma once

#include <tropsys/matrix.hpp>
#include <tropsys/win_enum.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace tropsys {

enum class Relation { Eq, Leq };

/// x_plus - x_minus + constant = 0 (Eq) or <= 0 (Leq), with plus != minus.
///
/// Over the semiring a Leq holds when x_plus is -inf, or when both sides are
/// finite and the inequality holds; an Eq holds when both sides are -inf or
/// both are finite and the equality holds.
struct Constraint {
  std::size_t plus = 0;
  std::size_t minus = 0;
  Rational constant{};
  Relation kind = Relation::Leq;

  static Constraint leq(std::size_t plus, std::size_t minus, Rational constant) {
    if (plus == minus) throw DomainError("constraint on a single variable");
    return {plus, minus, std::move(constant), Relation::Leq};
  }

  /// Equations are stored with the leading +1 on the smaller index.
  static Constraint eq(std::size_t plus, std::size_t minus, Rational constant) {
    if (plus == minus) throw DomainError("constraint on a single variable");
    if (plus > minus) return {minus, plus, Rational(-constant), Relation::Eq};
    return {plus, minus, std::move(constant), Relation::Eq};
  }

  std::size_t low() const noexcept { return std::min(plus, minus); }
  std::size_t high() const noexcept { return std::max(plus, minus); }

  friend bool operator==(const Constraint&, const Constraint&) = default;

  /// "x3 - x1 + 4 <= 0" with 1-based indices, `name` prefixing each index.
  std::string str(const std::string& name = "x") const {
    std::string out = name + std::to_string(plus + 1) + " - " + name + std::to_string(minus + 1);
    if (constant > 0) out += " + " + to_string(constant);
    if (constant < 0) out += " - " + to_string(Rational(-constant));
    out += kind == Relation::Eq ? " = 0" : " <= 0";
    return out;
  }
};

/// Canonical order: ascending (low, high), the row with +1 on the lower index
/// first, then by constant.
inline bool canonical_less(const Constraint& a, const Constraint& b) {
  const bool a_neg = a.plus > a.minus;
  const bool b_neg = b.plus > b.minus;
  return std::forward_as_tuple(a.kind, a.low(), a.high(), a_neg, a.constant) <
         std::forward_as_tuple(b.kind, b.low(), b.high(), b_neg, b.constant);
}

inline void sort_canonical(std::vector<Constraint>& cs) {
  std::sort(cs.begin(), cs.end(), canonical_less);
}

/// Variables known to be -inf. Only ever grows.
struct OmegaSet {
  std::set<std::size_t> members;

  bool contains(std::size_t v) const { return members.count(v) != 0; }
  bool insert(std::size_t v) { return members.insert(v).second; }
  std::size_t size() const noexcept { return members.size(); }
  bool empty() const noexcept { return members.empty(); }

  friend bool operator==(const OmegaSet&, const OmegaSet&) = default;
};

struct BivariateSystems {
  std::vector<Constraint> equations;
  std::vector<Constraint> inequalities;
};

/// For each row h with pair (i1, i2): the equation m_h,i1 + x_i1 = m_h,i2 + x_i2
/// (skipped for a tie) and, for every other column j with m_hj finite,
/// m_hj + x_j <= m_h,i1 + x_i1 in normal form.
inline BivariateSystems build_systems(const WinSequence& seq, const Matrix& m) {
  if (seq.size() != m.rows()) throw DimensionError("build_systems: one pair per row required");
  BivariateSystems out;
  for (std::size_t h = 0; h < seq.size(); ++h) {
    const auto [i1, i2] = seq[h];
    if (i1 != i2) {
      const ExtScalar d = dif(m, i1, i2, h);
      out.equations.push_back(Constraint::eq(i2, i1, Rational(-d.value())));
    }
    const Rational& anchor = m(h, i1).value();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j == i1 || j == i2 || m(h, j).is_neg_inf()) continue;
      out.inequalities.push_back(Constraint::leq(j, i1, Rational(m(h, j).value() - anchor)));
    }
  }
  return out;
}

/// Drops every constraint touching Omega, growing Omega to a fixed point:
/// a Leq whose minus side is -inf forces its plus side, and an Eq forces
/// both of its sides together.
inline std::pair<std::vector<Constraint>, OmegaSet> remove_and_enlarge(std::vector<Constraint> constraints,
                                                                       OmegaSet omega) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Constraint> kept;
    kept.reserve(constraints.size());
    for (auto& c : constraints) {
      const bool plus_dead = omega.contains(c.plus);
      const bool minus_dead = omega.contains(c.minus);
      if (!plus_dead && !minus_dead) {
        kept.push_back(std::move(c));
        continue;
      }
      if (c.kind == Relation::Leq) {
        if (!plus_dead) changed |= omega.insert(c.plus);
      } else {
        changed |= omega.insert(c.plus);
        changed |= omega.insert(c.minus);
      }
    }
    constraints = std::move(kept);
  }
  return {std::move(constraints), std::move(omega)};
}

/// Solution of a system of bivariate equations: x_v = x_rep(v) + offset(v),
/// where rep(v) is the smallest index of v's component. Components whose
/// equations close a cycle with nonzero residual are flagged inconsistent;
/// over the semiring they admit only -inf.
class PotentialAssignment {
 public:
  PotentialAssignment() = default;
  explicit PotentialAssignment(std::size_t n) : rep_(n), offset_(n), bad_(n, false) {
    std::iota(rep_.begin(), rep_.end(), std::size_t{0});
  }

  std::size_t size() const noexcept { return rep_.size(); }
  std::size_t representative(std::size_t v) const { return rep_.at(v); }
  const Rational& offset(std::size_t v) const { return offset_.at(v); }
  bool inconsistent(std::size_t v) const { return bad_.at(rep_.at(v)); }

  std::vector<std::size_t> members(std::size_t root) const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < rep_.size(); ++v) {
      if (rep_[v] == rep_.at(root)) out.push_back(v);
    }
    return out;
  }

  std::vector<std::size_t> inconsistent_roots() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < rep_.size(); ++v) {
      if (rep_[v] == v && bad_[v]) out.push_back(v);
    }
    return out;
  }

  /// Same affine family, with `v` as the representative of its component.
  PotentialAssignment rerooted(std::size_t v) const {
    PotentialAssignment out = *this;
    const std::size_t root = rep_.at(v);
    const Rational shift = offset_[v];
    for (std::size_t u = 0; u < rep_.size(); ++u) {
      if (rep_[u] != root) continue;
      out.rep_[u] = v;
      out.offset_[u] = offset_[u] - shift;
    }
    out.bad_[v] = bad_[root];
    if (root != v) out.bad_[root] = false;
    return out;
  }

  friend bool operator==(const PotentialAssignment&, const PotentialAssignment&) = default;

 private:
  template <class Range>
  friend PotentialAssignment solve_equations(const Range& equations, std::size_t n);

  std::vector<std::size_t> rep_;
  std::vector<Rational> offset_;
  std::vector<bool> bad_;
};

/// Weighted union-find over `n` variables.
template <class Range>
PotentialAssignment solve_equations(const Range& equations, std::size_t n) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::vector<Rational> weight(n);  // x_v = x_parent(v) + weight(v)
  std::vector<bool> bad(n, false);

  auto find = [&](std::size_t v) {
    std::vector<std::size_t> path;
    while (parent[v] != v) {
      path.push_back(v);
      v = parent[v];
    }
    // Compress from the node nearest the root outwards.
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const std::size_t p = parent[*it];
      if (p != v) {
        weight[*it] += weight[p];
        parent[*it] = v;
      }
    }
    return v;
  };

  for (const Constraint& c : equations) {
    if (c.kind != Relation::Eq) throw DomainError("solve_equations: inequality in input");
    if (c.plus >= n || c.minus >= n) throw DimensionError("solve_equations: variable out of range");
    // x_plus = x_minus - constant
    const std::size_t rp = find(c.plus);
    const std::size_t rm = find(c.minus);
    const Rational wp = weight[c.plus];
    const Rational wm = weight[c.minus];
    if (rp == rm) {
      if (wp != wm - c.constant) bad[rp] = true;
      continue;
    }
    // x_rm = x_rp + (wp - wm + constant)
    const Rational rm_over_rp = wp - wm + c.constant;
    if (rp < rm) {
      parent[rm] = rp;
      weight[rm] = rm_over_rp;
      bad[rp] = bad[rp] || bad[rm];
    } else {
      parent[rp] = rm;
      weight[rp] = -rm_over_rp;
      bad[rm] = bad[rp] || bad[rm];
    }
  }

  PotentialAssignment out(n);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t r = find(v);
    out.rep_[v] = r;
    out.offset_[v] = weight[v];
  }
  for (std::size_t v = 0; v < n; ++v) out.bad_[v] = out.rep_[v] == v && bad[v];
  return out;
}

struct Substitution {
  std::vector<Constraint> inequalities;  ///< over representatives
  std::set<std::size_t> infeasible_roots;
};

/// Rewrites each inequality over component representatives. A rewritten
/// inequality on a single representative is dropped when it reads c <= 0 and
/// otherwise marks that component infeasible over the reals.
inline Substitution substitute(std::span<const Constraint> inequalities, const PotentialAssignment& pa) {
  Substitution out;
  for (const Constraint& c : inequalities) {
    const std::size_t rp = pa.representative(c.plus);
    const std::size_t rm = pa.representative(c.minus);
    Rational k = pa.offset(c.plus) - pa.offset(c.minus) + c.constant;
    if (rp == rm) {
      if (k > 0) out.infeasible_roots.insert(rp);
      continue;
    }
    out.inequalities.push_back(Constraint::leq(rp, rm, std::move(k)));
  }
  return out;
}

struct SubSpecialization {
  std::vector<Constraint> equations;    ///< E
  std::vector<Constraint> inequalities; ///< N, canonical order
  std::set<std::size_t> forced;         ///< variables that can only be -inf
};

namespace detail {

using Bound = std::optional<Rational>;

inline bool bound_less(const Bound& a, const Bound& b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}

}  // namespace detail

/// Splits a system of bivariate inequalities into extracted equations E and
/// a sub-special residue N with {x : T} = {x : E and N} (over the reals and
/// the semiring alike), and reports the variables lying on negative cycles
/// of the difference graph, propagated forward, as `forced`.
///
/// The difference graph has an edge minus -> plus of weight -constant for
/// each row (x_plus - x_minus <= -constant). Its shortest-path closure finds
/// negative cycles (forced) and zero cycles (equal classes, emitted into E as
/// a spanning set rooted at the smallest index). N keeps, for each ordered
/// pair across classes, the single tightest input row.
inline SubSpecialization sub_specialize(std::span<const Constraint> inequalities) {
  using detail::Bound;
  SubSpecialization out;
  std::vector<std::size_t> vars;
  for (const Constraint& c : inequalities) {
    if (c.kind != Relation::Leq) throw DomainError("sub_specialize: equation in input");
    vars.push_back(c.plus);
    vars.push_back(c.minus);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  const std::size_t k = vars.size();
  auto index_of = [&](std::size_t v) {
    return static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
  };

  // Tightest input row per ordered (minus, plus).
  std::map<std::pair<std::size_t, std::size_t>, Rational> tightest;
  for (const Constraint& c : inequalities) {
    auto key = std::make_pair(index_of(c.minus), index_of(c.plus));
    auto [it, inserted] = tightest.emplace(key, c.constant);
    if (!inserted && c.constant > it->second) it->second = c.constant;
  }

  std::vector<Bound> dist(k * k);
  auto d = [&](std::size_t u, std::size_t w) -> Bound& { return dist[u * k + w]; };
  for (std::size_t v = 0; v < k; ++v) d(v, v) = Rational(0);
  for (const auto& [key, constant] : tightest) {
    Bound w = Rational(-constant);
    if (detail::bound_less(w, d(key.first, key.second))) d(key.first, key.second) = w;
  }
  for (std::size_t via = 0; via < k; ++via) {
    for (std::size_t u = 0; u < k; ++u) {
      if (!d(u, via)) continue;
      for (std::size_t w = 0; w < k; ++w) {
        if (!d(via, w)) continue;
        Bound candidate = Rational(*d(u, via) + *d(via, w));
        if (detail::bound_less(candidate, d(u, w))) d(u, w) = std::move(candidate);
      }
    }
  }

  OmegaSet negative;
  for (std::size_t v = 0; v < k; ++v) {
    if (*d(v, v) < 0) negative.insert(vars[v]);
  }
  if (!negative.empty()) {
    auto [rest, omega] = remove_and_enlarge(
        std::vector<Constraint>(inequalities.begin(), inequalities.end()), std::move(negative));
    out = sub_specialize(rest);
    out.forced.insert(omega.members.begin(), omega.members.end());
    return out;
  }

  // Zero-cycle classes: u ~ w iff d(u, w) + d(w, u) = 0.
  std::vector<std::size_t> cls(k);
  std::iota(cls.begin(), cls.end(), std::size_t{0});
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t w = u + 1; w < k; ++w) {
      if (cls[w] != w) continue;
      if (d(u, w) && d(w, u) && *d(u, w) + *d(w, u) == 0) cls[w] = cls[u];
    }
  }
  for (std::size_t w = 0; w < k; ++w) {
    if (cls[w] == w) continue;
    // x_w - x_root = d(root, w)  <=>  x_root - x_w + d(root, w) = 0
    out.equations.push_back(Constraint::eq(vars[cls[w]], vars[w], *d(cls[w], w)));
  }
  for (const auto& [key, constant] : tightest) {
    if (cls[key.first] == cls[key.second]) continue;
    out.inequalities.push_back(Constraint::leq(vars[key.second], vars[key.first], constant));
  }
  sort_canonical(out.equations);
  sort_canonical(out.inequalities);
  return out;
}

/// Structural check of the sub-special form on a list of inequalities:
/// distinct variable parts, no row equal to the negation of another, opposite
/// rows adjacent with +1 on the lower index first and a non-empty open
/// interval between them, and otherwise non-decreasing leading index.
inline bool is_sub_special(std::span<const Constraint> rows) {
  auto opposite = [](const Constraint& a, const Constraint& b) {
    return a.plus == b.minus && a.minus == b.plus;
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].kind != Relation::Leq || rows[i].plus == rows[i].minus) return false;
    for (std::size_t k = i + 1; k < rows.size(); ++k) {
      if (rows[i].plus == rows[k].plus && rows[i].minus == rows[k].minus) return false;
      if (opposite(rows[i], rows[k])) {
        if (k != i + 1) return false;
        if (rows[i].plus > rows[i].minus) return false;
        if (!(rows[i].constant < -rows[k].constant)) return false;
      }
    }
    if (i + 1 < rows.size() && !opposite(rows[i], rows[i + 1])) {
      if (rows[i].low() > rows[i + 1].low()) return false;
    }
  }
  return true;
}

}  // namespace tropsys
