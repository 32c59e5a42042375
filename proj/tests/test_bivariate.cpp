#include "helpers.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace th;

namespace {

Matrix running_max() { return maximum_matrix(running().a, running().b); }

std::vector<Constraint> sorted(std::vector<Constraint> cs) {
  sort_canonical(cs);
  return cs;
}

/// Real-number reading of a system at a finite point.
bool satisfies(const std::vector<Constraint>& cs, const std::vector<Rational>& x) {
  for (const Constraint& c : cs) {
    const Rational v = x[c.plus] - x[c.minus] + c.constant;
    if (c.kind == Relation::Eq ? v != 0 : v > 0) return false;
  }
  return true;
}

}  // namespace

TEST(Constraint, NormalizesEquations) {
  const Constraint e = Constraint::eq(3, 0, Rational(5));
  EXPECT_EQ(e.plus, 0u);
  EXPECT_EQ(e.minus, 3u);
  EXPECT_EQ(e.constant, Rational(-5));
  EXPECT_EQ(e.str(), "x1 - x4 - 5 = 0");
  EXPECT_THROW(Constraint::leq(1, 1, Rational(0)), DomainError);
}

TEST(BuildSystems, FirstRunningSequence) {
  const BivariateSystems s = build_systems(seq1({{1, 4}, {1, 3}, {3, 3}}), running_max());
  EXPECT_EQ(sorted(s.equations), sorted({eq1(1, 4, -5), eq1(1, 3, 1)}));
  // Rows in the order the pairs produce them.
  const std::vector<Constraint> expect{leq1(2, 1, 4),  leq1(3, 1, -4), leq1(2, 1, 1), leq1(4, 1, -5),
                                       leq1(1, 3, 0),  leq1(2, 3, -1), leq1(4, 3, 1)};
  EXPECT_EQ(sorted(s.inequalities), sorted(expect));
}

TEST(BuildSystems, InconsistentSequence) {
  const Instance in = inconsistent_instance();
  const BivariateSystems s = build_systems(seq1({{1, 4}, {1, 3}, {3, 4}}), maximum_matrix(in.a, in.b));
  EXPECT_EQ(sorted(s.equations), sorted({eq1(1, 4, -5), eq1(1, 3, 1), eq1(3, 4, 4)}));
}

TEST(BuildSystems, TiePairEmitsNoEquation) {
  const BivariateSystems s = build_systems(seq1({{2, 2}}), mat({{1, 3, NI}}));
  EXPECT_TRUE(s.equations.empty());
  EXPECT_EQ(s.inequalities, std::vector<Constraint>{leq1(1, 2, -2)});
}

TEST(RemoveAndEnlarge, InconsistentComponentSpreads) {
  OmegaSet omega;
  for (std::size_t v : idx1({1, 3, 4})) omega.insert(v);
  auto [rest, out] = remove_and_enlarge({leq1(2, 1, 4)}, omega);
  EXPECT_TRUE(rest.empty());
  EXPECT_EQ(out.members, (std::set<std::size_t>{0, 1, 2, 3}));
}

TEST(RemoveAndEnlarge, NegInfOnPlusSideDropsRow) {
  OmegaSet omega;
  omega.insert(0);
  auto [rest, out] = remove_and_enlarge({leq1(1, 2, 3)}, omega);
  EXPECT_TRUE(rest.empty());
  EXPECT_EQ(out.members, std::set<std::size_t>{0});
}

TEST(RemoveAndEnlarge, Chain) {
  OmegaSet omega;
  omega.insert(0);
  auto [rest, out] = remove_and_enlarge({leq1(2, 1, 0), leq1(3, 2, 0)}, omega);
  EXPECT_TRUE(rest.empty());
  EXPECT_EQ(out.members, (std::set<std::size_t>{0, 1, 2}));
}

TEST(RemoveAndEnlarge, EquationsPropagateBothWays) {
  OmegaSet omega;
  omega.insert(2);
  auto [rest, out] = remove_and_enlarge({eq1(1, 3, 7), leq1(4, 2, 0)}, omega);
  EXPECT_EQ(rest, std::vector<Constraint>{leq1(4, 2, 0)});
  EXPECT_EQ(out.members, (std::set<std::size_t>{0, 2}));
}

TEST(SolveEquations, GaussianStep) {
  const std::vector<Constraint> s{eq1(1, 4, -5), eq1(1, 3, 1)};
  const PotentialAssignment pa = solve_equations(s, 4);
  EXPECT_EQ(pa.representative(0), 0u);
  EXPECT_EQ(pa.representative(2), 0u);
  EXPECT_EQ(pa.representative(3), 0u);
  EXPECT_EQ(pa.representative(1), 1u);
  EXPECT_EQ(pa.offset(2), Rational(1));
  EXPECT_EQ(pa.offset(3), Rational(-5));
  // Rooted at x4 instead: x3 = x4 + 6, x1 = x4 + 5.
  const PotentialAssignment at4 = pa.rerooted(3);
  EXPECT_EQ(at4.representative(0), 3u);
  EXPECT_EQ(at4.offset(0), Rational(5));
  EXPECT_EQ(at4.offset(2), Rational(6));
  EXPECT_EQ(at4.offset(3), Rational(0));
}

TEST(SolveEquations, InconsistentCycle) {
  const std::vector<Constraint> s{eq1(1, 4, -5), eq1(1, 3, 1), eq1(3, 4, 4)};
  const PotentialAssignment pa = solve_equations(s, 4);
  EXPECT_EQ(pa.inconsistent_roots(), std::vector<std::size_t>{0});
  EXPECT_EQ(pa.members(0), idx1({1, 3, 4}));
  EXPECT_FALSE(pa.inconsistent(1));
}

TEST(SolveEquations, EmptySystem) {
  const PotentialAssignment pa = solve_equations(std::vector<Constraint>{}, 3);
  for (std::size_t v = 0; v < 3; ++v) {
    EXPECT_EQ(pa.representative(v), v);
    EXPECT_EQ(pa.offset(v), Rational(0));
  }
}

TEST(Substitute, OntoRepresentatives) {
  // x1 = x4 + 5, x3 = x4 + 6, rooted at x4.
  const PotentialAssignment pa = solve_equations(std::vector<Constraint>{eq1(1, 4, -5), eq1(1, 3, 1)}, 4).rerooted(3);
  const std::vector<Constraint> d2{leq1(2, 1, 4), leq1(3, 1, -2), leq1(4, 1, -5), leq1(2, 3, -1), leq1(4, 3, 1)};
  const Substitution s = substitute(d2, pa);
  EXPECT_TRUE(s.infeasible_roots.empty());
  const SubSpecialization ss = sub_specialize(s.inequalities);
  EXPECT_TRUE(ss.equations.empty());
  EXPECT_TRUE(ss.forced.empty());
  EXPECT_EQ(ss.inequalities, std::vector<Constraint>{leq1(2, 4, -1)});
}

TEST(Substitute, SameComponent) {
  // x1 = x3 - 1
  const PotentialAssignment pa = solve_equations(std::vector<Constraint>{eq1(1, 3, 1)}, 3);
  const Substitution ok = substitute(std::vector<Constraint>{leq1(1, 3, -1)}, pa);
  EXPECT_TRUE(ok.inequalities.empty());
  EXPECT_TRUE(ok.infeasible_roots.empty());
  const Substitution bad = substitute(std::vector<Constraint>{leq1(1, 3, 9)}, pa);
  EXPECT_EQ(bad.infeasible_roots, std::set<std::size_t>{0});
}

TEST(SubSpecialize, DropsSuperfluousRow) {
  const std::vector<Constraint> d1{leq1(2, 1, 4), leq1(3, 1, -2), leq1(2, 1, 1),
                                   leq1(4, 1, -5), leq1(2, 3, -1), leq1(4, 3, 1)};
  const SubSpecialization ss = sub_specialize(d1);
  EXPECT_TRUE(ss.equations.empty());
  EXPECT_TRUE(ss.forced.empty());
  const std::vector<Constraint> d2{leq1(2, 1, 4), leq1(3, 1, -2), leq1(4, 1, -5), leq1(2, 3, -1), leq1(4, 3, 1)};
  EXPECT_EQ(sorted(ss.inequalities), sorted(d2));
  EXPECT_TRUE(is_sub_special(ss.inequalities));
}

TEST(SubSpecialize, OppositeRowsBecomeEquation) {
  const SubSpecialization ss = sub_specialize(std::vector<Constraint>{leq1(1, 2, 3), leq1(2, 1, -3)});
  EXPECT_EQ(ss.equations, std::vector<Constraint>{eq1(1, 2, 3)});
  EXPECT_TRUE(ss.inequalities.empty());
}

TEST(SubSpecialize, ZeroCycleThroughThreeVariables) {
  // x1 <= x2 <= x3 <= x1: the class needs two equations, so 2|E| + |N| = 4
  // exceeds the three input rows.
  const SubSpecialization ss = sub_specialize(std::vector<Constraint>{leq1(1, 2, 0), leq1(2, 3, 0), leq1(3, 1, 0)});
  EXPECT_EQ(ss.equations, (std::vector<Constraint>{eq1(1, 2, 0), eq1(1, 3, 0)}));
  EXPECT_TRUE(ss.inequalities.empty());
  EXPECT_TRUE(ss.forced.empty());
}

TEST(SubSpecialize, NegativeCycleForcesBoth) {
  const SubSpecialization ss = sub_specialize(std::vector<Constraint>{leq1(1, 2, 1), leq1(2, 1, 1)});
  EXPECT_EQ(ss.forced, (std::set<std::size_t>{0, 1}));
  EXPECT_TRUE(ss.equations.empty());
  EXPECT_TRUE(ss.inequalities.empty());
}

TEST(SubSpecialize, NegativeCyclePropagatesForward) {
  // x3 <= x1 + 0 with x1 forced drags x3 along.
  const SubSpecialization ss =
      sub_specialize(std::vector<Constraint>{leq1(1, 2, 1), leq1(2, 1, 1), leq1(3, 1, 0), leq1(4, 5, 0)});
  EXPECT_EQ(ss.forced, (std::set<std::size_t>{0, 1, 2}));
  EXPECT_EQ(ss.inequalities, std::vector<Constraint>{leq1(4, 5, 0)});
}

TEST(IsSubSpecial, Examples) {
  const std::vector<Constraint> d2{leq1(2, 1, 4), leq1(3, 1, -2), leq1(4, 1, -5), leq1(2, 3, -1), leq1(4, 3, 1)};
  EXPECT_TRUE(is_sub_special(sorted(d2)));
  // Rows (1,0,-1,0 | 3), (-1,0,1,0 | -8), (0,-1,1,0 | -4), (0,0,1,-1 | 0).
  const std::vector<Constraint> g{leq1(1, 3, 3), leq1(3, 1, -8), leq1(3, 2, -4), leq1(3, 4, 0)};
  EXPECT_TRUE(is_sub_special(g));
  const std::vector<Constraint> d1{leq1(2, 1, 4), leq1(3, 1, -2), leq1(2, 1, 1),
                                   leq1(4, 1, -5), leq1(2, 3, -1), leq1(4, 3, 1)};
  EXPECT_FALSE(is_sub_special(d1));
  // Opposite rows with an empty interval.
  EXPECT_FALSE(is_sub_special(std::vector<Constraint>{leq1(1, 2, 3), leq1(2, 1, -3)}));
}

TEST(BivariateProperties, EquationsHoldOnConsistentComponents) {
  Gen g(51);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = g.index(2, 6);
    std::vector<Constraint> eqs;
    const std::size_t rows = g.index(0, 6);
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t a = g.index(0, n - 1);
      std::size_t b = g.index(0, n - 2);
      if (b >= a) ++b;
      eqs.push_back(Constraint::eq(a, b, Rational(g.integer(-3, 3))));
    }
    const PotentialAssignment pa = solve_equations(eqs, n);
    for (std::size_t v = 0; v < n; ++v) {
      EXPECT_LE(pa.representative(v), v);
      EXPECT_EQ(pa.representative(pa.representative(v)), pa.representative(v));
      if (pa.representative(v) == v) {
        EXPECT_EQ(pa.offset(v), Rational(0));
      }
    }
    for (const Constraint& c : eqs) {
      ASSERT_EQ(pa.representative(c.plus), pa.representative(c.minus));
      if (pa.inconsistent(c.plus)) continue;
      EXPECT_EQ(pa.offset(c.plus) - pa.offset(c.minus) + c.constant, 0);
    }
    // An inconsistent component has no real solution: check on its
    // equations alone by brute force over potentials is impractical, so
    // replay the merges and confirm some equation contradicts the offsets.
    for (std::size_t root : pa.inconsistent_roots()) {
      bool contradicted = false;
      for (const Constraint& c : eqs) {
        if (pa.representative(c.plus) != root) continue;
        if (pa.offset(c.plus) - pa.offset(c.minus) + c.constant != 0) contradicted = true;
      }
      EXPECT_TRUE(contradicted);
    }
  }
}

TEST(BivariateProperties, SubSpecializationPreservesSolutions) {
  Gen g(53);
  std::size_t violations = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = g.index(2, 4);
    std::vector<Constraint> t;
    const std::size_t rows = g.index(1, 6);
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t a = g.index(0, n - 1);
      std::size_t b = g.index(0, n - 2);
      if (b >= a) ++b;
      t.push_back(Constraint::leq(a, b, Rational(g.integer(-3, 3))));
    }
    const SubSpecialization ss = sub_specialize(t);
    EXPECT_TRUE(is_sub_special(ss.inequalities));
    if (2 * ss.equations.size() + ss.inequalities.size() > t.size()) ++violations;

    std::vector<Constraint> both = ss.equations;
    both.insert(both.end(), ss.inequalities.begin(), ss.inequalities.end());
    for (int p = 0; p < 60; ++p) {
      std::vector<Rational> x(n);
      for (auto& v : x) v = Rational(g.integer(-8, 8), g.index(1, 2));
      const bool lhs = satisfies(t, x);
      const bool rhs = ss.forced.empty() && satisfies(both, x);
      EXPECT_EQ(lhs, rhs);
    }
    // Every N row is implied by T and no T row is tighter for the same pair.
    for (const Constraint& nrow : ss.inequalities) {
      for (const Constraint& trow : t) {
        if (trow.plus == nrow.plus && trow.minus == nrow.minus && ss.forced.empty()) {
          EXPECT_LE(trow.constant, nrow.constant);
        }
      }
    }
    // Adjacent opposite rows bound an interval of positive width.
    for (std::size_t i = 0; i + 1 < ss.inequalities.size(); ++i) {
      const Constraint& a = ss.inequalities[i];
      const Constraint& b = ss.inequalities[i + 1];
      if (a.plus == b.minus && a.minus == b.plus) {
        EXPECT_GT(-b.constant - a.constant, 0);
      }
    }
  }
  // Zero cycles through three or more variables need more than |T| / 2
  // equations, so the row-count inequality is not universal. Report the rate.
  RecordProperty("row_count_violations", static_cast<int>(violations));
}
