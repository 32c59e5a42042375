#pragma once

#include <tropsys/tropsys.hpp>

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace th {

using namespace tropsys;

inline const Scalar NI = Scalar::neg_inf();

inline Matrix mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
  std::vector<std::vector<Scalar>> data;
  for (const auto& r : rows) data.emplace_back(r);
  return Matrix::from_rows(data);
}

inline Vector vec(std::initializer_list<Scalar> xs) { return Vector(xs); }

inline Scalar q(long long p, long long d) { return Scalar(Rational(p, d)); }

// 1-based constructors, matching how instances are written down.
inline WinningPair wp(std::size_t a, std::size_t b) { return {a - 1, b - 1}; }
inline Constraint leq1(std::size_t plus, std::size_t minus, long long c) {
  return Constraint::leq(plus - 1, minus - 1, Rational(c));
}
inline Constraint eq1(std::size_t plus, std::size_t minus, long long c) {
  return Constraint::eq(plus - 1, minus - 1, Rational(c));
}
inline WinSequence seq1(std::initializer_list<std::pair<std::size_t, std::size_t>> pairs) {
  WinSequence out;
  for (auto [a, b] : pairs) out.push_back(wp(a, b));
  return out;
}
inline std::vector<std::size_t> idx1(std::initializer_list<std::size_t> xs) {
  std::vector<std::size_t> out;
  for (std::size_t x : xs) out.push_back(x - 1);
  return out;
}

inline WinSequence pairs_of(const SolutionCell& cell) {
  WinSequence out;
  for (const PlacedPair& p : cell.win_sequence) out.push_back(p.pair);
  return out;
}

/// A cell written the way it is displayed by hand: x_v = x_{on[v]} + off[v]
/// for every v, and inequalities x_plus - x_minus + c <= 0 over the original
/// variables. All indices 1-based; parameters are named by their variable.
struct RefTerm {
  std::size_t on;
  long long offset;
};
struct RefRow {
  std::size_t plus;
  std::size_t minus;
  long long c;
};

inline SolutionCell reference_cell(const std::vector<RefTerm>& xs, const std::vector<RefRow>& rows) {
  SolutionCell cell;
  for (std::size_t v = 0; v < xs.size(); ++v) cell.assignments[v] = {xs[v].on - 1, Rational(xs[v].offset)};
  for (const RefRow& r : rows) {
    const CellAssignment& p = cell.assignments.at(r.plus - 1);
    const CellAssignment& m = cell.assignments.at(r.minus - 1);
    cell.constraints.push_back(Constraint::leq(p.param, m.param, p.offset - m.offset + Rational(r.c)));
  }
  sort_canonical(cell.constraints);
  return cell;
}

struct Instance {
  Matrix a;
  Matrix b;
};

inline Instance running() {
  return {mat({{3, 7, -1, NI}, {6, 7, NI, NI}, {1, 0, 1, NI}}),
          mat({{NI, NI, NI, 8}, {NI, NI, 5, 1}, {1, 0, 1, 2}})};
}

inline Instance inconsistent_instance() {
  return {mat({{3, 7, -1, NI}, {6, 7, NI, NI}, {-9, 0, 0, NI}}),
          mat({{NI, NI, NI, 8}, {NI, NI, 5, 1}, {-9, 0, NI, -4}})};
}

inline Instance diagonal_instance() {
  return {mat({{1, 3, NI}, {5, 0, NI}, {NI, 3, NI}}), mat({{NI, NI, 3}, {5, 0, 2}, {3, NI, 2}})};
}

inline Instance wide_instance() {
  return {mat({{NI, NI, NI, 0, 4, 2, 6}, {NI, 5, 6, NI, NI, NI, 2}}),
          mat({{0, 1, 5, NI, NI, NI, NI}, {3, NI, NI, 0, 2, 4, NI}})};
}

/// A 2x3 maximum matrix with m_13 = -inf and a chosen second row.
inline Matrix non_real_max(const Scalar& m21, const Scalar& m22) { return mat({{1, 1, NI}, {m21, m22, 0}}); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture(const std::string& name) { return read_file(std::string(TROPSYS_FIXTURE_DIR) + "/" + name); }

/// Small deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long long integer(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Scalar pick(const std::vector<Scalar>& values) { return values[index(0, values.size() - 1)]; }

  Matrix matrix(std::size_t m, std::size_t n, const std::vector<Scalar>& values) {
    Matrix out(m, n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) out(i, j) = pick(values);
    }
    return out;
  }

  Vector vector(std::size_t n, const std::vector<Scalar>& values) {
    Vector out(n);
    for (auto& s : out) s = pick(values);
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<Scalar> small_entries() { return {NI, 0, 1, 2}; }

}  // namespace th
