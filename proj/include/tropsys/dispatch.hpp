#pragma once

#include <tropsys/cell_solver.hpp>
#include <tropsys/instance_io.hpp>
#include <tropsys/reductions.hpp>

#include <tuple>

namespace tropsys {

/// An instance file solved under its problem kind. `a` and `b` are the
/// homogeneous system the solver actually ran on.
struct SolvedInstance {
  Matrix a;
  Matrix b;
  SolutionSet set;
  EmitContext ctx;
};

inline SolvedInstance solve_instance(const InstanceFile& f, SolveStats* stats = nullptr) {
  SolvedInstance r;
  r.ctx.problem = f.problem;
  switch (f.problem) {
    case ProblemKind::Eq:
      r.a = f.matrix('A');
      r.b = f.matrix('B');
      r.set = solve(r.a, r.b, stats);
      break;
    case ProblemKind::Leq:
      std::tie(r.a, r.b) = leq_to_eq(f.matrix('A'), f.matrix('B'));
      r.set = solve(r.a, r.b, stats);
      break;
    case ProblemKind::Hetero: {
      HeteroInstance inst{f.matrix('C'), f.matrix('D')};
      std::tie(r.a, r.b) = hetero_to_homo(inst);
      r.set = solve_hetero(inst, stats);
      r.ctx.y_from = f.n;
      break;
    }
    case ProblemKind::Affine: {
      AffineInstance inst{f.matrix('A'), f.matrix('B'), f.vector('a'), f.vector('b')};
      std::tie(r.a, r.b) = homogenize_affine(inst);
      r.set = solve_affine(inst, stats);
      break;
    }
    case ProblemKind::EqB: {
      const Matrix& a = f.matrix('A');
      const Vector& b = f.vector('b');
      AffineInstance inst{a, Matrix(a.rows(), a.cols()), Vector(a.rows(), Scalar::neg_inf()), b};
      std::tie(r.a, r.b) = homogenize_affine(inst);
      r.set = solve_eq_b(a, b, stats);
      if (a.is_real()) {
        r.ctx.principal = principal_solution(a, b);
        r.ctx.principal_attained = decide_eq_b(a, b).has_value();
      }
      break;
    }
  }
  return r;
}

}  // namespace tropsys
