// Solves a small system, prints its cells and checks a few sampled points.

#include <tropsys/tropsys.hpp>

#include <iostream>

int main() {
  using tropsys::Matrix;
  using tropsys::Scalar;
  const Scalar ninf = Scalar::neg_inf();

  const Matrix a = Matrix::from_rows({{3, 7, -1, ninf}, {6, 7, ninf, ninf}, {1, 0, 1, ninf}});
  const Matrix b = Matrix::from_rows({{ninf, ninf, ninf, 8}, {ninf, ninf, 5, 1}, {1, 0, 1, 2}});

  const tropsys::SolutionSet set = tropsys::solve(a, b);
  std::cout << tropsys::emit_text(set);

  for (std::size_t c = 0; c < set.cells.size(); ++c) {
    std::cout << "\nsamples from cell " << c + 1 << ":\n";
    for (const auto& x : tropsys::sample_cell(set.cells[c], 4, 7)) {
      std::cout << " ";
      for (const Scalar& s : x) std::cout << " " << s;
      std::cout << (tropsys::verify_solution(a, b, x) ? "  ok" : "  NOT A SOLUTION") << "\n";
    }
  }
}
