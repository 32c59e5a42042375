// Command-line solver for two-sided max-plus systems.
//
//   tropsys [file] [--format text|json] [--check grid=0,1,2] [--dedupe]
//           [--seed N] [--stats] [--problem eq|leq|eqb|hetero|affine]
//
// Exit codes: 0 success, 1 bad input, 2 cross-validation failure.

#include <tropsys/tropsys.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

namespace {

using namespace tropsys;

GridSpec parse_grid(const std::string& spec) {
  const std::string prefix = "grid=";
  if (spec.rfind(prefix, 0) != 0) throw DomainError("--check expects grid=<v1,v2,...> or grid=<lo>..<hi>");
  const std::string body = spec.substr(prefix.size());
  GridSpec grid;
  if (auto dots = body.find(".."); dots != std::string::npos) {
    auto lo = parse_rational(body.substr(0, dots));
    auto hi = parse_rational(body.substr(dots + 2));
    if (!lo || !hi || denominator(*lo) != 1 || denominator(*hi) != 1) {
      throw DomainError("grid range bounds must be integers: " + body);
    }
    for (Rational v = *lo; v <= *hi; v += 1) grid.values.push_back(v);
  } else {
    std::istringstream in(body);
    for (std::string tok; std::getline(in, tok, ',');) {
      auto v = parse_rational(tok);
      if (!v) throw DomainError("bad grid value '" + tok + "'");
      grid.values.push_back(*v);
    }
  }
  grid.validate();
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for two-sided max-plus linear systems"};
  std::string input;
  std::string format = "text";
  std::string check;
  std::string problem;
  bool dedupe = false;
  bool want_stats = false;
  std::uint64_t seed = 0;
  app.add_option("input", input, "Instance file (stdin when omitted or '-')");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--check", check, "Cross-validate against brute force: grid=<v1,v2,...> or grid=<lo>..<hi>");
  app.add_flag("--dedupe", dedupe, "Drop cells that repeat an earlier cell exactly");
  app.add_option("--seed", seed, "Seed for cell sampling during --check");
  app.add_flag("--stats", want_stats, "Print one JSON line of solver statistics to stderr");
  app.add_option("--problem", problem, "Override the file's problem kind")
      ->check(CLI::IsMember({"eq", "leq", "eqb", "hetero", "affine"}));
  CLI11_PARSE(app, argc, argv);

  std::string text;
  if (input.empty() || input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(input);
    if (!in) {
      std::cerr << "error: cannot open " << input << "\n";
      return 1;
    }
    text.assign(std::istreambuf_iterator<char>(in), {});
  }

  InstanceFile file;
  try {
    file = parse_instance(text);
    if (!problem.empty()) {
      const ProblemKind kind = *parse_problem_kind(problem);
      if (kind == ProblemKind::Hetero || file.problem == ProblemKind::Hetero) {
        throw ParseError(1, "--problem cannot convert to or from hetero");
      }
      // Re-read the blocks under the requested kind so shapes are checked.
      InstanceFile base = file;
      base.problem = kind;
      for (auto it = base.matrices.begin(); it != base.matrices.end();) {
        const auto need = detail::required_blocks(kind);
        const bool used = std::any_of(need.begin(), need.end(), [&](const auto& s) { return s.name == it->first; });
        it = used ? std::next(it) : base.matrices.erase(it);
      }
      for (auto it = base.vectors.begin(); it != base.vectors.end();) {
        const auto need = detail::required_blocks(kind);
        const bool used = std::any_of(need.begin(), need.end(), [&](const auto& s) { return s.name == it->first; });
        it = used ? std::next(it) : base.vectors.erase(it);
      }
      file = parse_instance(write_instance(base));
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range&) {
    std::cerr << "parse error: --problem " << problem << " needs blocks the file does not have\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  SolveStats stats;
  SolvedInstance r;
  try {
    r = solve_instance(file, &stats);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  int status = 0;
  if (!check.empty()) {
    try {
      const GridSpec grid = parse_grid(check);
      // The oracle runs on the homogeneous system actually solved; for the
      // affine kinds that is before z is pinned.
      const SolutionSet homo = file.problem == ProblemKind::Affine || file.problem == ProblemKind::EqB
                                   ? solve(r.a, r.b)
                                   : r.set;
      const CrossValidationReport rep = cross_validate(r.a, r.b, grid, homo, 100, seed);
      std::cerr << "check: " << rep.grid_points << " grid points, " << rep.oracle_solutions << " oracle solutions, "
                << rep.samples << " samples, " << rep.missed.size() << " missed, " << rep.invalid.size()
                << " invalid, " << rep.spurious.size() << " spurious\n";
      for (const Vector& x : rep.missed) {
        std::cerr << "  missed:";
        for (const Scalar& s : x) std::cerr << " " << s;
        std::cerr << "\n";
      }
      for (const auto& bad : rep.invalid) {
        std::cerr << "  invalid sample in cell " << bad.cell + 1 << ":";
        for (const Scalar& s : bad.point) std::cerr << " " << s;
        std::cerr << "\n";
      }
      for (const auto& bad : rep.spurious) {
        std::cerr << "  non-solution in cell " << bad.cell + 1 << ":";
        for (const Scalar& s : bad.point) std::cerr << " " << s;
        std::cerr << "\n";
      }
      if (!rep.ok()) status = 2;
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }

  if (dedupe) dedupe_cells(r.set);
  std::cout << (format == "json" ? emit_json(r.set, r.ctx) : emit_text(r.set, r.ctx));

  if (want_stats) {
    nlohmann::ordered_json s;
    s["p"] = r.set.win_sequence_count;
    s["nodes"] = stats.enumeration_nodes;
    s["branches"] = stats.branches;
    s["sequences"] = stats.sequences.size();
    s["cells"] = r.set.cells.size();
    s["preprocess_ms"] = stats.preprocess_ms;
    s["enumerate_ms"] = stats.enumerate_ms;
    s["cells_ms"] = stats.cells_ms;
    std::cerr << s.dump() << "\n";
  }
  return status;
}
