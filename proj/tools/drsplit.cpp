#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "drsplit/oracle.hpp"
#include "drsplit/plot.hpp"
#include "drsplit/problem_io.hpp"
#include "drsplit/product.hpp"
#include "drsplit/trace_io.hpp"

namespace {

using drsplit::Box;
using drsplit::ConvexSet;
using drsplit::GridSpec;
using drsplit::ProblemFile;
using drsplit::Status;
using drsplit::StopConfig;
using drsplit::Vector;
using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw drsplit::IoError("cannot open problem file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw drsplit::IoError("failed while reading problem file: " + path);
  return buf.str();
}

std::uint64_t env_seed() {
  const char* s = std::getenv("DRSPLIT_SEED");
  return s ? std::strtoull(s, nullptr, 10) : 0;
}

int status_exit_code(Status s) {
  // A drifting governing sequence is still a successful run: the shadow
  // converged and the report is meaningful.
  return s == Status::MaxIter ? 2 : 0;
}

json vec_json(const Vector& v) { return json(v.entries()); }

// Search region for the oracle subcommand: merged set hints, inflated by
// half the region diagonal.
GridSpec oracle_region(const std::vector<ConvexSet>& sets, int resolution, int rounds) {
  Box region = bounding_box_hint(sets.front());
  for (std::size_t j = 1; j < sets.size(); ++j) {
    const Box hint = bounding_box_hint(sets[j]);
    for (std::size_t i = 0; i < region.lower.size(); ++i) {
      region.lower[i] = std::min(region.lower[i], hint.lower[i]);
      region.upper[i] = std::max(region.upper[i], hint.upper[i]);
    }
  }
  double diagonal = 0.0;
  for (std::size_t i = 0; i < region.lower.size(); ++i) {
    const double w = region.upper[i] - region.lower[i];
    diagonal += w * w;
  }
  diagonal = std::max(1.0, std::sqrt(diagonal));
  for (std::size_t i = 0; i < region.lower.size(); ++i) {
    region.lower[i] -= diagonal / 2.0;
    region.upper[i] += diagonal / 2.0;
  }
  return GridSpec{Vector(region.lower), Vector(region.upper), resolution, rounds};
}

struct CommonFlags {
  std::string problem_path;
  std::string trace_path;
  std::string plot_path;
  long max_iter = 0;
  double tol = 0.0;
  int window = 0;
  CLI::Option* max_iter_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* window_opt = nullptr;

  void attach(CLI::App* cmd, bool with_outputs) {
    cmd->add_option("problem", problem_path, "problem file (JSON)")->required();
    if (with_outputs) {
      cmd->add_option("--trace", trace_path, "write the iteration trace CSV here");
      cmd->add_option("--plot", plot_path, "write a static SVG plot here (planar only)");
    }
    max_iter_opt = cmd->add_option("--max-iter", max_iter, "iteration cap (overrides the file)");
    tol_opt = cmd->add_option("--tol", tol, "shadow-step tolerance (overrides the file)");
    window_opt = cmd->add_option("--window", window, "quiet-window length (overrides the file)");
  }

  StopConfig merge(const StopConfig& base) const {
    StopConfig cfg = base;
    if (max_iter_opt->count() > 0) cfg.max_iter = max_iter;
    if (tol_opt->count() > 0) cfg.tol = tol;
    if (window_opt->count() > 0) cfg.window = window;
    return cfg;
  }
};

int run_two_set(const ProblemFile& file, const CommonFlags& flags) {
  const drsplit::DrProblem problem = to_dr_problem(file);
  const StopConfig cfg = flags.merge(file.stop);
  auto [trace, report] = drsplit::run(problem, cfg);
  std::cerr << "two-set solve: " << to_string(report.status) << " after "
            << report.iterations << " iterations\n";

  if (!flags.trace_path.empty()) drsplit::write_trace_csv(trace, flags.trace_path);
  if (!flags.plot_path.empty()) {
    drsplit::write_plot_svg(drsplit::render_plot_svg(problem, trace, report.gap.g),
                            flags.plot_path);
  }

  const Vector& s = report.shadow_limit;
  const double da = distance(problem.set_a, s);
  const double db = distance(problem.set_b, s);
  json summary{{"status", to_string(report.status)},
               {"iterations", report.iterations},
               {"shadow_limit", vec_json(s)},
               {"gap", vec_json(report.gap.g)},
               {"gap_method", to_string(report.gap.method)},
               {"gap_converged", report.gap.converged},
               {"gap_heuristic", report.gap.heuristic},
               {"objective", da * da + db * db},
               {"membership_e", report.membership_e},
               {"membership_f", report.membership_f},
               {"shadow_b_in_f", report.shadow_b_in_f ? json(*report.shadow_b_in_f)
                                                      : json(nullptr)}};
  std::cout << summary.dump() << "\n";
  return status_exit_code(report.status);
}

int run_spingarn(const ProblemFile& file, const CommonFlags& flags) {
  auto [problem, x0] = to_product(file);
  const StopConfig cfg = flags.merge(file.stop);
  auto [trace, report] = drsplit::spingarn_solve(problem, x0, cfg);
  std::cerr << "spingarn solve: " << to_string(report.status) << " after "
            << report.iterations << " iterations\n";

  if (!flags.trace_path.empty()) drsplit::write_trace_csv(trace, flags.trace_path);
  if (!flags.plot_path.empty()) {
    drsplit::write_plot_svg(drsplit::render_plot_svg(problem, trace, report.per_set_gaps),
                            flags.plot_path);
  }

  json gaps = json::array();
  for (const Vector& g : report.per_set_gaps) gaps.push_back(vec_json(g));
  const bool minimal =
      gap_minimality_check(problem, report.per_set_gaps, 200, env_seed());
  json summary{{"status", to_string(report.status)},
               {"iterations", report.iterations},
               {"shadow_limit", vec_json(report.solution)},
               {"gap", gaps},
               {"objective", report.objective},
               {"gap_minimality", minimal}};
  std::cout << summary.dump() << "\n";
  return status_exit_code(report.status);
}

int run_oracle(const ProblemFile& file, int resolution, int rounds) {
  const drsplit::ProductProblem problem{file.sets};
  const GridSpec spec = oracle_region(file.sets, resolution, rounds);
  auto [argmin, objective] = drsplit::oracle_least_squares(problem, spec);
  std::cerr << "oracle: grid search over " << file.sets.size() << " sets\n";
  json summary{{"oracle_solution", vec_json(argmin)},
               {"oracle_objective", objective},
               {"final_resolution", final_resolution(spec)}};
  std::cout << summary.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Douglas-Rachford convex feasibility solver"};
  app.require_subcommand(1);

  CommonFlags solve_flags;
  CommonFlags spingarn_flags;
  std::string oracle_problem;
  int resolution = 41;
  int rounds = 8;

  CLI::App* solve = app.add_subcommand("solve", "run the solver a problem file selects");
  solve_flags.attach(solve, true);
  CLI::App* spingarn =
      app.add_subcommand("spingarn", "run the product-space solver (spingarn mode only)");
  spingarn_flags.attach(spingarn, true);
  CLI::App* oracle =
      app.add_subcommand("oracle", "brute-force least-squares reference on a problem file");
  oracle->add_option("problem", oracle_problem, "problem file (JSON)")->required();
  oracle->add_option("--resolution", resolution, "grid points per axis");
  oracle->add_option("--rounds", rounds, "refinement rounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (solve->parsed()) {
      const ProblemFile file = drsplit::parse_problem(slurp(solve_flags.problem_path));
      return file.mode == "two-set" ? run_two_set(file, solve_flags)
                                    : run_spingarn(file, solve_flags);
    }
    if (spingarn->parsed()) {
      const ProblemFile file = drsplit::parse_problem(slurp(spingarn_flags.problem_path));
      return run_spingarn(file, spingarn_flags);
    }
    const ProblemFile file = drsplit::parse_problem(slurp(oracle_problem));
    return run_oracle(file, resolution, rounds);
  } catch (const drsplit::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const drsplit::OracleMissError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::runtime_error& e) {
    // ValidationError, UnsupportedError, DegenerateBasisError.
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
