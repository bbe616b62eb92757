#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drsplit/sets.hpp"

namespace drsplit {

// Ordered set pair with a starting point; the operator is Id - P_A + P_B R_A.
struct DrProblem {
  ConvexSet set_a;
  ConvexSet set_b;
  Vector start;
};

struct StopConfig {
  long max_iter = 100000;
  double tol = 1e-10;        // shadow step norm threshold
  int window = 10;           // consecutive quiet steps required
  int trace_stride = 1;      // keep every k-th record (1 = full trace)
  double membership_tol = 1e-6;
};

enum class Status { Converged, MaxIter, DivergingGoverning };
std::string to_string(Status s);

// One retained iterate. `residual` is the norm of the step into this iterate
// (0 at n = 0); `gap_diff` is the forward difference T^{n+1}x - T^n x, filled
// for the final record by one extra operator evaluation.
struct TraceRecord {
  long n = 0;
  Vector governing;
  Vector shadow_a;
  Vector shadow_b;
  double residual = 0.0;
  Vector gap_diff;
};

struct DrTrace {
  std::vector<TraceRecord> records;
};

enum class GapMethod { IterateDifference, ShadowDifference, ExactAffine };
std::string to_string(GapMethod m);

// Estimated minimal displacement from A to B. `heuristic` marks a
// shadow-difference estimate taken without an affine B, where its limit
// theory does not apply.
struct GapEstimate {
  Vector g;
  GapMethod method = GapMethod::IterateDifference;
  bool converged = false;
  double residual = 0.0;
  bool heuristic = false;
};

struct SolutionReport {
  Vector shadow_limit;
  GapEstimate gap;
  bool membership_e = false;  // shadow_limit in A and shadow_limit + g in B
  bool membership_f = false;  // same checks viewed from shadow_limit + g
  // Set only when B is affine: whether the B-shadow stabilized with limit in
  // F. Left empty otherwise; no claim is made for non-affine B.
  std::optional<bool> shadow_b_in_f;
  long iterations = 0;
  Status status = Status::MaxIter;
};

// One application of Id - P_A + P_B R_A.
Vector dr_step(const DrProblem& p, const Vector& x);

// Iterates from p.start until the A-shadow step norm stays below cfg.tol for
// cfg.window consecutive steps or max_iter is reached.
std::pair<DrTrace, SolutionReport> run(const DrProblem& p, const StopConfig& cfg);

// Gap estimate from a recorded trace. Picks shadow-difference when B is
// affine, iterate-difference otherwise; an explicit method overrides.
GapEstimate estimate_gap(const DrTrace& trace, const DrProblem& p,
                         double tol = 1e-8, int window = 10,
                         std::optional<GapMethod> method = std::nullopt);

// True iff ||x_{n+1} - c|| <= ||x_n - c|| + tol for every consecutive pair.
bool fejer_check(const std::vector<Vector>& points, const Vector& c, double tol);

// [governing_n - n g] for every retained record (using each record's true n).
std::vector<Vector> shifted_governing(const DrTrace& trace, const Vector& g);

// Least-norm vector of B - A when both sets are affine subspaces.
Vector exact_gap_affine(const DrProblem& p);

// Projection callback used by the generic iteration core.
using ProjectFn = std::function<Vector(const Vector&)>;

struct CoreResult {
  DrTrace trace;
  Status status = Status::MaxIter;
  long iterations = 0;
};

// Douglas-Rachford orbit for arbitrary projector pairs; the set-based run()
// and the product-space solver both drive this loop.
CoreResult iterate_core(const ProjectFn& project_a, const ProjectFn& project_b,
                        const Vector& start, const StopConfig& cfg);

}  // namespace drsplit
