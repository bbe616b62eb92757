#include "drsplit/dr.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace drsplit {

std::string to_string(Status s) {
  switch (s) {
    case Status::Converged: return "converged";
    case Status::MaxIter: return "max-iter";
    case Status::DivergingGoverning: return "diverging-governing";
  }
  return "unknown";
}

std::string to_string(GapMethod m) {
  switch (m) {
    case GapMethod::IterateDifference: return "iterate-difference";
    case GapMethod::ShadowDifference: return "shadow-difference";
    case GapMethod::ExactAffine: return "exact-affine";
  }
  return "unknown";
}

Vector dr_step(const DrProblem& p, const Vector& x) {
  const Vector pa = project(p.set_a, x);
  const Vector pb = project(p.set_b, 2.0 * pa - x);
  return x - pa + pb;
}

CoreResult iterate_core(const ProjectFn& project_a, const ProjectFn& project_b,
                        const Vector& start, const StopConfig& cfg) {
  if (cfg.max_iter < 1) throw UsageError("iterate_core: max_iter must be >= 1");
  if (!(cfg.tol > 0.0)) throw UsageError("iterate_core: tol must be positive");
  if (cfg.window < 1) throw UsageError("iterate_core: window must be >= 1");
  const int stride = std::max(cfg.trace_stride, 1);

  DrTrace trace;
  Vector x = start;
  Vector sa = project_a(x);
  Vector sb = project_b(x);
  double residual_in = 0.0;

  int quiet = 0;
  bool norms_nondecreasing = true;
  std::deque<double> norm_window;  // governing norms, last window+1 iterates
  double prev_norm = norm(x);
  norm_window.push_back(prev_norm);

  long n = 0;
  bool shadow_stopped = false;
  while (n < cfg.max_iter) {
    const Vector ra = 2.0 * sa - x;
    const Vector next = x - sa + project_b(ra);

    if (n % stride == 0) {
      trace.records.push_back(TraceRecord{n, x, sa, sb, residual_in, next - x});
    }

    const Vector next_sa = project_a(next);
    const Vector next_sb = project_b(next);
    const double shadow_step = norm(next_sa - sa);
    const double next_norm = norm(next);

    residual_in = norm(next - x);
    x = next;
    sa = next_sa;
    sb = next_sb;
    ++n;

    if (next_norm < prev_norm - 1e-12) norms_nondecreasing = false;
    prev_norm = next_norm;
    norm_window.push_back(next_norm);
    if (static_cast<int>(norm_window.size()) > cfg.window + 1) norm_window.pop_front();

    quiet = shadow_step <= cfg.tol ? quiet + 1 : 0;
    if (quiet >= cfg.window) {
      shadow_stopped = true;
      break;
    }
  }

  // Final record, with one extra step evaluation for its forward difference.
  const Vector ra = 2.0 * sa - x;
  const Vector beyond = x - sa + project_b(ra);
  trace.records.push_back(TraceRecord{n, x, sa, sb, residual_in, beyond - x});

  Status status = Status::MaxIter;
  if (shadow_stopped) {
    const double trailing_growth = norm_window.back() - norm_window.front();
    const bool governing_drifts = norms_nondecreasing && trailing_growth > 1e-6;
    status = governing_drifts ? Status::DivergingGoverning : Status::Converged;
  }
  return CoreResult{std::move(trace), status, n};
}

namespace {

// Per-record estimate sequence reduced to (last value, max change over the
// trailing window).
GapEstimate finish_estimate(const std::vector<Vector>& estimates, GapMethod method,
                            bool heuristic, double tol, int window) {
  const int count = static_cast<int>(estimates.size());
  double residual = 0.0;
  const int lo = std::max(1, count - window);
  for (int k = lo; k < count; ++k) {
    residual = std::max(residual, norm(estimates[static_cast<std::size_t>(k)] -
                                       estimates[static_cast<std::size_t>(k - 1)]));
  }
  return GapEstimate{estimates.back(), method, residual < tol, residual, heuristic};
}

}  // namespace

GapEstimate estimate_gap(const DrTrace& trace, const DrProblem& p, double tol,
                         int window, std::optional<GapMethod> method) {
  if (trace.records.size() < 2) {
    throw UsageError("estimate_gap: trace must hold at least two iterates");
  }
  const GapMethod m =
      method.value_or(p.set_b.is_affine() ? GapMethod::ShadowDifference
                                          : GapMethod::IterateDifference);
  switch (m) {
    case GapMethod::ExactAffine:
      return GapEstimate{exact_gap_affine(p), GapMethod::ExactAffine, true, 0.0, false};
    case GapMethod::IterateDifference: {
      std::vector<Vector> ests;
      ests.reserve(trace.records.size());
      for (const TraceRecord& r : trace.records) ests.push_back(r.gap_diff);
      return finish_estimate(ests, m, false, tol, window);
    }
    case GapMethod::ShadowDifference: {
      std::vector<Vector> ests;
      ests.reserve(trace.records.size());
      for (const TraceRecord& r : trace.records) ests.push_back(r.shadow_b - r.shadow_a);
      return finish_estimate(ests, m, !p.set_b.is_affine(), tol, window);
    }
  }
  throw UsageError("estimate_gap: unknown method");
}

bool fejer_check(const std::vector<Vector>& points, const Vector& c, double tol) {
  if (points.empty()) throw UsageError("fejer_check: point list must be nonempty");
  double prev = norm(points.front() - c);
  for (std::size_t k = 1; k < points.size(); ++k) {
    const double cur = norm(points[k] - c);
    if (cur > prev + tol) return false;
    prev = cur;
  }
  return true;
}

std::vector<Vector> shifted_governing(const DrTrace& trace, const Vector& g) {
  if (trace.records.empty()) throw UsageError("shifted_governing: trace is empty");
  std::vector<Vector> out;
  out.reserve(trace.records.size());
  for (const TraceRecord& r : trace.records) {
    out.push_back(r.governing - static_cast<double>(r.n) * g);
  }
  return out;
}

Vector exact_gap_affine(const DrProblem& p) {
  if (!p.set_a.is_affine() || !p.set_b.is_affine()) {
    throw UnsupportedError("exact_gap_affine: both sets must be affine subspaces");
  }
  const AffineSubspace a = p.set_a.as_affine();
  const AffineSubspace b = p.set_b.as_affine();
  std::vector<Vector> span = a.directions.vectors;
  span.insert(span.end(), b.directions.vectors.begin(), b.directions.vectors.end());
  const std::vector<Vector> onb = orthonormalize_span(span);
  const Vector w = b.anchor - a.anchor;
  return w - project_span(onb, w);
}

std::pair<DrTrace, SolutionReport> run(const DrProblem& p, const StopConfig& cfg) {
  if (p.set_a.dim() != p.set_b.dim() || p.set_a.dim() != p.start.dim()) {
    throw UsageError("run: set and start dimensions must agree");
  }
  const ConvexSet& a = p.set_a;
  const ConvexSet& b = p.set_b;
  CoreResult core = iterate_core([&](const Vector& x) { return project(a, x); },
                                 [&](const Vector& x) { return project(b, x); },
                                 p.start, cfg);

  GapEstimate gap =
      (a.is_affine() && b.is_affine())
          ? GapEstimate{exact_gap_affine(p), GapMethod::ExactAffine, true, 0.0, false}
          : estimate_gap(core.trace, p, 1e-8, cfg.window);

  const TraceRecord& last = core.trace.records.back();
  const Vector& shadow_limit = last.shadow_a;
  const Vector f_candidate = shadow_limit + gap.g;
  const double mtol = cfg.membership_tol;
  const bool in_a = distance(a, shadow_limit) <= mtol;
  const bool in_b_shifted = distance(translate(b, -gap.g), shadow_limit) <= mtol;
  const bool membership_e = in_a && in_b_shifted;
  const bool membership_f = distance(translate(a, gap.g), f_candidate) <= mtol &&
                            distance(b, f_candidate) <= mtol;

  std::optional<bool> shadow_b_in_f;
  if (b.is_affine()) {
    // Theory supports a converging B-shadow only here; report its limit check.
    bool stable = core.trace.records.size() >= 2;
    const int lo = std::max<int>(1, static_cast<int>(core.trace.records.size()) -
                                        cfg.window);
    for (std::size_t k = static_cast<std::size_t>(lo); k < core.trace.records.size(); ++k) {
      stable = stable && norm(core.trace.records[k].shadow_b -
                              core.trace.records[k - 1].shadow_b) <= 10.0 * cfg.tol;
    }
    const Vector& sb = last.shadow_b;
    shadow_b_in_f = stable && distance(translate(a, gap.g), sb) <= mtol &&
                    distance(b, sb) <= mtol;
  }

  SolutionReport report{shadow_limit, std::move(gap),    membership_e, membership_f,
                        shadow_b_in_f, core.iterations, core.status};
  return {std::move(core.trace), std::move(report)};
}

}  // namespace drsplit
