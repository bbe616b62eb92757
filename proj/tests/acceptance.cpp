// Acceptance gate: every release-blocking behavior, one [PASS]/[FAIL] line
// each. The oracle pre-validation runs first; nothing else is trusted until
// the brute-force reference agrees with the closed-form projectors.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drsplit/dr.hpp"
#include "drsplit/errors.hpp"
#include "drsplit/linalg.hpp"
#include "drsplit/oracle.hpp"
#include "drsplit/product.hpp"
#include "drsplit/sets.hpp"
#include "helpers.hpp"

using drsplit::ConvexSet;
using drsplit::DrProblem;
using drsplit::DrTrace;
using drsplit::GridSpec;
using drsplit::ProductPoint;
using drsplit::ProductProblem;
using drsplit::SolutionReport;
using drsplit::StopConfig;
using drsplit::Vector;
using testutil::Rng;

namespace {

struct Failure {
  std::string detail;
};

using Check = std::function<std::optional<Failure>()>;

std::uint64_t criterion_seed(int id) {
  return testutil::seed_from_env() ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(id));
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// criterion 9: oracle pre-validation

GridSpec region_around(const ConvexSet& s) {
  const drsplit::Box hint = drsplit::bounding_box_hint(s, 10.0);
  std::vector<double> lo(hint.lower), hi(hint.upper);
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] = std::min(lo[i], -6.0) - 1.0;
    hi[i] = std::max(hi[i], 6.0) + 1.0;
  }
  return GridSpec{Vector(std::move(lo)), Vector(std::move(hi)), 41, 10};
}

double agreement_tol(const ConvexSet& s, const Vector& x, const GridSpec& spec) {
  if (s.is_affine()) {
    const auto a = s.as_affine();
    const int k = static_cast<int>(a.directions.vectors.size());
    if (k == 0) return 1e-12;
    const double radius = drsplit::norm(x - a.anchor) + 1.0;
    const double h = 2.0 * radius / (spec.resolution - 1) * std::pow(0.5, spec.rounds);
    return 2.0 * h * std::sqrt(static_cast<double>(k));
  }
  return 2.0 * drsplit::final_resolution(spec);
}

std::optional<Failure> criterion_oracle() {
  Rng rng(criterion_seed(9));
  for (int variant = 0; variant < 6; ++variant) {
    for (int trial = 0; trial < 100; ++trial) {
      const ConvexSet s = testutil::random_set(rng, variant, 2);
      const GridSpec spec = region_around(s);
      const Vector x = rng.vector(2, -6.0, 6.0);
      const Vector direct = project(s, x);
      const Vector searched = drsplit::oracle_project(s, x, spec);
      const double err = drsplit::norm(searched - direct);
      const double tol = agreement_tol(s, x, spec);
      if (err > tol) {
        return Failure{s.variant_name() + " trial " + std::to_string(trial) +
                       ": search is " + fmt(err) + " from the projector (tol " +
                       fmt(tol) + ")"};
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// criterion 1: line versus epigraph, vertical escape orbit

std::optional<Failure> criterion_escape_orbit() {
  const ConvexSet line = ConvexSet::affine(Vector{0, 0}, {Vector{1, 0}});
  const ConvexSet epi = ConvexSet::epi_abs_plus(1.0);
  for (const double alpha : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
    const DrProblem p{line, epi, Vector{alpha, 0}};
    Vector x = p.start;
    for (int n = 1; n <= 50; ++n) {
      x = drsplit::dr_step(p, x);
      const Vector expected{0.0, static_cast<double>(n)};
      if (drsplit::norm(x - expected) > 1e-9) {
        return Failure{"start " + fmt(alpha) + ": step " + std::to_string(n) +
                       " drifted " + fmt(drsplit::norm(x - expected)) +
                       " from the vertical orbit"};
      }
      const double pb_norm = drsplit::norm(project(epi, x));
      if (std::abs(pb_norm - n) > 1e-9) {
        return Failure{"start " + fmt(alpha) + ": |P_B x_n| = " + fmt(pb_norm) +
                       " at n = " + std::to_string(n)};
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// criterion 2: interval versus origin, integer staircase

std::optional<Failure> criterion_staircase() {
  const ConvexSet interval = ConvexSet::box({1.0}, {2.0});
  const ConvexSet origin = ConvexSet::singleton(Vector{0});
  const DrProblem p{interval, origin, Vector{4}};

  Vector x = p.start;
  for (int n = 1; n <= 30; ++n) {
    x = drsplit::dr_step(p, x);
    const double expected = n == 1 ? 2.0 : 2.0 - n;
    if (std::abs(x[0] - expected) > 1e-12) {
      return Failure{"governing step " + std::to_string(n) + " is " + fmt(x[0]) +
                     ", expected " + fmt(expected)};
    }
    const double shadow = project(interval, x)[0];
    if (n >= 3 && std::abs(shadow - 1.0) > 1e-12) {
      return Failure{"shadow left 1 at step " + std::to_string(n)};
    }
    if (n >= 2) {
      const double shifted = project(interval, Vector{x[0] + n})[0];
      if (std::abs(shifted - 2.0) > 1e-12) {
        return Failure{"shifted projection " + fmt(shifted) + " at step " +
                       std::to_string(n) + ", expected the far endpoint 2"};
      }
    }
  }

  const auto [trace, report] = drsplit::run(p, StopConfig{});
  if (std::abs(report.gap.g[0] - (-1.0)) > 1e-12) {
    return Failure{"gap estimate " + fmt(report.gap.g[0]) + ", expected -1"};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// criteria 3-5: randomized property suites with a designed gap

struct PropertyInstance {
  DrProblem problem;
  Vector true_gap;
  Vector e_member;
  std::vector<Vector> affine_dirs;
  DrTrace trace;
  SolutionReport report;
};

// A = anchor + span(onb), gap and in-span offset chosen orthogonally.
struct AffinePart {
  Vector anchor;
  std::vector<Vector> onb;
  Vector gap;     // orthogonal to the span (zero for consistent instances)
  Vector inspan;  // random element of the span
};

AffinePart draw_affine_part(Rng& rng, int d, bool coordinate_aligned) {
  AffinePart part{rng.vector(d, -3.0, 3.0), {}, Vector::zeros(d), Vector::zeros(d)};
  if (coordinate_aligned) {
    for (int i = 0; i < d - 1; ++i) {
      if (rng.unit() < 0.5) {
        std::vector<double> e(static_cast<std::size_t>(d), 0.0);
        e[static_cast<std::size_t>(i)] = 1.0;
        part.onb.push_back(Vector(std::move(e)));
      }
    }
  } else {
    const int k = rng.integer(0, d - 1);
    std::vector<Vector> raw;
    for (int i = 0; i < k; ++i) raw.push_back(rng.vector(d, -1.0, 1.0));
    part.onb = drsplit::orthonormalize_span(raw, 1e-8);
  }
  if (rng.unit() >= 0.3) {
    const Vector r = rng.vector(d, -2.0, 2.0);
    const Vector g = r - drsplit::project_span(part.onb, r);
    if (drsplit::norm(g) > 1e-6) part.gap = g;
  }
  for (const Vector& u : part.onb) part.inspan = part.inspan + rng.uniform(-2.0, 2.0) * u;
  return part;
}

// Partner set at displacement `gap` from the affine set, nearest approach by
// construction. `toward` is +1 when the partner sits past anchor + inspan +
// gap (affine set first), -1 for the mirrored layout.
ConvexSet make_partner(Rng& rng, const AffinePart& part, int kind, double toward,
                       const Vector& contact) {
  const int d = part.anchor.dim();
  const double gn = drsplit::norm(part.gap);
  switch (kind) {
    case 0: {  // box, requires a coordinate-aligned affine part
      std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) {
        const double w = rng.uniform(0.25, 2.0);
        const double c = contact[i];
        const double g = part.gap[i] * toward;
        if (g > 0.0) {
          lo[static_cast<std::size_t>(i)] = c;
          hi[static_cast<std::size_t>(i)] = c + w;
        } else if (g < 0.0) {
          lo[static_cast<std::size_t>(i)] = c - w;
          hi[static_cast<std::size_t>(i)] = c;
        } else {
          lo[static_cast<std::size_t>(i)] = c - w;
          hi[static_cast<std::size_t>(i)] = c + w;
        }
      }
      return ConvexSet::box(std::move(lo), std::move(hi));
    }
    case 1: {  // ball
      const double rho = rng.uniform(0.3, 2.0);
      if (gn > 0.0) {
        const Vector dir = (toward / gn) * part.gap;
        return ConvexSet::ball(contact + rho * dir, rho);
      }
      Vector v = rng.vector(d, -1.0, 1.0);
      if (drsplit::norm(v) < 1e-6) v = Vector::zeros(d);
      const double scale = drsplit::norm(v) > 0.0
                               ? rng.uniform(0.0, 0.8) * rho / drsplit::norm(v)
                               : 0.0;
      return ConvexSet::ball(contact + scale * v, rho);
    }
    case 2: {  // halfspace
      if (gn > 0.0) {
        const Vector n = (-toward / gn) * part.gap;
        return ConvexSet::halfspace(n, drsplit::inner(n, contact));
      }
      for (;;) {
        const Vector n = rng.vector(d, -1.0, 1.0);
        if (drsplit::norm(n) < 0.5) continue;
        return ConvexSet::halfspace(n, drsplit::inner(n, contact) + rng.uniform(0.1, 2.0));
      }
    }
    default:  // singleton
      return ConvexSet::singleton(contact);
  }
}

PropertyInstance run_property_instance(Rng& rng, int kind, bool affine_first) {
  const int d = rng.integer(1, 4);
  const AffinePart part = draw_affine_part(rng, d, kind == 0);
  const ConvexSet affine = ConvexSet::affine(part.anchor, part.onb);
  const Vector start = rng.vector(d, -4.0, 4.0);

  // partner touches the affine set at `contact`, displaced by the designed gap
  const double side = affine_first ? +1.0 : -1.0;
  const Vector contact = part.anchor + part.inspan + side * part.gap;
  const ConvexSet partner = make_partner(rng, part, kind, side, contact);
  const DrProblem problem = affine_first ? DrProblem{affine, partner, start}
                                         : DrProblem{partner, affine, start};
  const Vector e_member = affine_first ? part.anchor + part.inspan : contact;

  StopConfig cfg;
  cfg.max_iter = 200000;
  cfg.tol = 1e-11;
  cfg.window = 20;
  auto [trace, report] = drsplit::run(problem, cfg);
  return PropertyInstance{problem,          part.gap,         e_member,
                          part.onb,         std::move(trace), std::move(report)};
}

std::optional<Failure> window_and_membership(const PropertyInstance& inst, int index) {
  const auto& records = inst.trace.records;
  if (records.size() < 2) return Failure{"instance " + std::to_string(index) + ": no trace"};

  const std::size_t window = std::min<std::size_t>(11, records.size());
  double diameter = 0.0;
  for (std::size_t i = records.size() - window; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      diameter = std::max(diameter,
                          drsplit::norm(records[i].shadow_a - records[j].shadow_a));
    }
  }
  if (diameter >= 1e-8) {
    return Failure{"instance " + std::to_string(index) + ": shadow window diameter " +
                   fmt(diameter)};
  }

  const Vector& limit = inst.report.shadow_limit;
  const double in_a = distance(inst.problem.set_a, limit);
  const double in_shifted_b =
      distance(translate(inst.problem.set_b, -inst.true_gap), limit);
  if (in_a > 1e-6 || in_shifted_b > 1e-6) {
    return Failure{"instance " + std::to_string(index) + ": limit misses by " +
                   fmt(std::max(in_a, in_shifted_b))};
  }
  return std::nullopt;
}

std::optional<Failure> criterion_affine_first(std::vector<PropertyInstance>& out) {
  Rng rng(criterion_seed(3));
  for (int i = 0; i < 50; ++i) {
    out.push_back(run_property_instance(rng, i % 4, true));
    if (auto f = window_and_membership(out.back(), i)) return f;
  }
  return std::nullopt;
}

std::optional<Failure> criterion_affine_second(std::vector<PropertyInstance>& out) {
  Rng rng(criterion_seed(4));
  for (int i = 0; i < 50; ++i) {
    out.push_back(run_property_instance(rng, i % 4, false));
    const PropertyInstance& inst = out.back();
    if (auto f = window_and_membership(inst, i)) return f;

    const auto& records = inst.trace.records;
    const std::size_t window = std::min<std::size_t>(11, records.size());
    double diameter = 0.0;
    for (std::size_t a = records.size() - window; a < records.size(); ++a) {
      for (std::size_t b = a + 1; b < records.size(); ++b) {
        diameter = std::max(diameter,
                            drsplit::norm(records[a].shadow_b - records[b].shadow_b));
      }
    }
    if (diameter >= 1e-8) {
      return Failure{"instance " + std::to_string(i) + ": B-shadow window diameter " +
                     fmt(diameter)};
    }

    const Vector& sb = records.back().shadow_b;
    const double in_f_a = distance(translate(inst.problem.set_a, inst.true_gap), sb);
    const double in_f_b = distance(inst.problem.set_b, sb);
    if (in_f_a > 1e-6 || in_f_b > 1e-6) {
      return Failure{"instance " + std::to_string(i) + ": B-shadow limit misses F by " +
                     fmt(std::max(in_f_a, in_f_b))};
    }

    const Vector diff = records.back().shadow_b - records.back().shadow_a;
    const double mismatch = drsplit::norm(diff - inst.true_gap);
    if (mismatch > 1e-6) {
      return Failure{"instance " + std::to_string(i) + ": shadow difference is " +
                     fmt(mismatch) + " from the designed gap"};
    }
  }
  return std::nullopt;
}

std::optional<Failure> criterion_gap_invariants(const std::vector<PropertyInstance>& all) {
  for (std::size_t i = 0; i < all.size(); ++i) {
    const PropertyInstance& inst = all[i];
    for (const Vector& dir : inst.affine_dirs) {
      const double along = std::abs(drsplit::inner(inst.report.gap.g, dir));
      if (along > 1e-6) {
        return Failure{"instance " + std::to_string(i) + ": gap leans " + fmt(along) +
                       " along an affine direction"};
      }
    }
    const std::vector<Vector> shifted =
        drsplit::shifted_governing(inst.trace, inst.true_gap);
    if (!drsplit::fejer_check(shifted, inst.e_member, 1e-9)) {
      return Failure{"instance " + std::to_string(i) +
                     ": shifted governing sequence is not Fejer monotone"};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// criterion 6: planar three-set least squares

std::optional<Failure> criterion_three_sets() {
  const ProductProblem p{{ConvexSet::box({-3.0, -1.0}, {-1.0, 1.0}),
                          ConvexSet::ball(Vector{3, 0}, 1.0),
                          ConvexSet::halfspace(Vector{0, -1}, -3.0)}};
  const auto [trace, report] =
      drsplit::spingarn_solve(p, drsplit::replicate(Vector{0, 0}, 3), StopConfig{});

  const GridSpec spec{Vector{-5, -5}, Vector{5, 5}, 41, 14};
  const auto [xo, vo] = drsplit::oracle_least_squares(p, spec);
  const double pos_err = drsplit::norm(report.solution - xo);
  if (pos_err > 1e-3) {
    return Failure{"consensus sits " + fmt(pos_err) + " from the reference minimizer"};
  }
  const double val_err = std::abs(report.objective - vo);
  if (val_err > 1e-3) {
    return Failure{"objective differs from the reference by " + fmt(val_err)};
  }

  Vector sum = Vector::zeros(2);
  for (const Vector& g : report.per_set_gaps) sum = sum + g;
  if (drsplit::norm(sum) > 1e-6) {
    return Failure{"per-set displacements sum to " + fmt(drsplit::norm(sum))};
  }
  if (!drsplit::gap_minimality_check(p, report.per_set_gaps, 1000,
                                     testutil::seed_from_env())) {
    return Failure{"a sampled displacement tuple beats the reported one"};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// criterion 7: partial inverses track the splitting orbit

std::optional<Failure> criterion_partial_inverses() {
  using drsplit::MpiState;
  struct Case {
    const char* name;
    ProductProblem problem;
    MpiState state;
  };
  const std::vector<Case> cases = {
      {"consistent intervals",
       ProductProblem{{ConvexSet::box({0.0}, {2.0}), ConvexSet::box({1.0}, {3.0})}},
       MpiState(drsplit::replicate(Vector{0.5}, 2),
                ProductPoint({Vector{0.3}, Vector{-0.3}}))},
      {"consistent disc and square",
       ProductProblem{{ConvexSet::ball(Vector{0, 0}, 2.0),
                       ConvexSet::box({-1.0, -1.0}, {1.0, 1.0})}},
       MpiState(drsplit::replicate(Vector{0.7, 0.2}, 2),
                ProductPoint({Vector{0.1, -0.4}, Vector{-0.1, 0.4}}))},
      {"opposed halfspaces",
       ProductProblem{{ConvexSet::halfspace(Vector{1}, -1.0),
                       ConvexSet::halfspace(Vector{-1}, -1.0)}},
       MpiState(drsplit::replicate(Vector{0}, 2),
                ProductPoint({Vector{0}, Vector{0}}))},
      {"planar three sets",
       ProductProblem{{ConvexSet::box({-3.0, -1.0}, {-1.0, 1.0}),
                       ConvexSet::ball(Vector{3, 0}, 1.0),
                       ConvexSet::halfspace(Vector{0, -1}, -3.0)}},
       MpiState(drsplit::replicate(Vector{0.5, 0.5}, 3),
                ProductPoint({Vector{1, 0}, Vector{0, 1}, Vector{-1, -1}}))},
      {"interval versus origin",
       ProductProblem{{ConvexSet::box({1.0}, {2.0}), ConvexSet::singleton(Vector{0})}},
       MpiState(drsplit::replicate(Vector{4}, 2),
                ProductPoint({Vector{0.5}, Vector{-0.5}}))},
  };
  for (const Case& c : cases) {
    if (!drsplit::mpi_equals_dr(c.problem, c.state, 100, 1e-9)) {
      return Failure{std::string(c.name) + ": recursions disagree within 1e-9"};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// criterion 8: operator identities on random draws

std::optional<Failure> criterion_operator_identities() {
  Rng rng(criterion_seed(8));
  for (int trial = 0; trial < 1000; ++trial) {
    const int va = rng.integer(0, 5);
    const int vb = rng.integer(0, 5);
    const int d = (va == 5 || vb == 5) ? 2 : rng.integer(1, 3);
    const ConvexSet a = testutil::random_set(rng, va, d);
    const ConvexSet b = testutil::random_set(rng, vb, d);
    const DrProblem p{a, b, Vector::zeros(d)};
    const Vector x = rng.vector(d, -6.0, 6.0);
    const Vector y = rng.vector(d, -6.0, 6.0);

    // the two algebraic forms of the splitting operator
    const Vector tx = drsplit::dr_step(p, x);
    const Vector via_reflectors = 0.5 * (x + reflect(b, reflect(a, x)));
    if (drsplit::norm(tx - via_reflectors) > 1e-12) {
      return Failure{"trial " + std::to_string(trial) + ": operator forms split by " +
                     fmt(drsplit::norm(tx - via_reflectors))};
    }

    const Vector ty = drsplit::dr_step(p, y);
    const double lhs = drsplit::norm(tx - ty) * drsplit::norm(tx - ty) +
                       drsplit::norm((x - tx) - (y - ty)) * drsplit::norm((x - tx) - (y - ty));
    const double rhs = drsplit::norm(x - y) * drsplit::norm(x - y);
    if (lhs > rhs + 1e-9) {
      return Failure{"trial " + std::to_string(trial) +
                     ": splitting operator is not firmly nonexpansive"};
    }

    for (const ConvexSet* s : {&a, &b}) {
      const Vector px = project(*s, x);
      const Vector py = project(*s, y);
      if (drsplit::norm(project(*s, px) - px) > 1e-9) {
        return Failure{"trial " + std::to_string(trial) + ": projector not idempotent on " +
                       s->variant_name()};
      }
      const double plhs = drsplit::norm(px - py) * drsplit::norm(px - py) +
                          drsplit::norm((x - px) - (y - py)) *
                              drsplit::norm((x - px) - (y - py));
      if (plhs > rhs + 1e-9) {
        return Failure{"trial " + std::to_string(trial) +
                       ": projector not firmly nonexpansive on " + s->variant_name()};
      }
      const Vector member = testutil::random_member(rng, *s);
      if (drsplit::inner(x - px, member - px) > 1e-9) {
        return Failure{"trial " + std::to_string(trial) +
                       ": variational inequality fails on " + s->variant_name()};
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

struct Criterion {
  int id;
  const char* label;
  double time_limit;  // seconds, 0 = none
  Check body;
};

}  // namespace

int main() {
  std::vector<PropertyInstance> affine_first_instances;
  std::vector<PropertyInstance> affine_second_instances;

  const std::vector<Criterion> criteria = {
      {9, "oracle pre-validation against the projectors", 0.0, criterion_oracle},
      {1, "vertical escape orbit stays on the axis", 0.1, criterion_escape_orbit},
      {2, "integer staircase with fixed shadow and gap -1", 0.1, criterion_staircase},
      {3, "affine-first randomized feasibility suite", 10.0,
       [&] { return criterion_affine_first(affine_first_instances); }},
      {4, "affine-second randomized suite with B-shadow limits", 10.0,
       [&] { return criterion_affine_second(affine_second_instances); }},
      {5, "gap orthogonality and Fejer monotonicity", 0.0,
       [&]() -> std::optional<Failure> {
         std::vector<PropertyInstance> all;
         for (auto& inst : affine_first_instances) all.push_back(std::move(inst));
         for (auto& inst : affine_second_instances) all.push_back(std::move(inst));
         affine_first_instances.clear();
         affine_second_instances.clear();
         return criterion_gap_invariants(all);
       }},
      {6, "planar three-set least squares versus the reference", 5.0,
       criterion_three_sets},
      {7, "partial-inverse recursion equals the splitting orbit", 2.0,
       criterion_partial_inverses},
      {8, "operator identities on random set pairs", 0.0,
       criterion_operator_identities},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto begin = std::chrono::steady_clock::now();
    std::optional<Failure> failure;
    try {
      failure = c.body();
    } catch (const std::exception& e) {
      failure = Failure{std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    if (!failure && c.time_limit > 0.0 && elapsed > c.time_limit) {
      failure = Failure{"took " + fmt(elapsed) + " s, limit " + fmt(c.time_limit) + " s"};
    }
    if (failure) {
      ++failures;
      std::printf("[FAIL] criterion %d: %s: %s\n", c.id, c.label, failure->detail.c_str());
    } else {
      std::printf("[PASS] criterion %d: %s (%.3f s)\n", c.id, c.label, elapsed);
    }
  }
  return failures == 0 ? 0 : 1;
}
