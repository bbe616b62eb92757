#include "drsplit/oracle.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <variant>

namespace drsplit {

namespace {

// Exact membership test straight from the defining inequalities, so the
// search never leans on the projectors it is meant to validate.
bool inside(const ConvexSet& s, const Vector& z) {
  struct Visitor {
    const Vector& z;
    bool operator()(const Halfspace& h) const { return inner(h.normal, z) <= h.offset; }
    bool operator()(const Box& b) const {
      for (std::size_t i = 0; i < b.lower.size(); ++i) {
        const double v = z[static_cast<int>(i)];
        if (v < b.lower[i] || v > b.upper[i]) return false;
      }
      return true;
    }
    bool operator()(const Ball& b) const { return norm(z - b.center) <= b.radius; }
    bool operator()(const EpiAbsPlus& e) const {
      return z[1] - e.apex[1] >= std::abs(z[0] - e.apex[0]);
    }
    bool operator()(const AffineSubspace&) const {
      throw UsageError("inside: affine sets take the coefficient-space path");
    }
    bool operator()(const Singleton&) const {
      throw UsageError("inside: singletons take the direct path");
    }
  };
  return std::visit(Visitor{z}, s.payload());
}

// First point of the segment [x, z] belonging to s, by bisection. Assumes
// x outside and z inside; convexity makes the crossing unique.
Vector segment_entry(const ConvexSet& s, const Vector& x, const Vector& z) {
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (inside(s, x + mid * (z - x))) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return x + hi * (z - x);
}

void validate_spec(const GridSpec& spec, int dim) {
  if (spec.lower.dim() != dim || spec.upper.dim() != dim) {
    throw UsageError("GridSpec: bounds dimension mismatch");
  }
  for (int i = 0; i < dim; ++i) {
    if (!(spec.lower[i] < spec.upper[i])) {
      throw UsageError("GridSpec: lower must be strictly below upper");
    }
  }
  if (spec.resolution < 3) throw UsageError("GridSpec: resolution must be >= 3");
  if (spec.rounds < 0) throw UsageError("GridSpec: rounds must be >= 0");
}

// Minimizes `score` over refined grids on [lo, hi], visiting candidates in
// lexicographic index order and keeping the first minimum. `admit` filters
// grid points; the incumbent is re-admitted each round so a round is never
// empty once any feasible point has been seen.
std::optional<Vector> grid_search(std::vector<double> lo, std::vector<double> hi,
                                  int resolution, int rounds,
                                  const std::function<bool(const Vector&)>& admit,
                                  const std::function<double(const Vector&)>& score) {
  const int k = static_cast<int>(lo.size());
  std::optional<Vector> best;
  double best_score = 0.0;

  for (int round = 0; round <= rounds; ++round) {
    if (round > 0) {
      if (!best) break;
      for (int i = 0; i < k; ++i) {
        const double quarter = (hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)]) / 4.0;
        const double center = (*best)[i];
        lo[static_cast<std::size_t>(i)] = center - quarter;
        hi[static_cast<std::size_t>(i)] = center + quarter;
      }
    }

    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    while (true) {
      std::vector<double> entries(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) {
        const double t = static_cast<double>(idx[static_cast<std::size_t>(i)]) /
                         static_cast<double>(resolution - 1);
        entries[static_cast<std::size_t>(i)] =
            lo[static_cast<std::size_t>(i)] +
            t * (hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)]);
      }
      const Vector candidate{std::move(entries)};
      if (admit(candidate)) {
        const double s = score(candidate);
        if (!best || s < best_score) {
          best = candidate;
          best_score = s;
        }
      }
      int axis = k - 1;
      while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] == resolution) {
        idx[static_cast<std::size_t>(axis)] = 0;
        --axis;
      }
      if (axis < 0) break;
    }
  }
  return best;
}

}  // namespace

double final_resolution(const GridSpec& spec) {
  validate_spec(spec, spec.lower.dim());
  double h = 0.0;
  for (int i = 0; i < spec.lower.dim(); ++i) {
    h = std::max(h, (spec.upper[i] - spec.lower[i]) / (spec.resolution - 1));
  }
  return h * std::pow(0.5, spec.rounds);
}

Vector oracle_project(const ConvexSet& s, const Vector& x, const GridSpec& spec) {
  validate_spec(spec, s.dim());
  if (x.dim() != s.dim()) throw UsageError("oracle_project: point dimension mismatch");

  if (const auto* pt = std::get_if<Singleton>(&s.payload())) return pt->point;

  if (s.is_affine()) {
    // Search the coefficient space of the orthonormal basis; every candidate
    // is a member by construction. Coefficients of the true projection are
    // bounded by |x - anchor|.
    const AffineSubspace a = s.as_affine();
    const int k = static_cast<int>(a.directions.size());
    if (k == 0) return a.anchor;
    const double radius = norm(x - a.anchor) + 1.0;
    auto lifted = [&](const Vector& t) {
      Vector p = a.anchor;
      for (int i = 0; i < k; ++i) p = p + t[i] * a.directions.vectors[static_cast<std::size_t>(i)];
      return p;
    };
    std::optional<Vector> best = grid_search(
        std::vector<double>(static_cast<std::size_t>(k), -radius),
        std::vector<double>(static_cast<std::size_t>(k), radius), spec.resolution,
        spec.rounds, [](const Vector&) { return true; },
        [&](const Vector& t) { return norm(lifted(t) - x); });
    return lifted(*best);
  }

  if (inside(s, x)) return x;

  // Scoring a grid point by the distance to its segment entry, rather than
  // to the point itself, keeps the error proportional to the grid pitch;
  // raw member-point scoring drifts along the boundary when the query is
  // far away. A candidate can only beat the incumbent when the point at the
  // incumbent's distance along its segment is already a member, which costs
  // one test instead of a bisection.
  double cutoff = std::numeric_limits<double>::infinity();
  std::optional<Vector> best = grid_search(
      spec.lower.entries(), spec.upper.entries(), spec.resolution, spec.rounds,
      [&](const Vector& z) { return inside(s, z); },
      [&](const Vector& z) {
        const double len = norm(z - x);
        if (cutoff < len && !inside(s, x + (cutoff / len) * (z - x))) {
          return cutoff + len;
        }
        const double score = norm(segment_entry(s, x, z) - x);
        cutoff = std::min(cutoff, score);
        return score;
      });
  if (!best) throw OracleMissError("oracle_project: grid contains no member of the set");
  return segment_entry(s, x, *best);
}

std::pair<Vector, double> oracle_least_squares(const ProductProblem& p,
                                               const GridSpec& spec) {
  const int d = problem_dim(p);
  validate_spec(spec, d);
  std::optional<Vector> best = grid_search(
      spec.lower.entries(), spec.upper.entries(), spec.resolution, spec.rounds,
      [](const Vector&) { return true; },
      [&](const Vector& z) { return least_squares_objective(p, z); });
  return {*best, least_squares_objective(p, *best)};
}

}  // namespace drsplit
