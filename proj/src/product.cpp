#include "drsplit/product.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace drsplit {

namespace {

void require_uniform(const std::vector<Vector>& blocks, const char* what) {
  if (blocks.empty()) throw UsageError(std::string(what) + ": needs at least one block");
  for (const Vector& b : blocks) {
    if (b.dim() != blocks.front().dim()) {
      throw UsageError(std::string(what) + ": block dimensions differ");
    }
  }
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ProductPoint::ProductPoint(std::vector<Vector> blocks) : blocks_(std::move(blocks)) {
  require_uniform(blocks_, "ProductPoint");
}

ProductPoint replicate(const Vector& v, int count) {
  if (count < 1) throw UsageError("replicate: count must be >= 1");
  return ProductPoint(std::vector<Vector>(static_cast<std::size_t>(count), v));
}

Vector flatten(const ProductPoint& x) {
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(x.count() * x.block_dim()));
  for (const Vector& b : x.blocks()) {
    entries.insert(entries.end(), b.entries().begin(), b.entries().end());
  }
  return Vector(std::move(entries));
}

ProductPoint unflatten(const Vector& x, int count) {
  if (count < 1 || x.dim() % count != 0) {
    throw UsageError("unflatten: dimension is not a multiple of the block count");
  }
  const int d = x.dim() / count;
  std::vector<Vector> blocks;
  blocks.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    std::vector<double> entries(x.entries().begin() + j * d,
                                x.entries().begin() + (j + 1) * d);
    blocks.emplace_back(std::move(entries));
  }
  return ProductPoint(std::move(blocks));
}

ProductPoint operator+(const ProductPoint& u, const ProductPoint& v) {
  if (u.count() != v.count() || u.block_dim() != v.block_dim()) {
    throw UsageError("ProductPoint sum: shape mismatch");
  }
  std::vector<Vector> blocks;
  blocks.reserve(static_cast<std::size_t>(u.count()));
  for (int j = 0; j < u.count(); ++j) blocks.push_back(u.block(j) + v.block(j));
  return ProductPoint(std::move(blocks));
}

ProductPoint operator-(const ProductPoint& u, const ProductPoint& v) {
  if (u.count() != v.count() || u.block_dim() != v.block_dim()) {
    throw UsageError("ProductPoint difference: shape mismatch");
  }
  std::vector<Vector> blocks;
  blocks.reserve(static_cast<std::size_t>(u.count()));
  for (int j = 0; j < u.count(); ++j) blocks.push_back(u.block(j) - v.block(j));
  return ProductPoint(std::move(blocks));
}

int problem_dim(const ProductProblem& p) {
  if (p.sets.empty()) throw UsageError("ProductProblem: needs at least one set");
  const int d = p.sets.front().dim();
  for (const ConvexSet& s : p.sets) {
    if (s.dim() != d) throw UsageError("ProductProblem: set dimensions differ");
  }
  return d;
}

MpiState::MpiState(ProductPoint a_in, ProductPoint b_in)
    : a(std::move(a_in)), b(std::move(b_in)) {
  if (a.count() != b.count() || a.block_dim() != b.block_dim()) {
    throw UsageError("MpiState: component shapes differ");
  }
  for (int j = 1; j < a.count(); ++j) {
    if (norm(a.block(j) - a.block(0)) > 1e-10) {
      throw UsageError("MpiState: diagonal component has unequal blocks");
    }
  }
  Vector sum = b.block(0);
  for (int j = 1; j < b.count(); ++j) sum = sum + b.block(j);
  if (norm(sum) > 1e-10) {
    throw UsageError("MpiState: anti-diagonal component blocks do not sum to zero");
  }
}

ProductPoint project_diagonal(const ProductPoint& x) {
  Vector sum = x.block(0);
  for (int j = 1; j < x.count(); ++j) sum = sum + x.block(j);
  const Vector mean = (1.0 / x.count()) * sum;
  return replicate(mean, x.count());
}

ProductPoint project_blocks(const ProductProblem& p, const ProductPoint& x) {
  const int d = problem_dim(p);
  if (static_cast<int>(p.sets.size()) != x.count() || d != x.block_dim()) {
    throw UsageError("project_blocks: point shape does not match the problem");
  }
  std::vector<Vector> blocks;
  blocks.reserve(p.sets.size());
  for (int j = 0; j < x.count(); ++j) blocks.push_back(project(p.sets[static_cast<std::size_t>(j)], x.block(j)));
  return ProductPoint(std::move(blocks));
}

std::pair<DrTrace, SpingarnReport> spingarn_solve(const ProductProblem& p,
                                                  const ProductPoint& x0,
                                                  const StopConfig& cfg) {
  const int d = problem_dim(p);
  const int m = static_cast<int>(p.sets.size());
  if (x0.count() != m || x0.block_dim() != d) {
    throw UsageError("spingarn_solve: start shape does not match the problem");
  }

  CoreResult core = iterate_core(
      [&](const Vector& x) { return flatten(project_diagonal(unflatten(x, m))); },
      [&](const Vector& x) { return flatten(project_blocks(p, unflatten(x, m))); },
      flatten(x0), cfg);

  const TraceRecord& last = core.trace.records.back();
  const ProductPoint shadow = unflatten(last.shadow_a, m);
  const Vector solution = shadow.block(0);

  const bool all_affine = std::all_of(p.sets.begin(), p.sets.end(),
                                      [](const ConvexSet& s) { return s.is_affine(); });
  const ProductPoint gap_blocks = all_affine
                                      ? unflatten(last.shadow_b - last.shadow_a, m)
                                      : unflatten(last.gap_diff, m);

  SpingarnReport report{solution, gap_blocks.blocks(),
                        least_squares_objective(p, solution), core.iterations,
                        core.status};
  return {std::move(core.trace), std::move(report)};
}

MpiState mpi_step(const ProductProblem& p, const MpiState& s) {
  const ProductPoint t = s.a + s.b;
  const ProductPoint a_ref = project_blocks(p, t);
  const ProductPoint b_ref = t - a_ref;
  const ProductPoint a_next = project_diagonal(a_ref);
  const ProductPoint b_next = b_ref - project_diagonal(b_ref);
  return MpiState(a_next, b_next);
}

bool mpi_equals_dr(const ProductProblem& p, const MpiState& s0, long n, double tol) {
  const int m = static_cast<int>(p.sets.size());
  MpiState s = s0;
  Vector x = flatten(s0.a) - flatten(s0.b);
  for (long k = 0;; ++k) {
    const Vector pa = flatten(project_diagonal(unflatten(x, m)));
    if (norm((flatten(s.a) - flatten(s.b)) - x) > tol) return false;
    if (norm(flatten(s.a) - pa) > tol) return false;
    if (k == n) break;
    s = mpi_step(p, s);
    x = x - pa + flatten(project_blocks(p, unflatten(2.0 * pa - x, m)));
  }
  return true;
}

bool gap_minimality_check(const ProductProblem& p, const std::vector<Vector>& g,
                          long trials, std::uint64_t seed) {
  const int d = problem_dim(p);
  if (g.size() != p.sets.size()) {
    throw UsageError("gap_minimality_check: one displacement per set required");
  }
  double baseline = 0.0;
  for (const Vector& gj : g) {
    if (gj.dim() != d) throw UsageError("gap_minimality_check: displacement dimension mismatch");
    baseline += inner(gj, gj);
  }

  Box region = bounding_box_hint(p.sets.front());
  for (std::size_t j = 1; j < p.sets.size(); ++j) {
    const Box hint = bounding_box_hint(p.sets[j]);
    for (int i = 0; i < d; ++i) {
      region.lower[static_cast<std::size_t>(i)] =
          std::min(region.lower[static_cast<std::size_t>(i)], hint.lower[static_cast<std::size_t>(i)]);
      region.upper[static_cast<std::size_t>(i)] =
          std::max(region.upper[static_cast<std::size_t>(i)], hint.upper[static_cast<std::size_t>(i)]);
    }
  }
  double diameter = 0.0;
  for (int i = 0; i < d; ++i) {
    const double w = region.upper[static_cast<std::size_t>(i)] - region.lower[static_cast<std::size_t>(i)];
    diameter += w * w;
  }
  diameter = std::max(1.0, std::sqrt(diameter));

  std::mt19937_64 rng(seed);
  for (long t = 0; t < trials; ++t) {
    std::vector<double> entries(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      const double lo = region.lower[static_cast<std::size_t>(i)] - diameter;
      const double hi = region.upper[static_cast<std::size_t>(i)] + diameter;
      entries[static_cast<std::size_t>(i)] = lo + uniform01(rng) * (hi - lo);
    }
    const Vector z{std::move(entries)};
    double sum = 0.0;
    for (const ConvexSet& s : p.sets) {
      const Vector w = project(s, z) - z;
      sum += inner(w, w);
    }
    if (sum < baseline - 1e-9) return false;
  }
  return true;
}

double least_squares_objective(const ProductProblem& p, const Vector& x) {
  const int d = problem_dim(p);
  if (x.dim() != d) throw UsageError("least_squares_objective: dimension mismatch");
  double sum = 0.0;
  for (const ConvexSet& s : p.sets) {
    const double dist = distance(s, x);
    sum += dist * dist;
  }
  return sum;
}

}  // namespace drsplit
