#pragma once

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "drsplit/linalg.hpp"
#include "drsplit/sets.hpp"

namespace testutil {

inline std::uint64_t seed_from_env() {
  const char* s = std::getenv("DRSPLIT_SEED");
  return s ? std::strtoull(s, nullptr, 10) : 0;
}

// Deterministic uniform doubles on top of mt19937_64, identical on every
// platform for a given seed.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  double unit() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + unit() * (hi - lo); }
  int integer(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  drsplit::Vector vector(int d, double lo, double hi) {
    std::vector<double> e(static_cast<std::size_t>(d));
    for (double& x : e) x = uniform(lo, hi);
    return drsplit::Vector(std::move(e));
  }
};

// One random instance of each catalog variant, scaled to desk size.
// variant: 0 affine, 1 halfspace, 2 box, 3 ball, 4 singleton, 5 epi (d==2).
inline drsplit::ConvexSet random_set(Rng& rng, int variant, int d) {
  using drsplit::ConvexSet;
  switch (variant) {
    case 0: {
      const int k = rng.integer(1, d);
      for (;;) {
        std::vector<drsplit::Vector> dirs;
        for (int i = 0; i < k; ++i) dirs.push_back(rng.vector(d, -1.0, 1.0));
        try {
          return ConvexSet::affine(rng.vector(d, -3.0, 3.0), std::move(dirs));
        } catch (const drsplit::DegenerateBasisError&) {
          continue;  // measure-zero draw, retry
        }
      }
    }
    case 1: {
      for (;;) {
        const drsplit::Vector n = rng.vector(d, -1.0, 1.0);
        if (drsplit::norm(n) < 0.5) continue;
        return ConvexSet::halfspace(n, rng.uniform(-3.0, 3.0));
      }
    }
    case 2: {
      // sides above 0.35, the coarsest spacing of a 41-point grid over the
      // merged search regions, so brute-force grids always land inside
      std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) {
        const double a = rng.uniform(-3.0, 3.0);
        const double w = rng.uniform(0.4, 3.0);
        lo[static_cast<std::size_t>(i)] = a;
        hi[static_cast<std::size_t>(i)] = a + w;
      }
      return ConvexSet::box(std::move(lo), std::move(hi));
    }
    case 3:
      return ConvexSet::ball(rng.vector(d, -3.0, 3.0), rng.uniform(0.4, 2.5));
    case 4:
      return ConvexSet::singleton(rng.vector(d, -3.0, 3.0));
    default:
      return ConvexSet::epi_abs_plus(rng.uniform(0.0, 2.0));
  }
}

// A random member of s, obtained by projecting a random ambient point.
inline drsplit::Vector random_member(Rng& rng, const drsplit::ConvexSet& s) {
  return project(s, rng.vector(s.dim(), -6.0, 6.0));
}

}  // namespace testutil
