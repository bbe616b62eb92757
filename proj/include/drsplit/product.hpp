#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "drsplit/dr.hpp"
#include "drsplit/sets.hpp"

namespace drsplit {

// Element of the product space X^M, stored blockwise.
class ProductPoint {
 public:
  explicit ProductPoint(std::vector<Vector> blocks);

  int count() const { return static_cast<int>(blocks_.size()); }
  int block_dim() const { return blocks_.front().dim(); }
  const Vector& block(int j) const { return blocks_.at(static_cast<std::size_t>(j)); }
  const std::vector<Vector>& blocks() const { return blocks_; }

 private:
  std::vector<Vector> blocks_;
};

ProductPoint replicate(const Vector& v, int count);
Vector flatten(const ProductPoint& x);
ProductPoint unflatten(const Vector& x, int count);

ProductPoint operator+(const ProductPoint& u, const ProductPoint& v);
ProductPoint operator-(const ProductPoint& u, const ProductPoint& v);

// M-set least-squares instance: minimize sum of squared distances to the C_j.
struct ProductProblem {
  std::vector<ConvexSet> sets;
};

int problem_dim(const ProductProblem& p);

// Diagonal/anti-diagonal state pair for the method of partial inverses.
// a has all blocks equal; the blocks of b sum to zero.
struct MpiState {
  MpiState(ProductPoint a_in, ProductPoint b_in);
  ProductPoint a;
  ProductPoint b;
};

struct SpingarnReport {
  Vector solution;
  std::vector<Vector> per_set_gaps;
  double objective;
  long iterations;
  Status status;
};

ProductPoint project_diagonal(const ProductPoint& x);
ProductPoint project_blocks(const ProductProblem& p, const ProductPoint& x);

std::pair<DrTrace, SpingarnReport> spingarn_solve(const ProductProblem& p,
                                                  const ProductPoint& x0,
                                                  const StopConfig& cfg);

MpiState mpi_step(const ProductProblem& p, const MpiState& s);

// Runs n steps of both recursions and compares a_k - b_k against the
// Douglas-Rachford orbit started at a_0 - b_0, and a_k against its diagonal
// projection.
bool mpi_equals_dr(const ProductProblem& p, const MpiState& s0, long n,
                   double tol = 1e-9);

// Samples `trials` feasible displacement tuples w (z in a bounding box,
// w_j = project(C_j, z) - z) and checks none beats the candidate g in
// summed squared norm.
bool gap_minimality_check(const ProductProblem& p, const std::vector<Vector>& g,
                          long trials, std::uint64_t seed = 0);

double least_squares_objective(const ProductProblem& p, const Vector& x);

}  // namespace drsplit
