#pragma once

#include <utility>

#include "drsplit/product.hpp"
#include "drsplit/sets.hpp"

namespace drsplit {

// Search region for the brute-force solvers: a grid of `resolution` points
// per axis, shrunk around the incumbent `rounds` times.
struct GridSpec {
  Vector lower;
  Vector upper;
  int resolution = 41;
  int rounds = 8;
};

// Largest per-axis spacing of the grid after all refinement rounds.
double final_resolution(const GridSpec& spec);

// Nearest member of s to x by refined grid search. Throws OracleMissError
// when the grid contains no member of s.
Vector oracle_project(const ConvexSet& s, const Vector& x, const GridSpec& spec);

// Brute-force minimizer of the summed squared distances, with its value.
std::pair<Vector, double> oracle_least_squares(const ProductProblem& p,
                                               const GridSpec& spec);

}  // namespace drsplit
