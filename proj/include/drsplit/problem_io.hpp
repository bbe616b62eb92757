#pragma once

#include <string>
#include <utility>
#include <vector>

#include "drsplit/dr.hpp"
#include "drsplit/product.hpp"
#include "drsplit/sets.hpp"

namespace drsplit {

// Parsed problem file. `start` is ambient for two-set mode; for spingarn it
// is either one d-dimensional consensus seed or M stacked blocks.
struct ProblemFile {
  int schema;
  std::string mode;  // "two-set" | "spingarn"
  std::vector<ConvexSet> sets;
  Vector start;
  StopConfig stop;
};

// Throws ValidationError on malformed JSON (with line/column), unknown
// fields or set types, and dimension mismatches (naming the set index).
ProblemFile parse_problem(const std::string& text);

std::string serialize_problem(const ProblemFile& f);

DrProblem to_dr_problem(const ProblemFile& f);
std::pair<ProductProblem, ProductPoint> to_product(const ProblemFile& f);

}  // namespace drsplit
