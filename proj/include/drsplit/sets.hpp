#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "drsplit/linalg.hpp"

namespace drsplit {

// anchor + span(directions); directions orthonormal. An empty direction list
// is a single point, a full basis is the whole space.
struct AffineSubspace {
  Vector anchor;
  Basis directions;
};

// {x : <normal, x> <= offset}, normal nonzero.
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};

// Componentwise interval; bounds may be +-infinity.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct Ball {
  Vector center;
  double radius = 0.0;
};

struct Singleton {
  Vector point;
};

// {(u, v) : v >= |u - apex_0| + apex_1} in R^2. Constructed from a
// nonnegative shift c as apex (0, c); translation moves the apex anywhere.
struct EpiAbsPlus {
  Vector apex;
};

// Nonempty closed convex subset of R^dim with an exact projector.
class ConvexSet {
 public:
  using Payload = std::variant<AffineSubspace, Halfspace, Box, Ball, Singleton, EpiAbsPlus>;

  // Directions are orthonormalized here; dependent inputs throw.
  static ConvexSet affine(Vector anchor, std::vector<Vector> directions);
  // {x : Mx = b}, converted to anchor + null-space basis form.
  static ConvexSet affine_from_equations(const Matrix& m, const Vector& b);
  static ConvexSet halfspace(Vector normal, double offset);
  static ConvexSet box(std::vector<double> lower, std::vector<double> upper);
  static ConvexSet ball(Vector center, double radius);
  static ConvexSet singleton(Vector point);
  static ConvexSet epi_abs_plus(double shift);

  int dim() const { return dim_; }
  const Payload& payload() const { return payload_; }

  // True when the set is an affine subspace of R^dim (AffineSubspace or
  // Singleton variant); such sets admit exact gap formulas and make the
  // shadow-difference estimator trustworthy.
  bool is_affine() const;
  // Anchor + orthonormal-directions view of an affine set. Throws
  // UnsupportedError when !is_affine().
  AffineSubspace as_affine() const;

  std::string variant_name() const;

 private:
  ConvexSet(Payload payload, int dim) : payload_(std::move(payload)), dim_(dim) {}

  friend ConvexSet translate(const ConvexSet& s, const Vector& v);

  Payload payload_;
  int dim_;
};

// Nearest point of S to x.
Vector project(const ConvexSet& s, const Vector& x);
// 2 P_S x - x.
Vector reflect(const ConvexSet& s, const Vector& x);
// ||x - P_S x||.
double distance(const ConvexSet& s, const Vector& x);
// distance(s, x) <= tol.
bool membership(const ConvexSet& s, const Vector& x, double tol);
// The set S + v, same variant.
ConvexSet translate(const ConvexSet& s, const Vector& v);

// A finite box guaranteed to contain project(s, x) for any x already inside
// it; for unbounded variants this is a representative region around the
// set's witness point, padded by `span`. Used by sampling heuristics.
Box bounding_box_hint(const ConvexSet& s, double span = 10.0);

}  // namespace drsplit
