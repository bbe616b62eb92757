#include "drsplit/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace drsplit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dim(const ConvexSet& s, const Vector& x, const char* op) {
  if (s.dim() != x.dim()) {
    throw UsageError(std::string(op) + ": point dimension " + std::to_string(x.dim()) +
                     " does not match set dimension " + std::to_string(s.dim()));
  }
}

}  // namespace

ConvexSet ConvexSet::affine(Vector anchor, std::vector<Vector> directions) {
  const int d = anchor.dim();
  for (const Vector& v : directions) {
    if (v.dim() != d) throw UsageError("affine: direction dimension mismatch");
  }
  if (static_cast<int>(directions.size()) > d) {
    throw DegenerateBasisError("affine: more directions than ambient dimension");
  }
  Basis onb = orthonormalize(Basis{std::move(directions), false});
  return ConvexSet(AffineSubspace{std::move(anchor), std::move(onb)}, d);
}

ConvexSet ConvexSet::affine_from_equations(const Matrix& m, const Vector& b) {
  Vector anchor = solve_consistent(m, b);
  std::vector<Vector> dirs = null_space(m);
  return ConvexSet(AffineSubspace{std::move(anchor), Basis{std::move(dirs), true}}, m.cols);
}

ConvexSet ConvexSet::halfspace(Vector normal, double offset) {
  if (norm(normal) == 0.0) throw UsageError("halfspace: normal must be nonzero");
  const int d = normal.dim();
  return ConvexSet(Halfspace{std::move(normal), offset}, d);
}

ConvexSet ConvexSet::box(std::vector<double> lower, std::vector<double> upper) {
  if (lower.empty() || lower.size() != upper.size()) {
    throw UsageError("box: bound lists must be nonempty and equal length");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] > upper[i]) {
      throw UsageError("box: requires lower <= upper componentwise");
    }
    if (lower[i] == kInf || upper[i] == -kInf) {
      throw UsageError("box: empty coordinate interval");
    }
  }
  const int d = static_cast<int>(lower.size());
  return ConvexSet(Box{std::move(lower), std::move(upper)}, d);
}

ConvexSet ConvexSet::ball(Vector center, double radius) {
  if (!(radius >= 0.0)) throw UsageError("ball: radius must be nonnegative");
  const int d = center.dim();
  return ConvexSet(Ball{std::move(center), radius}, d);
}

ConvexSet ConvexSet::singleton(Vector point) {
  const int d = point.dim();
  return ConvexSet(Singleton{std::move(point)}, d);
}

ConvexSet ConvexSet::epi_abs_plus(double shift) {
  if (!(shift >= 0.0)) throw UsageError("epi_abs_plus: shift must be nonnegative");
  return ConvexSet(EpiAbsPlus{Vector{0.0, shift}}, 2);
}

bool ConvexSet::is_affine() const {
  return std::holds_alternative<AffineSubspace>(payload_) ||
         std::holds_alternative<Singleton>(payload_);
}

AffineSubspace ConvexSet::as_affine() const {
  if (const auto* a = std::get_if<AffineSubspace>(&payload_)) return *a;
  if (const auto* s = std::get_if<Singleton>(&payload_)) {
    return AffineSubspace{s->point, Basis{{}, true}};
  }
  throw UnsupportedError("as_affine: " + variant_name() + " is not an affine subspace");
}

std::string ConvexSet::variant_name() const {
  struct Visitor {
    std::string operator()(const AffineSubspace&) const { return "affine"; }
    std::string operator()(const Halfspace&) const { return "halfspace"; }
    std::string operator()(const Box&) const { return "box"; }
    std::string operator()(const Ball&) const { return "ball"; }
    std::string operator()(const Singleton&) const { return "singleton"; }
    std::string operator()(const EpiAbsPlus&) const { return "epi-abs-plus"; }
  };
  return std::visit(Visitor{}, payload_);
}

namespace {

Vector project_affine(const AffineSubspace& a, const Vector& x) {
  return a.anchor + project_span(a.directions.vectors, x - a.anchor);
}

Vector project_halfspace(const Halfspace& h, const Vector& x) {
  const double excess = inner(h.normal, x) - h.offset;
  if (excess <= 0.0) return x;
  return x - (excess / inner(h.normal, h.normal)) * h.normal;
}

Vector project_box(const Box& b, const Vector& x) {
  std::vector<double> r(x.entries());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = std::min(std::max(r[i], b.lower[i]), b.upper[i]);
  }
  return Vector(std::move(r));
}

Vector project_ball(const Ball& b, const Vector& x) {
  const Vector d = x - b.center;
  const double n = norm(d);
  if (n <= b.radius) return x;
  return b.center + (b.radius / n) * d;
}

// Rotate into the edge frame of {(u,v): v >= |u|}, clamp to the nonnegative
// quadrant, rotate back. The epigraph is that quadrant rotated by -45 deg.
Vector project_epi(const EpiAbsPlus& e, const Vector& x) {
  const double u = x[0] - e.apex[0];
  const double v = x[1] - e.apex[1];
  if (v >= std::fabs(u)) return x;
  const double inv_sqrt2 = 0.7071067811865475244;
  const double s = std::max((u + v) * inv_sqrt2, 0.0);
  const double t = std::max((v - u) * inv_sqrt2, 0.0);
  return Vector{(s - t) * inv_sqrt2 + e.apex[0], (s + t) * inv_sqrt2 + e.apex[1]};
}

}  // namespace

Vector project(const ConvexSet& s, const Vector& x) {
  require_dim(s, x, "project");
  struct Visitor {
    const Vector& x;
    Vector operator()(const AffineSubspace& a) const { return project_affine(a, x); }
    Vector operator()(const Halfspace& h) const { return project_halfspace(h, x); }
    Vector operator()(const Box& b) const { return project_box(b, x); }
    Vector operator()(const Ball& b) const { return project_ball(b, x); }
    Vector operator()(const Singleton& p) const { return p.point; }
    Vector operator()(const EpiAbsPlus& e) const { return project_epi(e, x); }
  };
  return std::visit(Visitor{x}, s.payload());
}

Vector reflect(const ConvexSet& s, const Vector& x) {
  require_dim(s, x, "reflect");
  return 2.0 * project(s, x) - x;
}

double distance(const ConvexSet& s, const Vector& x) {
  require_dim(s, x, "distance");
  return norm(x - project(s, x));
}

bool membership(const ConvexSet& s, const Vector& x, double tol) {
  if (tol < 0.0) throw UsageError("membership: tol must be nonnegative");
  return distance(s, x) <= tol;
}

ConvexSet translate(const ConvexSet& s, const Vector& v) {
  require_dim(s, v, "translate");
  struct Visitor {
    const Vector& v;
    ConvexSet::Payload operator()(const AffineSubspace& a) const {
      return AffineSubspace{a.anchor + v, a.directions};
    }
    ConvexSet::Payload operator()(const Halfspace& h) const {
      return Halfspace{h.normal, h.offset + inner(h.normal, v)};
    }
    ConvexSet::Payload operator()(const Box& b) const {
      Box r = b;
      for (std::size_t i = 0; i < r.lower.size(); ++i) {
        r.lower[i] += v[static_cast<int>(i)];
        r.upper[i] += v[static_cast<int>(i)];
      }
      return r;
    }
    ConvexSet::Payload operator()(const Ball& b) const { return Ball{b.center + v, b.radius}; }
    ConvexSet::Payload operator()(const Singleton& p) const { return Singleton{p.point + v}; }
    ConvexSet::Payload operator()(const EpiAbsPlus& e) const { return EpiAbsPlus{e.apex + v}; }
  };
  return ConvexSet(std::visit(Visitor{v}, s.payload()), s.dim());
}

Box bounding_box_hint(const ConvexSet& s, double span) {
  struct Visitor {
    double span;
    int dim;
    Box operator()(const AffineSubspace& a) const {
      Box b{std::vector<double>(a.anchor.entries()), std::vector<double>(a.anchor.entries())};
      for (auto& l : b.lower) l -= span;
      for (auto& u : b.upper) u += span;
      return b;
    }
    Box operator()(const Halfspace& h) const {
      const Vector w = project_halfspace(h, Vector::zeros(h.normal.dim()));
      Box b{std::vector<double>(w.entries()), std::vector<double>(w.entries())};
      for (auto& l : b.lower) l -= span;
      for (auto& u : b.upper) u += span;
      return b;
    }
    Box operator()(const Box& b) const {
      Box r = b;
      for (std::size_t i = 0; i < r.lower.size(); ++i) {
        if (r.lower[i] == -kInf) r.lower[i] = std::min(0.0, r.upper[i]) - span;
        if (r.upper[i] == kInf) r.upper[i] = std::max(0.0, r.lower[i]) + span;
      }
      return r;
    }
    Box operator()(const Ball& b) const {
      Box r{std::vector<double>(b.center.entries()), std::vector<double>(b.center.entries())};
      for (auto& l : r.lower) l -= b.radius;
      for (auto& u : r.upper) u += b.radius;
      return r;
    }
    Box operator()(const Singleton& p) const {
      return Box{std::vector<double>(p.point.entries()), std::vector<double>(p.point.entries())};
    }
    Box operator()(const EpiAbsPlus& e) const {
      return Box{{e.apex[0] - span, e.apex[1]}, {e.apex[0] + span, e.apex[1] + 2.0 * span}};
    }
  };
  return std::visit(Visitor{span, s.dim()}, s.payload());
}

}  // namespace drsplit
