#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "drsplit/errors.hpp"

namespace drsplit {

// Immutable finite-dimensional real vector. Entries are always finite;
// constructing from NaN/Inf throws UsageError.
class Vector {
 public:
  explicit Vector(std::vector<double> entries);
  Vector(std::initializer_list<double> entries);

  static Vector zeros(int dim);

  int dim() const { return static_cast<int>(e_.size()); }
  double operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& entries() const { return e_; }

  friend Vector operator+(const Vector& u, const Vector& v);
  friend Vector operator-(const Vector& u, const Vector& v);
  friend Vector operator-(const Vector& u);
  friend Vector operator*(double s, const Vector& u);

 private:
  std::vector<double> e_;
};

double inner(const Vector& u, const Vector& v);
double norm(const Vector& u);

// Ordered list of same-dimension vectors spanning a subspace. The
// `orthonormal` flag is a promise checked by orthonormalize()'s output
// invariants, not re-verified on every use.
struct Basis {
  std::vector<Vector> vectors;
  bool orthonormal = false;

  // Ambient dimension; 0 for an empty basis is not meaningful, callers
  // carrying empty bases track the ambient dimension themselves.
  int dim() const { return vectors.empty() ? 0 : vectors.front().dim(); }
  int size() const { return static_cast<int>(vectors.size()); }
};

// Gram-Schmidt with reorthogonalization. Throws DegenerateBasisError when an
// input vector is dependent on its predecessors beyond the rank tolerance.
Basis orthonormalize(const Basis& b, double rank_tol = 1e-10);

// Gram-Schmidt that drops dependent vectors instead of failing. Used to build
// spanning bases of sums of subspaces.
std::vector<Vector> orthonormalize_span(const std::vector<Vector>& vs,
                                        double drop_tol = 1e-10);

// Orthonormal basis of the orthogonal complement of span(onb) in R^dim.
// `onb` must already be orthonormal.
std::vector<Vector> orthonormal_complement(const std::vector<Vector>& onb, int dim);

// Projection of x onto span(onb) (a linear subspace through the origin).
Vector project_span(const std::vector<Vector>& onb, const Vector& x);

// Minimal dense matrix, row-major. Only what the affine-set loader needs.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;  // rows*cols

  double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
  Vector row(int r) const;
};

// One solution of M x = b via Gaussian elimination with partial pivoting,
// free variables set to zero. Throws UsageError on an inconsistent system.
Vector solve_consistent(const Matrix& m, const Vector& b, double tol = 1e-10);

// Orthonormal basis of the null space of M.
std::vector<Vector> null_space(const Matrix& m, double tol = 1e-10);

namespace detail {
void require_same_dim(const Vector& u, const Vector& v, const char* op);
}

}  // namespace drsplit
