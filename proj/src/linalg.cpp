#include "drsplit/linalg.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace drsplit {

namespace {

void require_finite(const std::vector<double>& e) {
  for (double x : e) {
    if (!std::isfinite(x)) throw UsageError("Vector entries must be finite");
  }
}

}  // namespace

Vector::Vector(std::vector<double> entries) : e_(std::move(entries)) {
  if (e_.empty()) throw UsageError("Vector dimension must be positive");
  require_finite(e_);
}

Vector::Vector(std::initializer_list<double> entries)
    : Vector(std::vector<double>(entries)) {}

Vector Vector::zeros(int dim) {
  if (dim <= 0) throw UsageError("Vector dimension must be positive");
  return Vector(std::vector<double>(static_cast<std::size_t>(dim), 0.0));
}

namespace detail {
void require_same_dim(const Vector& u, const Vector& v, const char* op) {
  if (u.dim() != v.dim()) {
    throw UsageError(std::string(op) + ": dimension mismatch (" +
                     std::to_string(u.dim()) + " vs " + std::to_string(v.dim()) + ")");
  }
}
}  // namespace detail

Vector operator+(const Vector& u, const Vector& v) {
  detail::require_same_dim(u, v, "operator+");
  std::vector<double> r(u.e_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += v.e_[i];
  return Vector(std::move(r));
}

Vector operator-(const Vector& u, const Vector& v) {
  detail::require_same_dim(u, v, "operator-");
  std::vector<double> r(u.e_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= v.e_[i];
  return Vector(std::move(r));
}

Vector operator-(const Vector& u) { return -1.0 * u; }

Vector operator*(double s, const Vector& u) {
  std::vector<double> r(u.e_);
  for (double& x : r) x *= s;
  return Vector(std::move(r));
}

double inner(const Vector& u, const Vector& v) {
  detail::require_same_dim(u, v, "inner");
  double s = 0.0;
  for (int i = 0; i < u.dim(); ++i) s += u[i] * v[i];
  return s;
}

double norm(const Vector& u) { return std::sqrt(inner(u, u)); }

namespace {

// Subtracts the span(onb) component of v, twice for numerical orthogonality.
Vector reject(const std::vector<Vector>& onb, Vector v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vector& q : onb) v = v - inner(v, q) * q;
  }
  return v;
}

}  // namespace

Basis orthonormalize(const Basis& b, double rank_tol) {
  if (b.vectors.empty()) return Basis{{}, true};
  std::vector<Vector> out;
  out.reserve(b.vectors.size());
  for (const Vector& v : b.vectors) {
    detail::require_same_dim(v, b.vectors.front(), "orthonormalize");
    const double scale = norm(v);
    Vector r = reject(out, v);
    const double rn = norm(r);
    if (scale == 0.0 || rn <= rank_tol * scale) {
      throw DegenerateBasisError("orthonormalize: input vectors are rank deficient");
    }
    out.push_back((1.0 / rn) * r);
  }
  return Basis{std::move(out), true};
}

std::vector<Vector> orthonormalize_span(const std::vector<Vector>& vs, double drop_tol) {
  std::vector<Vector> out;
  for (const Vector& v : vs) {
    const double scale = norm(v);
    if (scale == 0.0) continue;
    Vector r = reject(out, v);
    const double rn = norm(r);
    if (rn <= drop_tol * scale) continue;
    out.push_back((1.0 / rn) * r);
  }
  return out;
}

std::vector<Vector> orthonormal_complement(const std::vector<Vector>& onb, int dim) {
  std::vector<Vector> all(onb);
  for (int i = 0; i < dim; ++i) {
    std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
    e[static_cast<std::size_t>(i)] = 1.0;
    all.emplace_back(std::move(e));
  }
  std::vector<Vector> full = orthonormalize_span(all, 1e-10);
  return std::vector<Vector>(full.begin() + static_cast<std::ptrdiff_t>(onb.size()),
                             full.end());
}

Vector project_span(const std::vector<Vector>& onb, const Vector& x) {
  Vector p = Vector::zeros(x.dim());
  for (const Vector& q : onb) p = p + inner(x, q) * q;
  return p;
}

Vector Matrix::row(int r) const {
  std::vector<double> e(a.begin() + static_cast<std::ptrdiff_t>(r) * cols,
                        a.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols);
  return Vector(std::move(e));
}

Vector solve_consistent(const Matrix& m, const Vector& b, double tol) {
  if (m.rows != b.dim()) throw UsageError("solve_consistent: row/rhs mismatch");
  const int nr = m.rows, nc = m.cols;
  Matrix w = m;
  std::vector<double> rhs = b.entries();

  double scale = tol;
  for (double x : w.a) scale = std::max(scale, std::fabs(x));
  for (double x : rhs) scale = std::max(scale, std::fabs(x));

  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < nc && r < nr; ++c) {
    int p = r;
    for (int i = r + 1; i < nr; ++i) {
      if (std::fabs(w.at(i, c)) > std::fabs(w.at(p, c))) p = i;
    }
    if (std::fabs(w.at(p, c)) <= tol * scale) continue;
    if (p != r) {
      for (int j = 0; j < nc; ++j) std::swap(w.at(p, j), w.at(r, j));
      std::swap(rhs[static_cast<std::size_t>(p)], rhs[static_cast<std::size_t>(r)]);
    }
    for (int i = 0; i < nr; ++i) {
      if (i == r) continue;
      const double f = w.at(i, c) / w.at(r, c);
      if (f == 0.0) continue;
      for (int j = c; j < nc; ++j) w.at(i, j) -= f * w.at(r, j);
      rhs[static_cast<std::size_t>(i)] -= f * rhs[static_cast<std::size_t>(r)];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < nr; ++i) {
    if (std::fabs(rhs[static_cast<std::size_t>(i)]) > tol * scale) {
      throw UsageError("solve_consistent: inconsistent linear system");
    }
  }
  std::vector<double> x(static_cast<std::size_t>(nc), 0.0);
  for (int k = 0; k < r; ++k) {
    x[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(k)])] =
        rhs[static_cast<std::size_t>(k)] / w.at(k, pivot_col[static_cast<std::size_t>(k)]);
  }
  return Vector(std::move(x));
}

std::vector<Vector> null_space(const Matrix& m, double tol) {
  std::vector<Vector> rows;
  rows.reserve(static_cast<std::size_t>(m.rows));
  for (int r = 0; r < m.rows; ++r) rows.push_back(m.row(r));
  std::vector<Vector> row_onb = orthonormalize_span(rows, tol);
  return orthonormal_complement(row_onb, m.cols);
}

}  // namespace drsplit
