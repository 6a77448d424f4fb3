#pragma once

// Exact linear algebra over Q and Q(i): reduced echelon forms, kernels,
// images and canonical subspaces.

#include "relfan/matrix.hpp"

#include <optional>
#include <vector>

namespace relfan {

/// Brings `a` to reduced row echelon form in place and returns the pivot
/// columns. Pivots are 1 and every other entry of a pivot column is 0.
template <class T>
std::vector<std::size_t> rref_inplace(Matrix<T>& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && is_zero(a(p, c))) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    T inv = T(1) / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j)
      if (!is_zero(a(r, j))) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      T f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!is_zero(a(r, j))) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> a) {
  return rref_inplace(a).size();
}

/// Basis of {v : a v = 0}, one vector per free column.
template <class T>
std::vector<std::vector<T>> kernel_basis(const Matrix<T>& a) {
  Matrix<T> r = a;
  auto pivots = rref_inplace(r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(a.cols(), T(0));
    v[f] = T(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution x of a x = b, or nullopt if the system is inconsistent.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
  Matrix<T> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto pivots = rref_inplace(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<T> x(a.cols(), T(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, a.cols());
  return x;
}

template <class T>
T determinant(Matrix<T> a) {
  assert(a.square());
  T det = T(1);
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a(p, c))) ++p;
    if (p == n) return T(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    T inv = T(1) / a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(a(i, c))) continue;
      T f = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  assert(a.square());
  const std::size_t n = a.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = T(1);
  }
  auto pivots = rref_inplace(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// A linear subspace of T^n stored by its reduced echelon basis, so two
/// subspaces are equal iff their stored data are equal.
template <class T>
class BasicSubspace {
 public:
  using Vector = std::vector<T>;

  BasicSubspace() = default;
  explicit BasicSubspace(std::size_t ambient) : ambient_(ambient) {}

  static BasicSubspace span(std::size_t ambient, const std::vector<Vector>& vectors) {
    BasicSubspace s(ambient);
    if (vectors.empty()) return s;
    Matrix<T> m = Matrix<T>::from_rows(vectors, ambient);
    s.pivots_ = rref_inplace(m);
    for (std::size_t i = 0; i < s.pivots_.size(); ++i) s.basis_.push_back(m.row(i));
    return s;
  }

  static BasicSubspace full(std::size_t ambient) {
    std::vector<Vector> e;
    for (std::size_t i = 0; i < ambient; ++i) {
      Vector v(ambient, T(0));
      v[i] = T(1);
      e.push_back(v);
    }
    return span(ambient, e);
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  bool is_full() const { return basis_.size() == ambient_; }
  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Canonical representative of v modulo this subspace (zero at pivots).
  Vector reduce(Vector v) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (relfan::is_zero(v[pivots_[i]])) continue;
      T f = v[pivots_[i]];
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!relfan::is_zero(basis_[i][j])) v[j] -= f * basis_[i][j];
    }
    return v;
  }

  bool contains(const Vector& v) const {
    auto r = reduce(v);
    for (const auto& x : r)
      if (!relfan::is_zero(x)) return false;
    return true;
  }

  /// Coordinates with respect to the stored basis; valid only for members.
  Vector coordinates(const Vector& v) const {
    Vector c(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  bool contains(const BasicSubspace& o) const {
    for (const auto& b : o.basis_)
      if (!contains(b)) return false;
    return true;
  }

  BasicSubspace operator+(const BasicSubspace& o) const {
    std::vector<Vector> all = basis_;
    all.insert(all.end(), o.basis_.begin(), o.basis_.end());
    return span(ambient_, all);
  }

  BasicSubspace intersect(const BasicSubspace& o) const {
    if (basis_.empty() || o.basis_.empty()) return BasicSubspace(ambient_);
    // Solve sum a_i u_i - sum b_j w_j = 0.
    std::vector<Vector> cols = basis_;
    for (const auto& w : o.basis_) {
      Vector neg(ambient_);
      for (std::size_t k = 0; k < ambient_; ++k) neg[k] = -w[k];
      cols.push_back(neg);
    }
    auto ker = kernel_basis(Matrix<T>::from_columns(cols, ambient_));
    std::vector<Vector> vecs;
    for (const auto& k : ker) {
      Vector v(ambient_, T(0));
      for (std::size_t i = 0; i < basis_.size(); ++i)
        if (!relfan::is_zero(k[i]))
          for (std::size_t j = 0; j < ambient_; ++j) v[j] += k[i] * basis_[i][j];
      vecs.push_back(std::move(v));
    }
    return span(ambient_, vecs);
  }

  friend bool operator==(const BasicSubspace& a, const BasicSubspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

using Subspace = BasicSubspace<Rat>;
using CSubspace = BasicSubspace<GaussRat>;

/// {v : m v = 0}.
Subspace kernel(const QMat& m);
/// Column span of m.
Subspace image(const QMat& m);
/// m applied to every vector of s.
Subspace map_subspace(const QMat& m, const Subspace& s);
/// {v : m v in s}.
Subspace preimage(const QMat& m, const Subspace& s);

CSubspace complexify(const Subspace& s);
CMat complexify(const QMat& m);
std::vector<GaussRat> complexify(const Vec& v);

}  // namespace relfan
