#include "relfan/linalg.hpp"

#include "relfan/errors.hpp"

namespace relfan {

QMat to_rat(const ZMat& m) {
  QMat q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
  return q;
}

bool is_integral(const QMat& m) {
  for (const auto& x : m.data())
    if (x.get_den() != 1) return false;
  return true;
}

ZMat to_int(const QMat& m) {
  if (!is_integral(m)) throw precondition_violated("matrix has non-integral entries");
  ZMat z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) z(i, j) = m(i, j).get_num();
  return z;
}

Vec flatten(const QMat& m) { return m.data(); }

QMat unflatten(const Vec& v, std::size_t n) {
  QMat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

Subspace kernel(const QMat& m) { return Subspace::span(m.cols(), kernel_basis(m)); }

Subspace image(const QMat& m) {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
  return Subspace::span(m.rows(), cols);
}

Subspace map_subspace(const QMat& m, const Subspace& s) {
  std::vector<Vec> imgs;
  for (const auto& b : s.basis()) imgs.push_back(m.apply(b));
  return Subspace::span(m.rows(), imgs);
}

Subspace preimage(const QMat& m, const Subspace& s) {
  // v with m v in s  <=>  (projection onto a complement of s) m v = 0.
  // Use the reduction map: entries of reduce(m v) at non-pivot positions.
  const std::size_t n = m.rows();
  std::vector<bool> pivot(n, false);
  for (auto p : s.pivots()) pivot[p] = true;
  // reduce is linear; build its matrix column by column.
  QMat red(n, n);
  for (std::size_t j = 0; j < n; ++j) red.set_col(j, s.reduce(unit_vec(n, j)));
  QMat composed = red * m;
  return kernel(composed);
}

std::vector<GaussRat> complexify(const Vec& v) {
  std::vector<GaussRat> out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

CSubspace complexify(const Subspace& s) {
  std::vector<std::vector<GaussRat>> b;
  for (const auto& v : s.basis()) b.push_back(complexify(v));
  return CSubspace::span(s.ambient(), b);
}

CMat complexify(const QMat& m) {
  CMat c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = GaussRat(m(i, j));
  return c;
}

}  // namespace relfan
