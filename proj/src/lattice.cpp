#include "relfan/lattice.hpp"

#include "relfan/errors.hpp"

#include <algorithm>

namespace relfan {

namespace {

void swap_rows(ZMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(ZMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_a <- p*row_a + q*row_b ; row_b <- r*row_a + s*row_b (old values)
void combine_rows(ZMat& m, std::size_t a, std::size_t b, const Int& p, const Int& q, const Int& r,
                  const Int& s) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Int x = m(a, j), y = m(b, j);
    m(a, j) = p * x + q * y;
    m(b, j) = r * x + s * y;
  }
}

void combine_cols(ZMat& m, std::size_t a, std::size_t b, const Int& p, const Int& q, const Int& r,
                  const Int& s) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int x = m(i, a), y = m(i, b);
    m(i, a) = p * x + q * y;
    m(i, b) = r * x + s * y;
  }
}

// g = p*a + q*b with g = gcd(a, b) >= 0. When a | b the coefficients are
// (sign a, 0), so eliminating b never disturbs a's line.
void gcdext(const Int& a, const Int& b, Int& g, Int& p, Int& q) {
  if (sgn(a) != 0 && mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
    g = abs(a);
    p = sgn(a);
    q = 0;
    return;
  }
  mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

}  // namespace

HermiteResult hermite(const ZMat& a) {
  ZMat h = a;
  ZMat u = ZMat::identity(a.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    // Fold every row below r into row r by extended gcd steps.
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (sgn(h(i, c)) == 0) continue;
      if (sgn(h(r, c)) == 0) {
        swap_rows(h, r, i);
        swap_rows(u, r, i);
        continue;
      }
      Int g, p, q;
      gcdext(h(r, c), h(i, c), g, p, q);
      Int s = -h(i, c) / g;
      Int t = h(r, c) / g;
      // [p q; s t] has determinant p*t - q*s = (p*a + q*b)/g = 1.
      combine_rows(h, r, i, p, q, s, t);
      combine_rows(u, r, i, p, q, s, t);
    }
    if (sgn(h(r, c)) == 0) continue;
    if (sgn(h(r, c)) < 0) {
      for (std::size_t j = 0; j < h.cols(); ++j) h(r, j) = -h(r, j);
      for (std::size_t j = 0; j < u.cols(); ++j) u(r, j) = -u(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int f;
      mpz_fdiv_q(f.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) -= f * h(r, j);
      for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) -= f * u(r, j);
    }
    ++r;
  }
  ZMat trimmed(r, h.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) trimmed(i, j) = h(i, j);
  return {trimmed, u};
}

SmithResult smith(const ZMat& m) {
  ZMat d = m;
  ZMat u = ZMat::identity(m.rows());
  ZMat v = ZMat::identity(m.cols());
  const std::size_t limit = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    while (true) {
      // Pivot: smallest nonzero absolute value in the trailing block.
      std::size_t pi = t, pj = t;
      bool found = false;
      for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j)
          if (sgn(d(i, j)) != 0 && (!found || abs(d(i, j)) < abs(d(pi, pj)))) {
            pi = i;
            pj = j;
            found = true;
          }
      if (!found) return {u, d, v};
      swap_rows(d, t, pi);
      swap_rows(u, t, pi);
      swap_cols(d, t, pj);
      swap_cols(v, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (sgn(d(i, t)) == 0) continue;
        Int g, p, q;
        gcdext(d(t, t), d(i, t), g, p, q);
        Int s = -d(i, t) / g, w = d(t, t) / g;
        combine_rows(d, t, i, p, q, s, w);
        combine_rows(u, t, i, p, q, s, w);
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (sgn(d(t, j)) == 0) continue;
        Int g, p, q;
        gcdext(d(t, t), d(t, j), g, p, q);
        Int s = -d(t, j) / g, w = d(t, t) / g;
        combine_cols(d, t, j, p, q, s, w);
        combine_cols(v, t, j, p, q, s, w);
      }
      for (std::size_t i = t + 1; i < d.rows(); ++i)
        if (sgn(d(i, t)) != 0) clean = false;
      for (std::size_t j = t + 1; j < d.cols(); ++j)
        if (sgn(d(t, j)) != 0) clean = false;
      if (!clean) continue;
      // Divisibility: if some entry is not divisible by the pivot, add its
      // row to row t and repeat.
      bool divisible = true;
      for (std::size_t i = t + 1; i < d.rows() && divisible; ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (sgn(d(i, j) % d(t, t)) != 0) {
            for (std::size_t k = 0; k < d.cols(); ++k) d(t, k) += d(i, k);
            for (std::size_t k = 0; k < u.cols(); ++k) u(t, k) += u(i, k);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (sgn(d(t, t)) < 0) {
      for (std::size_t k = 0; k < d.cols(); ++k) d(t, k) = -d(t, k);
      for (std::size_t k = 0; k < u.cols(); ++k) u(t, k) = -u(t, k);
    }
  }
  return {u, d, v};
}

std::vector<IntVec> integer_row_kernel(const ZMat& a) {
  auto [h, u] = hermite(a);
  std::vector<IntVec> out;
  for (std::size_t i = h.rows(); i < a.rows(); ++i) out.push_back(u.row(i));
  return out;
}

ZLattice ZLattice::generated_by(std::size_t ambient, const std::vector<Vec>& generators) {
  ZLattice l(ambient);
  if (generators.empty()) {
    l.hnf_ = ZMat(0, ambient);
    return l;
  }
  Int den = 1;
  for (const auto& g : generators) den = lcm(den, lcm_denominators(g));
  ZMat scaled(generators.size(), ambient);
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = 0; j < ambient; ++j) {
      Rat x = generators[i][j] * den;
      scaled(i, j) = x.get_num();
    }
  ZMat h = hermite(scaled).h;
  Int content = 0;
  for (const auto& x : h.data()) content = gcd(content, x);
  Int g = gcd(content, den);
  if (sgn(g) == 0) g = 1;
  if (g != 1) {
    den /= g;
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) /= g;
    // Division by a common factor preserves Hermite form.
  }
  l.denominator_ = h.rows() == 0 ? Int(1) : den;
  l.hnf_ = h;
  return l;
}

ZLattice ZLattice::standard(std::size_t ambient) {
  std::vector<Vec> e;
  for (std::size_t i = 0; i < ambient; ++i) e.push_back(unit_vec(ambient, i));
  return generated_by(ambient, e);
}

std::vector<Vec> ZLattice::basis() const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < hnf_.rows(); ++i) {
    Vec v(ambient_);
    for (std::size_t j = 0; j < ambient_; ++j) v[j] = Rat(hnf_(i, j), denominator_);
    for (auto& x : v) x.canonicalize();
    out.push_back(std::move(v));
  }
  return out;
}

bool ZLattice::contains(const Vec& v) const {
  // Scale by the denominator, then peel off Hermite rows.
  Vec w = scale(Rat(denominator_), v);
  std::size_t r = 0;
  for (std::size_t c = 0; c < ambient_; ++c) {
    if (r < hnf_.rows() && sgn(hnf_(r, c)) != 0) {
      if (w[c].get_den() != 1) return false;
      Int q;
      Int num = w[c].get_num();
      if (sgn(num % hnf_(r, c)) != 0) return false;
      q = num / hnf_(r, c);
      for (std::size_t j = c; j < ambient_; ++j) w[j] -= Rat(q * hnf_(r, j));
      ++r;
    } else if (sgn(w[c]) != 0) {
      return false;
    }
  }
  return true;
}

bool ZLattice::contains(const ZLattice& o) const {
  for (const auto& b : o.basis())
    if (!contains(b)) return false;
  return true;
}

Subspace ZLattice::rational_span() const { return Subspace::span(ambient_, basis()); }

ZLattice ZLattice::operator+(const ZLattice& o) const {
  auto gens = basis();
  auto ob = o.basis();
  gens.insert(gens.end(), ob.begin(), ob.end());
  return generated_by(ambient_, gens);
}

ZLattice ZLattice::intersect(const ZLattice& o) const {
  auto a = basis();
  auto b = o.basis();
  if (a.empty() || b.empty()) return generated_by(ambient_, {});
  // Relations z with sum z_i a_i - sum w_j b_j = 0 over Z.
  Int den = lcm(denominator_, o.denominator_);
  ZMat rel(a.size() + b.size(), ambient_);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) rel(i, j) = Rat(a[i][j] * den).get_num();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) rel(a.size() + i, j) = -Rat(b[i][j] * den).get_num();
  std::vector<Vec> gens;
  for (const auto& z : integer_row_kernel(rel)) {
    Vec v = zero_vec(ambient_);
    for (std::size_t i = 0; i < a.size(); ++i) axpy(Rat(z[i]), a[i], v);
    gens.push_back(std::move(v));
  }
  return generated_by(ambient_, gens);
}

ZLattice ZLattice::intersect(const Subspace& v) const {
  // Kernel of the reduction map restricted to the lattice coordinates.
  auto a = basis();
  if (a.empty()) return *this;
  std::vector<Vec> reduced;
  for (const auto& x : a) reduced.push_back(v.reduce(x));
  QMat m = QMat::from_columns(reduced, ambient_);
  Int den = 1;
  for (const auto& x : m.data()) den = lcm(den, Int(x.get_den()));
  ZMat zm(a.size(), ambient_);  // rows = reduced generators, scaled
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) zm(i, j) = Rat(reduced[i][j] * den).get_num();
  std::vector<Vec> gens;
  for (const auto& z : integer_row_kernel(zm)) {
    Vec w = zero_vec(ambient_);
    for (std::size_t i = 0; i < a.size(); ++i) axpy(Rat(z[i]), a[i], w);
    gens.push_back(std::move(w));
  }
  return generated_by(ambient_, gens);
}

namespace {

// Images of the lattice generators and of x in Q^n / V, expressed in the
// coordinates of the non-pivot positions of V's echelon basis.
struct Projected {
  std::vector<Vec> gens;
  Vec x;
};

Projected project_mod(const Vec& x, const ZLattice& a, const Subspace& v) {
  std::vector<bool> pivot(v.ambient(), false);
  for (auto p : v.pivots()) pivot[p] = true;
  auto coords = [&](const Vec& y) {
    Vec r = v.reduce(y);
    Vec out;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (!pivot[j]) out.push_back(r[j]);
    return out;
  };
  Projected p;
  for (const auto& b : a.basis()) p.gens.push_back(coords(b));
  p.x = coords(x);
  return p;
}

}  // namespace

Int order_in_quotient(const Vec& x, const ZLattice& a, const Subspace& v) {
  auto p = project_mod(x, a, v);
  const std::size_t k = p.x.size();
  if (p.gens.empty() || k == 0) {
    if (!is_zero(p.x)) throw precondition_violated("vector outside the span of A + V");
    return 1;
  }
  // Generators as columns of a k x g matrix, scaled to integers.
  Int den = lcm_denominators(p.x);
  for (const auto& g : p.gens) den = lcm(den, lcm_denominators(g));
  ZMat m(k, p.gens.size());
  for (std::size_t j = 0; j < p.gens.size(); ++j)
    for (std::size_t i = 0; i < k; ++i) m(i, j) = Rat(p.gens[j][i] * den).get_num();
  Vec xs = scale(Rat(den), p.x);
  // u m v = d: lattice image is u^{-1} d Z^g, so in y = u x coordinates the
  // lattice is d Z^g and the order is the lcm of the denominators y_i / d_i.
  auto [u, d, vv] = smith(m);
  Vec y = to_rat(u).apply(xs);
  Int order = 1;
  for (std::size_t i = 0; i < k; ++i) {
    Int di = i < std::min(d.rows(), d.cols()) ? d(i, i) : Int(0);
    if (sgn(di) == 0) {
      if (sgn(y[i]) != 0) throw precondition_violated("vector outside the span of A + V");
      continue;
    }
    Rat q = y[i] / Rat(di);
    order = lcm(order, Int(q.get_den()));
  }
  return order;
}

bool in_lattice_plus_subspace(const Vec& x, const ZLattice& a, const Subspace& v) {
  auto p = project_mod(x, a, v);
  const std::size_t k = p.x.size();
  if (k == 0) return true;
  return ZLattice::generated_by(k, p.gens).contains(p.x);
}

}  // namespace relfan
