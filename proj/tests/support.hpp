#pragma once

// Hand-rolled generators for property tests. Every generator takes the
// engine by reference so a test's seed fixes the whole stream.

#include "relfan/hodge_data.hpp"

#include <random>

namespace relfan::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rat random_rat(Rng& rng, long num_bound = 5, long den_bound = 4) {
  Rat r(uniform(rng, -num_bound, num_bound), static_cast<unsigned long>(uniform(rng, 1, den_bound)));
  r.canonicalize();
  return r;
}

inline Vec random_vec(Rng& rng, std::size_t n, long num_bound = 5, long den_bound = 4) {
  Vec v(n);
  for (auto& x : v) x = random_rat(rng, num_bound, den_bound);
  return v;
}

inline QMat random_qmat(Rng& rng, std::size_t r, std::size_t c, long num_bound = 4, long den_bound = 3) {
  QMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_rat(rng, num_bound, den_bound);
  return m;
}

inline ZMat random_zmat(Rng& rng, std::size_t r, std::size_t c, long bound = 6) {
  ZMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

/// Random matrix of rank at most `rk`: product of r x rk and rk x c factors.
inline QMat random_low_rank(Rng& rng, std::size_t r, std::size_t c, std::size_t rk) {
  return random_qmat(rng, r, rk) * random_qmat(rng, rk, c);
}

/// Unimodular integer matrix: product of elementary row operations.
inline ZMat random_unimodular(Rng& rng, std::size_t n, int steps = 8) {
  ZMat u = ZMat::identity(n);
  if (n < 2) return u;
  for (int s = 0; s < steps; ++s) {
    std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    long f = uniform(rng, -2, 2);
    for (std::size_t k = 0; k < n; ++k) u(i, k) += f * u(j, k);
  }
  return u;
}

/// Direct sum of Jordan blocks with eigenvalue 0 and random block sizes.
inline QMat random_jordan_nilpotent(Rng& rng, std::size_t n) {
  QMat j(n, n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t len = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(n - start)));
    for (std::size_t k = start; k + 1 < start + len; ++k) j(k, k + 1) = 1;
    start += len;
  }
  return j;
}

/// g N g^{-1} for a random unimodular g: a nilpotent with nontrivial shape.
inline QMat random_nilpotent(Rng& rng, std::size_t n) {
  QMat g = to_rat(random_unimodular(rng, n));
  return g * random_jordan_nilpotent(rng, n) * *inverse(g);
}

}  // namespace relfan::testing

namespace relfan::testing {

/// Random element of the span of a subspace's basis.
inline Vec random_member(Rng& rng, const Subspace& s, long num_bound = 5, long den_bound = 4) {
  Vec x = zero_vec(s.ambient());
  for (const auto& b : s.basis()) axpy(random_rat(rng, num_bound, den_bound), b, x);
  return x;
}

/// N(e) in Im N' + W'_{-2}: the admissible directions for restriction N'.
inline Vec random_admissible_image(Rng& rng, const ExtensionFrame& f) {
  return random_member(rng, f.image_n_prime() + f.W_prime().at(-2));
}

/// N(e) outside Im N' + W'_{-2}, or nullopt when that subspace is everything.
inline std::optional<Vec> random_inadmissible_image(Rng& rng, const ExtensionFrame& f) {
  Subspace p = f.image_n_prime() + f.W_prime().at(-2);
  if (p.is_full()) return std::nullopt;
  for (;;) {
    Vec v = random_vec(rng, f.rank());
    if (!p.contains(v)) return v;
  }
}

}  // namespace relfan::testing
