#pragma once

// Integer normal forms and finitely generated Z-submodules of Q^n.

#include "relfan/linalg.hpp"

#include <optional>

namespace relfan {

struct HermiteResult {
  ZMat h;  // row Hermite form, zero rows removed
  ZMat u;  // unimodular, u * a = [h; 0]
};

/// Row-style Hermite normal form: upper echelon, positive pivots, entries
/// above each pivot reduced into [0, pivot).
HermiteResult hermite(const ZMat& a);

struct SmithResult {
  ZMat u;
  ZMat d;
  ZMat v;
};

/// u * m * v = d with u, v unimodular and d diagonal, d_i | d_{i+1}, d_i >= 0.
SmithResult smith(const ZMat& m);

/// Integer relations among the rows of a: a Z-basis of {z in Z^r : z^T a = 0}.
std::vector<IntVec> integer_row_kernel(const ZMat& a);

/// A finitely generated Z-submodule of Q^n. Canonical form: the smallest
/// positive denominator d with d*L integral, and the Hermite basis of d*L.
class ZLattice {
 public:
  ZLattice() = default;
  explicit ZLattice(std::size_t ambient) : ambient_(ambient), denominator_(1) {}

  static ZLattice generated_by(std::size_t ambient, const std::vector<Vec>& generators);
  static ZLattice standard(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return hnf_.rows(); }
  const Int& denominator() const { return denominator_; }
  const ZMat& scaled_hermite() const { return hnf_; }
  /// Z-basis as rational vectors (canonical order).
  std::vector<Vec> basis() const;

  bool contains(const Vec& v) const;
  bool contains(const ZLattice& o) const;
  /// Q-span of the lattice.
  Subspace rational_span() const;

  ZLattice operator+(const ZLattice& o) const;
  ZLattice intersect(const ZLattice& o) const;
  /// L intersected with a rational subspace.
  ZLattice intersect(const Subspace& v) const;

  friend bool operator==(const ZLattice& a, const ZLattice& b) {
    return a.ambient_ == b.ambient_ && a.denominator_ == b.denominator_ && a.hnf_ == b.hnf_;
  }

 private:
  std::size_t ambient_ = 0;
  Int denominator_ = 1;
  ZMat hnf_;
};

/// Smallest a >= 1 with a*x in A + V. Throws PreconditionViolated if x is
/// outside the Q-span of A + V. The quotient is taken modulo V first; A's
/// image is then a lattice and a is read off Smith coordinates.
Int order_in_quotient(const Vec& x, const ZLattice& a, const Subspace& v);

/// a*x in A + V, decided directly (used as an independent check).
bool in_lattice_plus_subspace(const Vec& x, const ZLattice& a, const Subspace& v);

}  // namespace relfan
