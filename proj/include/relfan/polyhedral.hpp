#pragma once

// Rational polyhedral cones by double description.

#include "relfan/linalg.hpp"

#include <compare>
#include <vector>

namespace relfan {

struct RaysAndLines {
  std::vector<Vec> rays;   // primitive integral directions, one per extreme ray
  std::vector<Vec> lines;  // basis of the lineality space
};

/// Generators of {z in Q^dim : a . z >= 0 for every a in `inequalities`}.
RaysAndLines cone_from_inequalities(std::size_t dim, const std::vector<Vec>& inequalities);

/// Lexicographic order on primitive integral directions.
bool lex_less(const IntVec& a, const IntVec& b);

/// A sharp rational polyhedral cone in Q^ambient. Canonical data: the
/// sorted primitive integral extreme rays. Derived data: the linear span
/// (reduced echelon) and facet normals expressed in span coordinates.
class PolyCone {
 public:
  PolyCone() = default;
  /// The cone {0} in Q^ambient.
  explicit PolyCone(std::size_t ambient) : ambient_(ambient), span_(ambient) {}

  /// Throws MathError("NotSharp") if the generators' cone contains a line.
  static PolyCone from_generators(std::size_t ambient, const std::vector<Vec>& generators);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return span_.dim(); }
  bool is_zero() const { return rays_.empty(); }
  const std::vector<IntVec>& rays() const { return rays_; }
  std::vector<Vec> rational_rays() const;
  const Subspace& span() const { return span_; }
  /// Facet normals as functionals on span coordinates.
  const std::vector<Vec>& facets() const { return facets_; }

  bool contains(const Vec& x) const;
  /// x in the relative interior: in the span with every facet strictly positive.
  bool contains_in_relative_interior(const Vec& x) const;
  bool contains(const PolyCone& other) const;
  /// Sum of the extreme rays; lies in the relative interior.
  Vec interior_point() const;

  PolyCone intersect(const PolyCone& other) const;
  /// The cone intersected with the half-space {x : h . x >= 0}.
  PolyCone cut(const Vec& h) const;
  /// All faces, including {0} and the cone itself, ordered by dimension
  /// then rays.
  std::vector<PolyCone> faces() const;
  /// Index sets (into rays()) of the faces; cheaper than faces().
  std::vector<std::vector<std::size_t>> face_ray_sets() const;
  bool has_face(const PolyCone& f) const;

  friend bool operator==(const PolyCone& a, const PolyCone& b) {
    return a.ambient_ == b.ambient_ && a.rays_ == b.rays_;
  }
  /// Total order on canonical data (for sorted containers).
  friend bool operator<(const PolyCone& a, const PolyCone& b);

 private:
  std::size_t ambient_ = 0;
  std::vector<IntVec> rays_;
  Subspace span_;
  std::vector<Vec> facets_;

  Vec coordinates(const Vec& x) const { return span_.coordinates(x); }
};

}  // namespace relfan
