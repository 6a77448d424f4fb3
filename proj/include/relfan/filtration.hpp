#pragma once

#include "relfan/linalg.hpp"

#include <map>

namespace relfan {

/// Finite increasing filtration of Q^n. Stored as its jumps: F_k is the
/// step at the largest stored index <= k, or 0 below the first one. The
/// last stored step is the whole space.
class Filtration {
 public:
  Filtration() = default;
  explicit Filtration(std::size_t ambient) : ambient_(ambient), zero_(ambient) {}

  /// Builds from arbitrary (index, subspace) pairs; the result is
  /// normalized (redundant entries dropped). Throws if not increasing or
  /// not exhaustive.
  static Filtration from_steps(std::size_t ambient, const std::map<int, Subspace>& steps);
  /// 0 = F_{w-1} and F_w = everything.
  static Filtration trivial(std::size_t ambient, int w);

  std::size_t ambient() const { return ambient_; }
  const Subspace& at(int k) const;
  /// gr_k = F_k / F_{k-1} dimension.
  std::size_t graded_dim(int k) const;
  /// Smallest index with nonzero step and smallest index with full step.
  int lowest() const;
  int highest() const;
  const std::map<int, Subspace>& jumps() const { return steps_; }

  /// F[m]_j = F_{j+m}.
  Filtration shift(int m) const;
  /// The filtration induced on a subspace: F_k intersected with S.
  Filtration restrict_to(const Subspace& s) const;

  friend bool operator==(const Filtration& a, const Filtration& b) {
    return a.ambient_ == b.ambient_ && a.steps_ == b.steps_;
  }

 private:
  std::size_t ambient_ = 0;
  std::map<int, Subspace> steps_;
  Subspace zero_;
};

}  // namespace relfan
