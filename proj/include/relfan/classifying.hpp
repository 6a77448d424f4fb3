#pragma once

// Pointwise membership in the flag variety, the compact dual, the open
// period domain D and the space of nilpotent orbits, all decided exactly
// over Q(i).

#include "relfan/cone.hpp"

#include <map>

namespace relfan {

using CVec = std::vector<GaussRat>;

/// A decreasing filtration F of H_C = C (H' + e), given by spanning vectors
/// for F^p at the stored indices. Below the lowest stored index F^p is the
/// whole space; above the highest it is 0.
///
/// Invariant: F^p contains F^{p+1} and dim gr^p_F gr^W_w = h_w^{p, w-p} for
/// w = k (the declared Hodge numbers of H') and w = 0 (type (0, 0)).
class PeriodPoint {
 public:
  /// Throws MathError("FlagConditionViolated").
  static PeriodPoint make(const ExtensionFrame& frame, const std::map<int, std::vector<CVec>>& levels);
  /// F^p = F'^p + C(e + shift) for p <= 0, F^p = F'^p for p > 0, where F'
  /// is a filtration of H'_C given on H' coordinates.
  static PeriodPoint split(const ExtensionFrame& frame, const std::map<int, std::vector<CVec>>& pure,
                           const CVec& shift = {});

  const ExtensionFrame& frame() const { return frame_; }
  /// F^p for any integer p.
  const CSubspace& F(int p) const;
  int lowest() const { return lowest_; }
  int highest() const { return highest_; }
  const std::map<int, CSubspace>& levels() const { return levels_; }

  /// g F. Throws FlagConditionViolated if g does not preserve W.
  PeriodPoint transformed(const CMat& g) const;

 private:
  PeriodPoint(ExtensionFrame frame, std::map<int, CSubspace> levels);

  ExtensionFrame frame_;
  std::map<int, CSubspace> levels_;
  CSubspace full_;
  CSubspace zero_;
  int lowest_ = 0;
  int highest_ = -1;
};

/// <F^p(gr_w), F^q(gr_w)>_w = 0 whenever p + q > w, for each weight.
bool in_compact_dual(const PeriodPoint& pt);

/// For each weight w and p + q = w: H^{p,q} = F^p(gr_w) cap conj F^q(gr_w)
/// has dimension h_w^{p,q} and i^{p-q} <x, conj x>_w is positive definite
/// on it (leading principal minors). Throws MathError("NotInCompactDual").
bool in_D(const PeriodPoint& pt);

/// N F^p in F^{p-1} for every p. Throws MathError("NotInG").
bool small_griffiths(const PeriodPoint& pt, const QMat& n);

/// exp of a nilpotent complex matrix by the finite series.
CMat exp_nilpotent(const CMat& n);

/// Default positive imaginary parts sampled per generator.
inline const std::vector<long> kDefaultOrbitSamples{1, 4, 16, 64, 256};

struct OrbitTestOutcome {
  /// True when every sampled point lies in D. This is evidence for the
  /// orbit condition at y >> 0, not a proof of it.
  bool sampled_pass = true;
  std::size_t samples = 0;
  /// First sampled y (one entry per generator) outside D.
  std::optional<std::vector<long>> first_failure;
};

/// exp(sum_j i y_j N_j) F in D for every y in samples^r with min_j y_j >=
/// threshold, N_j the extreme rays of c. Throws MathError("GriffithsViolated")
/// if some N_j fails small Griffiths transversality.
OrbitTestOutcome nilpotent_orbit_test(const PeriodPoint& pt, const Cone& c,
                                      const std::vector<long>& samples = kDefaultOrbitSamples,
                                      long threshold = 1, Exec exec = Exec::parallel);

}  // namespace relfan
