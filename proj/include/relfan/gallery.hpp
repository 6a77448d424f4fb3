#pragma once

// The degeneration Y^2 x E -> Delta, with Y = C/Z[i] and E the Tate curve:
// H' = H^3(Y^2 x E)(2) by Kunneth bookkeeping, Zucker's equivalence on
// (t, a, q), its non-Hausdorff witness and the slit q = 0 => a_2 = 0.

#include "relfan/fans.hpp"
#include "relfan/report.hpp"

#include <array>

namespace relfan {

/// One cohomology degree of a curve factor.
struct KDegree {
  ZMat monodromy;
  std::vector<HodgeNumber> hodge;
  /// Graded Hodge numbers of the limit structure, (weight, p, q, count).
  std::vector<GradedHodgeNumber> limit;
  std::size_t rank() const { return monodromy.rows(); }
};

/// H^0, H^1, H^2 of a smooth projective curve (or its degeneration) with
/// the cup product H^d x H^{2-d} -> H^2 = Z in `cup[d]`.
struct KFactor {
  std::string name;
  std::array<KDegree, 3> degree;
  std::array<QMat, 3> cup;
};

/// Y = C/Z[i]: H^1 with basis (alpha, beta), alpha cup beta = 1, trivial
/// monodromy.
KFactor constant_elliptic_curve();
/// The Tate curve C^x / q^Z: H^1 monodromy beta -> beta + alpha, limit
/// weights 0 (alpha) and 2 (beta).
KFactor tate_curve();

/// H^r(X_1 x ... x X_r)(twist) for curves X_j, r = number of factors
/// (middle degree, so the cup product pairs H^r with itself). Basis:
/// degree tuples in lexicographic order, Kronecker order inside a tuple.
/// Cup product signs follow the Koszul rule
/// (x_1 .. x_r)(y_1 .. y_r) = (-1)^{sum_{i>j} |x_i||y_j|} (x_1 y_1) .. (x_r y_r).
DegenerationData kunneth(const std::string& name, const std::vector<KFactor>& factors, int twist);

/// H^3(Y^2 x E)(2): rank 20, weight -1.
DegenerationData kunneth_h3();

/// t = base * q^{q_power}. With q = 0 only q_power = 0 is meaningful.
struct TCoord {
  GaussRat base{1};
  long q_power = 0;
  friend bool operator==(const TCoord&, const TCoord&) = default;
};

/// A point (t, a, q) of (C^x)^4 x C^2 x Delta. q = exp(2 pi i tau) is kept
/// through tau; an empty tau is q = 0.
class ZuckerPoint {
 public:
  /// Throws PreconditionViolated for a zero base, Im(tau) <= 0, or a
  /// nonzero q_power at q = 0.
  static ZuckerPoint make(std::array<TCoord, 4> t, GaussRat a1, GaussRat a2, std::optional<GaussRat> tau);

  const std::array<TCoord, 4>& t() const { return t_; }
  const GaussRat& a1() const { return a1_; }
  const GaussRat& a2() const { return a2_; }
  const std::optional<GaussRat>& tau() const { return tau_; }
  bool q_is_zero() const { return !tau_; }

  /// The limit Im(tau) -> infinity with t (at q_power 0) and a fixed.
  ZuckerPoint limit_at_q_zero() const;

  friend bool operator==(const ZuckerPoint&, const ZuckerPoint&) = default;

 private:
  std::array<TCoord, 4> t_;
  GaussRat a1_, a2_;
  std::optional<GaussRat> tau_;
};

struct Equivalence {
  bool holds = false;
  /// The b in Z[i] for q != 0.
  std::optional<GaussRat> b;
  std::string reason;
};

/// q != 0: q' = q, t'_j / t_j in q^Z, and b = a'_2 - a_2 in Z[i] with
/// a'_1 - a_1 - b tau in Z[i]. q = 0: q' = 0, t' = t, a'_2 = a_2 and
/// a'_1 - a_1 in Z[i].
Equivalence compare(const ZuckerPoint& p, const ZuckerPoint& p2);
inline bool equivalent(const ZuckerPoint& p, const ZuckerPoint& p2) { return compare(p, p2).holds; }

/// q != 0, or q = 0 and a_2 = 0.
bool slit_member(const ZuckerPoint& p);

struct HausdorffStep {
  long n = 0;
  Equivalence equivalence;
};

/// For q_n = exp(2 pi i (c + n i)): (t, (c, 1), q_n) ~ (t, (0, 0), q_n) for
/// every n, yet the limits (t, (c, 1), 0) and (t, (0, 0), 0) differ.
struct HausdorffCertificate {
  Rat c;
  std::vector<HausdorffStep> steps;
  ZuckerPoint limit_first;
  ZuckerPoint limit_second;
  bool limits_identified = false;
  Equivalence limits;
  bool passes() const;
  Json to_json() const;
};

HausdorffCertificate hausdorff_witness(const Rat& c, const std::array<TCoord, 4>& t, long n_first, long n_last);

/// Checks on the Y^2 x E data: rank 20, N'^2 = 0, the gr_0 Hodge-type
/// clause, the certificate for c = 1/3 and n = 1..10 with b = -1, and the
/// slit test vectors.
std::vector<CheckResult> gallery_checks();

Json json_of(const ZuckerPoint& p);

}  // namespace relfan
