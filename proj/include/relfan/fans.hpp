#pragma once

// The fans attached to a degeneration: the cube-cell fan sigma(x, n), the
// ray fans Sigma_0, Sigma_1 and the Neron fan, and the cube fan Sigma_2.

#include "relfan/cone.hpp"

namespace relfan {

/// P and Q by the general definition, and by the weight -1 definition
/// (P = Im N', Q = Ker N' cap P). For k <= -2 the alternative P is the
/// general one and only Q is recomputed.
struct PQ {
  Subspace p;              // Im N' + W'_{-2}
  Subspace q;              // Ker N' cap W'_{-2}
  Subspace p_alternative;
  Subspace q_alternative;  // Ker N' cap P
  bool definitions_agree() const { return p == p_alternative && q == q_alternative; }
};

PQ compute_PQ(const ExtensionFrame& frame);

/// Data fixing the cells sigma(x, n). basis_e is the Hermite basis of
/// Q cap L; basis_f completes it to a Z-basis of P cap L, and the section s
/// sends the class of f_i to f_i.
struct SigmaThreeParams {
  GSpacePtr gs;
  PQ pq;
  ZLattice L;
  ZLattice p_cap_l;
  ZLattice q_cap_l;
  std::vector<Vec> basis_e;
  std::vector<Vec> basis_f;
  /// mu_j: linear functionals on H' restricting to the basis_e coordinates on
  /// Q (and vanishing on basis_f).
  std::vector<Vec> e_functionals;

  const ExtensionFrame& frame() const { return gs->frame(); }
  std::size_t m() const { return basis_e.size(); }
};

/// Throws PreconditionViolated if L does not contain H' + N'(H').
SigmaThreeParams make_params(GSpacePtr gs, const ZLattice& L);
/// L = H' + N'(H').
SigmaThreeParams default_params(GSpacePtr gs);

/// Coordinates of x in P with respect to (basis_e, basis_f). Throws
/// PreconditionViolated if x is not in P.
struct PCoordinates {
  Vec alpha;  // along basis_e
  Vec beta;   // along basis_f
};
PCoordinates p_coordinates(const SigmaThreeParams& params, const Vec& x);

/// Canonical representative of x modulo Q.
Vec canonical_coset(const SigmaThreeParams& params, const Vec& x);
/// The Q-linear extension of s, evaluated at the class of x.
Vec section(const SigmaThreeParams& params, const Vec& x);
/// Order of x in P/((P cap L) + Q). Computed from the section coordinates
/// and by order_in_quotient; a disagreement throws InvariantViolated.
Int a_of(const SigmaThreeParams& params, const Vec& x);

struct CellIndex {
  Vec x;     // canonical modulo Q
  IntVec n;  // length m
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// The 2^m generators N_v with N_v|H' = N' and
/// N_v(e) = s(x) + a(x)^{-1} sum_j t_j e_j, t_j in {n_j, n_j + 1}.
std::vector<QMat> sigma_cell_generators(const SigmaThreeParams& params, const CellIndex& idx);
Cone sigma_cell(const SigmaThreeParams& params, const CellIndex& idx);
/// The cell whose cube contains N, for N|H' = lambda N' with lambda > 0 and
/// N(e)/lambda in P; nullopt otherwise (including N = 0).
std::optional<CellIndex> cell_index_of(const SigmaThreeParams& params, const QMat& n);

class SigmaThreeFan : public LazyFan {
 public:
  explicit SigmaThreeFan(SigmaThreeParams params) : params_(std::move(params)) {}
  std::string name() const override { return "sigma3"; }
  const GSpacePtr& gspace_ptr() const override { return params_.gs; }
  std::optional<Cone> cell_containing(const QMat& n) const override;
  std::vector<Cone> window_cells(const WindowSpec& w) const override;
  std::optional<GridChart> grid_chart(const Cone& c) const override;
  const SigmaThreeParams& params() const { return params_; }
  /// Cell indices of a window, in the order window_cells uses.
  std::vector<CellIndex> window_indices(const WindowSpec& w) const;

 private:
  SigmaThreeParams params_;
};

/// Fans whose maximal cones are the rays R>=0 N with N|H' = N' and N(e) in
/// a lattice: Sigma_0 (N'(H')), Sigma_1 (Q cap H'), Neron
/// (u^{-1}(Im N' cap H') with u = sum_j N'^j/(j+1)!).
class RayFan : public LazyFan {
 public:
  enum class Kind { sigma0, sigma1, neron };
  RayFan(GSpacePtr gs, Kind kind);
  std::string name() const override;
  const GSpacePtr& gspace_ptr() const override { return gs_; }
  std::optional<Cone> cell_containing(const QMat& n) const override;
  /// Rays with lattice coordinates in [-bound, bound].
  std::vector<Cone> window_cells(const WindowSpec& w) const override;
  const ZLattice& lattice() const { return lattice_; }
  Cone ray(const Vec& image_of_e) const;

 private:
  GSpacePtr gs_;
  Kind kind_;
  ZLattice lattice_;
};

enum class CubeConditionScope { full, nilpotency_only };

struct CubeCondition {
  bool n_prime_squared_zero = false;
  bool gr0_type_00 = false;
  bool holds(CubeConditionScope scope) const {
    return n_prime_squared_zero && (scope == CubeConditionScope::nilpotency_only || gr0_type_00);
  }
};

/// Throws MathError("MissingHodgeData") without declared limit Hodge numbers.
CubeCondition check_cube_condition(const ExtensionFrame& frame);

/// Cells N(e) = sum_j c_j e'_j, n_j <= c_j <= n_j + 1, over the Hermite basis
/// e'_j of N'(H'). Construction throws MathError("CubeConditionViolated")
/// when the condition fails in the requested scope.
class CubeFan : public LazyFan {
 public:
  CubeFan(GSpacePtr gs, CubeConditionScope scope);
  std::string name() const override { return "sigma2"; }
  const GSpacePtr& gspace_ptr() const override { return gs_; }
  std::optional<Cone> cell_containing(const QMat& n) const override;
  std::vector<Cone> window_cells(const WindowSpec& w) const override;
  std::optional<GridChart> grid_chart(const Cone& c) const override;
  const std::vector<Vec>& basis() const { return basis_; }
  std::vector<QMat> cell_generators(const IntVec& n) const;
  Cone cell(const IntVec& n) const;

 private:
  GSpacePtr gs_;
  std::vector<Vec> basis_;
  Subspace span_;
};

/// Lattice points of [-bound, bound]^dim in lexicographic order.
std::vector<IntVec> box_points(std::size_t dim, int bound);
std::vector<IntVec> box_points(const IntVec& lo, const IntVec& hi);

/// lambda(N) as a linear functional on flattened matrices (N|H' = lambda N').
Vec lambda_functional(const GSpace& gs);

}  // namespace relfan
