#pragma once

// Decision procedures on fan windows: the Gamma action on cells, strong
// compatibility, relative completeness against a corpus and the relations
// among the ray, cube and cell fans.

#include "relfan/fans.hpp"
#include "relfan/report.hpp"

#include <cstdint>

namespace relfan {

/// Ad(gamma) c = {gamma N gamma^{-1}}.
Cone conjugate(const Cone& c, const GammaElement& g);

/// The index (y, n + m) of Ad(gamma) sigma(x, n), where gamma^{-1} e = e + h,
/// gamma s(x) + N'(gamma h) = s(y) + q and a(x) q = sum_j m_j e_j.
/// Throws InvariantViolated if a(y) != a(x) or a(x) q is not in Q cap L.
CellIndex ad_action(const SigmaThreeParams& params, const GammaElement& g, const CellIndex& idx);

/// (gamma')^k with e -> e + h for |k| <= max_power and h in {0, e_1, ..., e_n}.
std::vector<GammaElement> gamma_generators(const ExtensionFrame& frame, int max_power = 2);

/// Ad(gamma) sigma(idx) == sigma(ad_action(gamma, idx)) for every generator,
/// its inverse, and every window cell.
CheckResult ad_action_check(const SigmaThreeFan& fan, const std::vector<GammaElement>& gens, const WindowSpec& w,
                            Exec exec = Exec::parallel);

/// (a) Ad(gamma) C is a member for every generator, inverse and window cell.
/// (b) every extreme ray of a window cell contains log(gamma) for some
/// gamma in Gamma, found among gamma = exp(s R) with s lambda(R) = 1..max_step.
std::vector<CheckResult> strong_compatibility_check(const LazyFan& fan, const std::vector<GammaElement>& gens,
                                                    const WindowSpec& w, Exec exec = Exec::parallel,
                                                    int max_step = 720);

/// Random admissible cones: rays R>=0 lambda N with N|H' = N', N(e) in P
/// (bounded denominators), and two-generator cones whose generators commute
/// by the kernel criterion. Deterministic in the seed.
std::vector<Cone> make_corpus(const SigmaThreeParams& params, std::size_t size, std::uint64_t seed);

struct CompletenessOutcome {
  Status status = Status::pass;
  std::size_t pieces = 0;
  std::string detail;
};

/// subdivide_against for every corpus cone; precondition failures are
/// recorded per item and do not stop the run.
std::vector<CompletenessOutcome> relative_completeness(const LazyFan& fan, const std::vector<Cone>& corpus,
                                                       Exec exec = Exec::parallel);
CheckResult relative_completeness_check(const LazyFan& fan, const std::vector<Cone>& corpus,
                                        Exec exec = Exec::parallel);

/// Sub-relations reported separately: P = Q, Sigma_0 in Sigma_1,
/// Sigma_0 in Sigma_2, Sigma_1 in Sigma_3, Neron in Sigma_3, Sigma_2 cells
/// exactly covered by Sigma_3 cells. When the cube condition fails in the
/// requested scope, a single precondition result is returned.
std::vector<CheckResult> fan_relations_check(const SigmaThreeParams& params, CubeConditionScope scope,
                                             const WindowSpec& w, Exec exec = Exec::parallel);

/// Window fan axioms as a check result.
CheckResult fan_axioms_check(const LazyFan& fan, const WindowSpec& w, Exec exec = Exec::parallel);

/// Sigma_3 with sigma(0, 0) replaced by the cube with t_1 in [0, upper] and
/// the other t_j in [0, 1]. upper = 1/2 leaves a gap that Ad(Gamma) exposes;
/// upper = 3/2 overlaps sigma(0, e_1) and breaks the fan axioms.
class CorruptedSigmaThree : public LazyFan {
 public:
  CorruptedSigmaThree(SigmaThreeParams params, Rat upper);
  std::string name() const override { return "sigma3-corrupted"; }
  const GSpacePtr& gspace_ptr() const override { return base_.gspace_ptr(); }
  std::optional<Cone> cell_containing(const QMat& n) const override;
  std::vector<Cone> window_cells(const WindowSpec& w) const override;
  const Cone& corrupted_cell() const { return bad_; }

 private:
  SigmaThreeFan base_;
  Cone original_;
  Cone bad_;
};

}  // namespace relfan
