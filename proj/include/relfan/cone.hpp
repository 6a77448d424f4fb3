#pragma once

// Nilpotent cones in g = End(H, W, graded pairings), finite fans, lazy
// infinite fans and subdivision of a cone against a lazy fan.

#include "relfan/hodge_data.hpp"
#include "relfan/parallel.hpp"
#include "relfan/polyhedral.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>

namespace relfan {

/// The ambient space of all cones of a frame. Matrices are flattened row
/// by row into Q^{(n+1)^2}.
class GSpace {
 public:
  explicit GSpace(ExtensionFrame frame) : frame_(std::move(frame)) {}

  const ExtensionFrame& frame() const { return frame_; }
  std::size_t matrix_dim() const { return frame_.dim(); }
  std::size_t ambient() const { return frame_.dim() * frame_.dim(); }
  bool contains(const QMat& n) const { return frame_.in_g(n); }
  /// g as a subspace of the flattened matrix space (computed on first use).
  const Subspace& basis() const;

  Vec flat(const QMat& m) const { return flatten(m); }
  QMat matrix(const Vec& v) const { return unflatten(v, matrix_dim()); }

 private:
  ExtensionFrame frame_;
  mutable std::once_flag basis_once_;
  mutable Subspace basis_;
};

using GSpacePtr = std::shared_ptr<const GSpace>;

inline GSpacePtr make_gspace(ExtensionFrame frame) { return std::make_shared<const GSpace>(std::move(frame)); }

/// A sharp rational nilpotent cone with commuting generators, stored by
/// its canonical extreme rays.
class Cone {
 public:
  Cone() = default;
  /// Trusted constructor: no nilpotency or commutation checks.
  Cone(GSpacePtr gs, PolyCone poly) : gs_(std::move(gs)), poly_(std::move(poly)) {}
  static Cone zero(GSpacePtr gs);

  /// Validating constructor. Throws MathError with kind NotInG,
  /// NotNilpotent, NotCommutative or NotSharp.
  static Cone from_generators(GSpacePtr gs, const std::vector<QMat>& mats);
  /// Same without the validity checks (generators known to be valid).
  static Cone from_trusted_generators(GSpacePtr gs, const std::vector<QMat>& mats);

  const GSpace& gspace() const { return *gs_; }
  const GSpacePtr& gspace_ptr() const { return gs_; }
  const PolyCone& poly() const { return poly_; }
  std::size_t dim() const { return poly_.dim(); }
  bool is_zero() const { return poly_.is_zero(); }

  /// Extreme rays as primitive integral matrices, canonical order.
  std::vector<QMat> generators() const;
  QMat interior_point() const { return gs_->matrix(poly_.interior_point()); }

  bool contains(const QMat& n) const;
  bool contains(const Cone& other) const;
  Cone intersect(const Cone& other) const;
  std::vector<Cone> faces() const;
  bool is_face_of(const Cone& c) const;

  friend bool operator==(const Cone& a, const Cone& b) { return a.poly_ == b.poly_; }
  friend bool operator<(const Cone& a, const Cone& b) { return a.poly_ < b.poly_; }

 private:
  GSpacePtr gs_;
  PolyCone poly_;

  void require_same_space(const Cone& other) const;
};

/// A finite set of cones (sorted, without repetitions).
class FiniteFan {
 public:
  FiniteFan() = default;
  FiniteFan(GSpacePtr gs, std::vector<Cone> cones);
  /// The cones together with all their faces.
  static FiniteFan closure_of(GSpacePtr gs, const std::vector<Cone>& cones, Exec exec = Exec::parallel);

  const std::vector<Cone>& cones() const { return cones_; }
  std::size_t size() const { return cones_.size(); }
  bool contains(const Cone& c) const;
  /// Cones that are not a proper face of another member.
  std::vector<Cone> maximal_cones() const;
  const GSpacePtr& gspace_ptr() const { return gs_; }

 private:
  GSpacePtr gs_;
  std::vector<Cone> cones_;
};

struct FanViolation {
  std::string kind;  // "face-closure" or "intersection"
  std::string detail;
  std::vector<Cone> witness;
};

struct FanCheckResult {
  bool ok = true;
  std::size_t cones_checked = 0;
  std::size_t pairs_checked = 0;
  std::vector<FanViolation> violations;
};

/// Face closure and "pairwise intersections are faces of both". The
/// parallel path checks pairs of maximal cones only (sufficient once the
/// fan is face-closed); the serial path is the naive all-pairs reference.
FanCheckResult check_fan(const FiniteFan& fan, Exec exec = Exec::parallel);

/// Affine grid of a cell structure: cell coordinates are phi_j(N)/lambda(N)
/// and cells are unit cubes in those coordinates. Functionals act on
/// flattened matrices.
struct GridChart {
  Vec lambda;
  std::vector<Vec> phi;
};

struct WindowSpec {
  int bound = 2;
  /// Representatives of P/Q to include (only used by the sigma-three fan).
  std::vector<Vec> cosets;
};

/// An infinite fan given intensionally.
class LazyFan {
 public:
  virtual ~LazyFan() = default;
  virtual std::string name() const = 0;
  virtual const GSpacePtr& gspace_ptr() const = 0;
  /// A maximal cell containing n, or nullopt when no member contains n.
  virtual std::optional<Cone> cell_containing(const QMat& n) const = 0;
  /// Maximal cells of a bounded window (faces are added by window()).
  virtual std::vector<Cone> window_cells(const WindowSpec& w) const = 0;
  /// Chart for cutting c along cell boundaries, or nullopt if the fan has
  /// no grid covering c.
  virtual std::optional<GridChart> grid_chart(const Cone& c) const { (void)c; return std::nullopt; }

  /// c is {0} or a face of the cell containing its interior point.
  virtual bool is_member(const Cone& c) const;
  FiniteFan window(const WindowSpec& w, Exec exec = Exec::parallel) const;
};

struct Subdivision {
  std::vector<Cone> pieces;
  std::vector<Cone> hosts;
};

struct NoCover {
  std::string reason;
  std::optional<Cone> witness;
};

/// Requires every generator N of c to map H into H', restrict to a
/// nonnegative multiple of N', and admit M(N, W), and likewise for the
/// interior point; otherwise throws PreconditionViolated.
void require_admissible(const Cone& c);

/// Cuts c along the fan's grid until every piece sits in a cell.
std::variant<Subdivision, NoCover> subdivide_against(const Cone& c, const LazyFan& fan);

}  // namespace relfan
