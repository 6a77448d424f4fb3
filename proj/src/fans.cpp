#include "relfan/fans.hpp"

#include "relfan/errors.hpp"

namespace relfan {

namespace {

std::vector<Vec> columns(const QMat& m) {
  std::vector<Vec> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.col(j));
  return out;
}

// Functionals dual to independent vectors: completes them with unit vectors
// to a basis and inverts. Row j evaluates to delta_{ij} on vectors[i].
std::vector<Vec> dual_functionals(std::size_t n, const std::vector<Vec>& vectors) {
  std::vector<Vec> basis = vectors;
  Subspace span = Subspace::span(n, vectors);
  if (span.dim() != vectors.size()) throw MathError("InvariantViolated", "vectors are not independent");
  for (std::size_t i = 0; i < n && basis.size() < n; ++i) {
    Vec u = unit_vec(n, i);
    if (span.contains(u)) continue;
    basis.push_back(u);
    span = span + Subspace::span(n, {u});
  }
  auto inv = inverse(QMat::from_columns(basis, n));
  if (!inv) throw MathError("InvariantViolated", "completed basis is singular");
  std::vector<Vec> out;
  for (std::size_t j = 0; j < vectors.size(); ++j) out.push_back(inv->row(j));
  return out;
}

// Coordinates of v along independent vectors; nullopt if v is outside their span.
std::optional<Vec> coordinates_in(const std::vector<Vec>& vectors, const Vec& v) {
  if (vectors.empty()) return is_zero(v) ? std::optional<Vec>(Vec{}) : std::nullopt;
  return solve(QMat::from_columns(vectors, v.size()), v);
}

// Flattened functional N -> mu(N(e)).
Vec on_image_of_e(const GSpace& gs, const Vec& mu) {
  const std::size_t d = gs.matrix_dim();
  const std::size_t e = gs.frame().e_index();
  Vec out = zero_vec(gs.ambient());
  for (std::size_t i = 0; i < mu.size(); ++i) out[i * d + e] = mu[i];
  return out;
}

std::optional<Vec> normalized_image(const ExtensionFrame& f, const QMat& n) {
  auto lambda = f.restriction_scale(n);
  if (!lambda || sgn(*lambda) <= 0) return std::nullopt;
  return scale(Rat(1) / *lambda, f.image_of_e(n));
}

}  // namespace

PQ compute_PQ(const ExtensionFrame& frame) {
  const Subspace& im = frame.image_n_prime();
  const Subspace& ker = frame.kernel_n_prime();
  const Subspace& w2 = frame.W_prime().at(-2);
  PQ out;
  out.p = im + w2;
  out.q = ker.intersect(w2);
  out.p_alternative = frame.weight_k() == -1 ? im : out.p;
  out.q_alternative = ker.intersect(out.p_alternative);
  return out;
}

SigmaThreeParams make_params(GSpacePtr gs, const ZLattice& L) {
  const ExtensionFrame& f = gs->frame();
  const std::size_t n = f.rank();
  if (L.ambient() != n) throw precondition_violated("L lives in the wrong space");
  ZLattice minimal = ZLattice::standard(n) + ZLattice::generated_by(n, columns(f.n_prime()));
  if (!L.contains(minimal)) throw precondition_violated("L does not contain H' + N'(H')");

  SigmaThreeParams p;
  p.gs = std::move(gs);
  p.pq = compute_PQ(f);
  p.L = L;
  p.p_cap_l = L.intersect(p.pq.p);
  p.q_cap_l = L.intersect(p.pq.q);
  p.basis_e = p.q_cap_l.basis();

  const std::vector<Vec> b = p.p_cap_l.basis();
  const std::size_t m = p.basis_e.size();
  const std::size_t r = b.size();
  if (m == 0) {
    p.basis_f = b;
  } else if (m < r) {
    // Q cap L is saturated in P cap L, so its Smith form is [I 0] and the
    // trailing rows of v^{-1} complete it to a basis.
    ZMat e(m, r);
    for (std::size_t j = 0; j < m; ++j) {
      auto c = coordinates_in(b, p.basis_e[j]);
      if (!c) throw MathError("InvariantViolated", "Q cap L is not inside P cap L");
      for (std::size_t l = 0; l < r; ++l) e(j, l) = (*c)[l].get_num();
    }
    SmithResult snf = smith(e);
    for (std::size_t j = 0; j < m; ++j)
      if (snf.d(j, j) != 1) throw MathError("InvariantViolated", "Q cap L is not saturated in P cap L");
    auto vinv = inverse(to_rat(snf.v));
    if (!vinv) throw MathError("InvariantViolated", "Smith transform is singular");
    for (std::size_t i = m; i < r; ++i) {
      Vec fi = zero_vec(n);
      for (std::size_t l = 0; l < r; ++l)
        if (!is_zero((*vinv)(i, l))) axpy((*vinv)(i, l), b[l], fi);
      p.basis_f.push_back(std::move(fi));
    }
  }

  std::vector<Vec> ef = p.basis_e;
  ef.insert(ef.end(), p.basis_f.begin(), p.basis_f.end());
  auto dual = dual_functionals(n, ef);
  p.e_functionals.assign(dual.begin(), dual.begin() + static_cast<std::ptrdiff_t>(m));
  return p;
}

SigmaThreeParams default_params(GSpacePtr gs) {
  const ExtensionFrame& f = gs->frame();
  const std::size_t n = f.rank();
  ZLattice L = ZLattice::standard(n) + ZLattice::generated_by(n, columns(f.n_prime()));
  return make_params(std::move(gs), L);
}

PCoordinates p_coordinates(const SigmaThreeParams& params, const Vec& x) {
  if (!params.pq.p.contains(x)) throw precondition_violated("vector is not in P");
  std::vector<Vec> ef = params.basis_e;
  ef.insert(ef.end(), params.basis_f.begin(), params.basis_f.end());
  auto c = coordinates_in(ef, x);
  if (!c) throw MathError("InvariantViolated", "P cap L does not span P");
  const auto m = static_cast<std::ptrdiff_t>(params.m());
  return {Vec(c->begin(), c->begin() + m), Vec(c->begin() + m, c->end())};
}

Vec canonical_coset(const SigmaThreeParams& params, const Vec& x) {
  if (!params.pq.p.contains(x)) throw precondition_violated("vector is not in P");
  return params.pq.q.reduce(x);
}

Vec section(const SigmaThreeParams& params, const Vec& x) {
  PCoordinates c = p_coordinates(params, x);
  Vec out = zero_vec(x.size());
  for (std::size_t i = 0; i < c.beta.size(); ++i)
    if (!is_zero(c.beta[i])) axpy(c.beta[i], params.basis_f[i], out);
  return out;
}

Int a_of(const SigmaThreeParams& params, const Vec& x) {
  PCoordinates c = p_coordinates(params, x);
  Int from_section = lcm_denominators(c.beta);
  Int from_quotient = order_in_quotient(x, params.p_cap_l, params.pq.q);
  if (from_section != from_quotient)
    throw MathError("InvariantViolated", "the two definitions of a(x) disagree");
  return from_section;
}

std::vector<QMat> sigma_cell_generators(const SigmaThreeParams& params, const CellIndex& idx) {
  const std::size_t m = params.m();
  if (idx.n.size() != m) throw precondition_violated("cell index has the wrong length");
  const ExtensionFrame& f = params.frame();
  const Rat inv_a = Rat(1) / Rat(a_of(params, idx.x));
  const Vec s = section(params, idx.x);
  std::vector<QMat> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    Vec v = s;
    for (std::size_t j = 0; j < m; ++j) {
      Int t = idx.n[j] + Int((mask >> j) & 1U);
      if (t != 0) axpy(inv_a * Rat(t), params.basis_e[j], v);
    }
    out.push_back(f.lift(v));
  }
  return out;
}

Cone sigma_cell(const SigmaThreeParams& params, const CellIndex& idx) {
  return Cone::from_trusted_generators(params.gs, sigma_cell_generators(params, idx));
}

std::optional<CellIndex> cell_index_of(const SigmaThreeParams& params, const QMat& n) {
  auto v = normalized_image(params.frame(), n);
  if (!v || !params.pq.p.contains(*v)) return std::nullopt;
  CellIndex idx;
  idx.x = canonical_coset(params, *v);
  const Rat a(a_of(params, idx.x));
  PCoordinates c = p_coordinates(params, *v);
  for (const auto& alpha : c.alpha) idx.n.push_back(floor_rat(a * alpha));
  return idx;
}

std::optional<Cone> SigmaThreeFan::cell_containing(const QMat& n) const {
  auto idx = cell_index_of(params_, n);
  if (!idx) return std::nullopt;
  return sigma_cell(params_, *idx);
}

std::vector<CellIndex> SigmaThreeFan::window_indices(const WindowSpec& w) const {
  std::vector<Vec> cosets;
  if (w.cosets.empty()) cosets.push_back(zero_vec(params_.frame().rank()));
  for (const auto& x : w.cosets) {
    Vec c = canonical_coset(params_, x);
    if (std::find(cosets.begin(), cosets.end(), c) == cosets.end()) cosets.push_back(std::move(c));
  }
  std::vector<CellIndex> out;
  for (const auto& x : cosets)
    for (auto& n : box_points(params_.m(), w.bound)) out.push_back({x, std::move(n)});
  return out;
}

std::vector<Cone> SigmaThreeFan::window_cells(const WindowSpec& w) const {
  auto idx = window_indices(w);
  std::vector<Cone> out(idx.size());
  for_each_index(idx.size(), Exec::parallel, [&](std::size_t i) { out[i] = sigma_cell(params_, idx[i]); });
  return out;
}

std::optional<GridChart> SigmaThreeFan::grid_chart(const Cone& c) const {
  const ExtensionFrame& f = params_.frame();
  if (f.n_prime().is_zero() || c.is_zero()) return std::nullopt;
  std::optional<Vec> x;
  for (const auto& g : c.generators()) {
    auto v = normalized_image(f, g);
    if (!v || !params_.pq.p.contains(*v)) return std::nullopt;
    Vec cx = canonical_coset(params_, *v);
    if (x && !(*x == cx)) return std::nullopt;
    x = std::move(cx);
  }
  const GSpace& gs = *params_.gs;
  GridChart chart;
  chart.lambda = lambda_functional(gs);
  const Rat a(a_of(params_, *x));
  const Vec s = section(params_, *x);
  for (const auto& mu : params_.e_functionals) {
    Vec phi = on_image_of_e(gs, scale(a, mu));
    axpy(-a * dot(mu, s), chart.lambda, phi);
    chart.phi.push_back(std::move(phi));
  }
  return chart;
}

RayFan::RayFan(GSpacePtr gs, Kind kind) : gs_(std::move(gs)), kind_(kind) {
  const ExtensionFrame& f = gs_->frame();
  const std::size_t n = f.rank();
  switch (kind_) {
    case Kind::sigma0:
      lattice_ = ZLattice::generated_by(n, columns(f.n_prime()));
      break;
    case Kind::sigma1:
      lattice_ = ZLattice::standard(n).intersect(compute_PQ(f).q);
      break;
    case Kind::neron: {
      // gamma' - 1 = N' u with u = sum_j N'^j/(j+1)! invertible and
      // commuting with N', so {N'a : (gamma'-1)a in H'} = u^{-1}(Im N' cap H').
      const QMat& np = f.n_prime();
      QMat u = QMat::identity(n);
      QMat term = QMat::identity(n);
      Rat fact = 1;
      for (std::size_t j = 1; j <= n; ++j) {
        term = term * np;
        if (term.is_zero()) break;
        fact *= Rat(static_cast<long>(j + 1));
        u += Rat(1 / fact) * term;
      }
      auto uinv = inverse(u);
      if (!uinv) throw MathError("InvariantViolated", "u is not invertible");
      std::vector<Vec> gens;
      for (const auto& b : ZLattice::standard(n).intersect(f.image_n_prime()).basis())
        gens.push_back(uinv->apply(b));
      lattice_ = ZLattice::generated_by(n, gens);
      break;
    }
  }
}

std::string RayFan::name() const {
  switch (kind_) {
    case Kind::sigma0: return "sigma0";
    case Kind::sigma1: return "sigma1";
    case Kind::neron: return "neron";
  }
  return "";
}

Cone RayFan::ray(const Vec& image_of_e) const {
  return Cone::from_trusted_generators(gs_, {gs_->frame().lift(image_of_e)});
}

std::optional<Cone> RayFan::cell_containing(const QMat& n) const {
  auto v = normalized_image(gs_->frame(), n);
  if (!v || !lattice_.contains(*v)) return std::nullopt;
  return ray(*v);
}

std::vector<Cone> RayFan::window_cells(const WindowSpec& w) const {
  const auto b = lattice_.basis();
  std::vector<Cone> out;
  for (const auto& c : box_points(b.size(), w.bound)) {
    Vec v = zero_vec(gs_->frame().rank());
    for (std::size_t i = 0; i < b.size(); ++i)
      if (c[i] != 0) axpy(Rat(c[i]), b[i], v);
    out.push_back(ray(v));
  }
  return out;
}

CubeCondition check_cube_condition(const ExtensionFrame& frame) {
  const auto& limit = frame.base().limit_hodge_numbers;
  if (!limit) throw MathError("MissingHodgeData", "no Hodge numbers declared for gr^{W'}");
  CubeCondition c;
  c.n_prime_squared_zero = (frame.n_prime() * frame.n_prime()).is_zero();
  c.gr0_type_00 = std::all_of(limit->begin(), limit->end(), [](const GradedHodgeNumber& h) {
    return h.weight != 0 || h.count == 0 || (h.p == 0 && h.q == 0);
  });
  return c;
}

CubeFan::CubeFan(GSpacePtr gs, CubeConditionScope scope) : gs_(std::move(gs)) {
  const ExtensionFrame& f = gs_->frame();
  if (!check_cube_condition(f).holds(scope))
    throw MathError("CubeConditionViolated", "Sigma_2 needs N'^2 = 0 and gr^{W'}_0 of type (0,0)");
  basis_ = ZLattice::generated_by(f.rank(), columns(f.n_prime())).basis();
  span_ = Subspace::span(f.rank(), basis_);
}

std::vector<QMat> CubeFan::cell_generators(const IntVec& n) const {
  const std::size_t m = basis_.size();
  if (n.size() != m) throw precondition_violated("cell index has the wrong length");
  std::vector<QMat> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    Vec v = zero_vec(gs_->frame().rank());
    for (std::size_t j = 0; j < m; ++j) {
      Int t = n[j] + Int((mask >> j) & 1U);
      if (t != 0) axpy(Rat(t), basis_[j], v);
    }
    out.push_back(gs_->frame().lift(v));
  }
  return out;
}

Cone CubeFan::cell(const IntVec& n) const { return Cone::from_trusted_generators(gs_, cell_generators(n)); }

std::optional<Cone> CubeFan::cell_containing(const QMat& n) const {
  auto v = normalized_image(gs_->frame(), n);
  if (!v) return std::nullopt;
  auto c = coordinates_in(basis_, *v);
  if (!c) return std::nullopt;
  IntVec idx;
  for (const auto& x : *c) idx.push_back(floor_rat(x));
  return cell(idx);
}

std::vector<Cone> CubeFan::window_cells(const WindowSpec& w) const {
  auto pts = box_points(basis_.size(), w.bound);
  std::vector<Cone> out(pts.size());
  for_each_index(pts.size(), Exec::parallel, [&](std::size_t i) { out[i] = cell(pts[i]); });
  return out;
}

std::optional<GridChart> CubeFan::grid_chart(const Cone& c) const {
  const ExtensionFrame& f = gs_->frame();
  if (f.n_prime().is_zero() || c.is_zero()) return std::nullopt;
  for (const auto& g : c.generators()) {
    auto v = normalized_image(f, g);
    if (!v || !span_.contains(*v)) return std::nullopt;
  }
  GridChart chart;
  chart.lambda = lambda_functional(*gs_);
  for (const auto& mu : dual_functionals(f.rank(), basis_)) chart.phi.push_back(on_image_of_e(*gs_, mu));
  return chart;
}

std::vector<IntVec> box_points(const IntVec& lo, const IntVec& hi) {
  std::vector<IntVec> out;
  for (std::size_t j = 0; j < lo.size(); ++j)
    if (hi[j] < lo[j]) return out;
  IntVec cur = lo;
  while (true) {
    out.push_back(cur);
    std::size_t j = cur.size();
    while (j > 0) {
      --j;
      if (cur[j] < hi[j]) {
        cur[j] += 1;
        break;
      }
      cur[j] = lo[j];
      if (j == 0) return out;
    }
    if (cur.empty()) return out;
  }
}

std::vector<IntVec> box_points(std::size_t dim, int bound) {
  return box_points(IntVec(dim, Int(-bound)), IntVec(dim, Int(bound)));
}

Vec lambda_functional(const GSpace& gs) {
  const QMat& np = gs.frame().n_prime();
  const std::size_t d = gs.matrix_dim();
  Vec out = zero_vec(gs.ambient());
  for (std::size_t i = 0; i < np.rows(); ++i)
    for (std::size_t j = 0; j < np.cols(); ++j)
      if (!is_zero(np(i, j))) {
        out[i * d + j] = Rat(1) / np(i, j);
        return out;
      }
  return out;
}

}  // namespace relfan
