#include "relfan/cone.hpp"

#include "relfan/errors.hpp"

#include <algorithm>

namespace relfan {

const Subspace& GSpace::basis() const {
  std::call_once(basis_once_, [this] {
    const std::size_t d = matrix_dim();
    const std::size_t n = frame_.rank();
    const QMat& g = frame_.base().pairing.gram();
    auto var = [d](std::size_t i, std::size_t j) { return i * d + j; };
    std::vector<Vec> rows;
    for (std::size_t j = 0; j < d; ++j) {
      Vec r = zero_vec(d * d);
      r[var(n, j)] = 1;
      rows.push_back(std::move(r));
    }
    // (N^T G + G N)_{ij} = sum_k N_{ki} G_{kj} + G_{ik} N_{kj}.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vec r = zero_vec(d * d);
        for (std::size_t k = 0; k < n; ++k) {
          r[var(k, i)] += g(k, j);
          r[var(k, j)] += g(i, k);
        }
        rows.push_back(std::move(r));
      }
    basis_ = kernel(QMat::from_rows(rows, d * d));
  });
  return basis_;
}

Cone Cone::zero(GSpacePtr gs) {
  const std::size_t a = gs->ambient();
  return Cone(std::move(gs), PolyCone(a));
}

Cone Cone::from_generators(GSpacePtr gs, const std::vector<QMat>& mats) {
  for (const auto& m : mats) {
    if (!gs->contains(m)) throw MathError("NotInG", "generator is not in g");
    NilpotentEndo::make(m);
  }
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j)
      if (!(mats[i] * mats[j] == mats[j] * mats[i]))
        throw MathError("NotCommutative", "generators " + std::to_string(i) + " and " + std::to_string(j) +
                                              " do not commute");
  return from_trusted_generators(std::move(gs), mats);
}

Cone Cone::from_trusted_generators(GSpacePtr gs, const std::vector<QMat>& mats) {
  std::vector<Vec> flat;
  flat.reserve(mats.size());
  for (const auto& m : mats) flat.push_back(flatten(m));
  const std::size_t a = gs->ambient();
  return Cone(std::move(gs), PolyCone::from_generators(a, flat));
}

std::vector<QMat> Cone::generators() const {
  std::vector<QMat> out;
  for (const auto& r : poly_.rays()) out.push_back(gs_->matrix(to_rat(r)));
  return out;
}

void Cone::require_same_space(const Cone& other) const {
  if (gs_ == other.gs_) return;
  if (!gs_ || !other.gs_ || gs_->ambient() != other.gs_->ambient() ||
      !(gs_->frame().n_prime() == other.gs_->frame().n_prime()) ||
      !(gs_->frame().base().pairing.gram() == other.gs_->frame().base().pairing.gram()))
    throw MathError("MixedAmbient", "cones belong to different frames");
}

bool Cone::contains(const QMat& n) const { return poly_.contains(flatten(n)); }

bool Cone::contains(const Cone& other) const {
  require_same_space(other);
  return poly_.contains(other.poly_);
}

Cone Cone::intersect(const Cone& other) const {
  require_same_space(other);
  return Cone(gs_, poly_.intersect(other.poly_));
}

std::vector<Cone> Cone::faces() const {
  std::vector<Cone> out;
  for (auto& f : poly_.faces()) out.emplace_back(gs_, std::move(f));
  return out;
}

bool Cone::is_face_of(const Cone& c) const {
  require_same_space(c);
  return c.poly_.has_face(poly_);
}

FiniteFan::FiniteFan(GSpacePtr gs, std::vector<Cone> cones) : gs_(std::move(gs)), cones_(std::move(cones)) {
  std::sort(cones_.begin(), cones_.end());
  cones_.erase(std::unique(cones_.begin(), cones_.end()), cones_.end());
}

FiniteFan FiniteFan::closure_of(GSpacePtr gs, const std::vector<Cone>& cones, Exec exec) {
  std::vector<std::vector<Cone>> faces(cones.size());
  for_each_index(cones.size(), exec, [&](std::size_t i) { faces[i] = cones[i].faces(); });
  std::vector<Cone> all;
  for (auto& f : faces) all.insert(all.end(), f.begin(), f.end());
  all.push_back(Cone::zero(gs));
  return FiniteFan(std::move(gs), std::move(all));
}

bool FiniteFan::contains(const Cone& c) const { return std::binary_search(cones_.begin(), cones_.end(), c); }

std::vector<Cone> FiniteFan::maximal_cones() const {
  std::vector<Cone> out;
  for (const auto& c : cones_) {
    bool maximal = true;
    for (const auto& d : cones_) {
      if (d.dim() <= c.dim()) continue;
      const auto& dr = d.poly().rays();
      bool subset = std::all_of(c.poly().rays().begin(), c.poly().rays().end(),
                                [&](const IntVec& r) { return std::binary_search(dr.begin(), dr.end(), r); });
      if (subset && c.is_face_of(d)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(c);
  }
  return out;
}

FanCheckResult check_fan(const FiniteFan& fan, Exec exec) {
  FanCheckResult result;
  const auto& cones = fan.cones();
  result.cones_checked = cones.size();

  std::vector<std::vector<FanViolation>> closure(cones.size());
  for_each_index(cones.size(), exec, [&](std::size_t i) {
    for (const auto& f : cones[i].faces())
      if (!fan.contains(f)) closure[i].push_back({"face-closure", "a face of a member is missing", {cones[i], f}});
  });
  for (auto& v : closure)
    for (auto& x : v) result.violations.push_back(std::move(x));

  const std::vector<Cone> pool = exec == Exec::serial ? cones : fan.maximal_cones();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j) pairs.emplace_back(i, j);
  result.pairs_checked = pairs.size();
  std::vector<std::optional<FanViolation>> bad(pairs.size());
  for_each_index(pairs.size(), exec, [&](std::size_t k) {
    const Cone& a = pool[pairs[k].first];
    const Cone& b = pool[pairs[k].second];
    Cone i = a.intersect(b);
    if (!i.is_face_of(a) || !i.is_face_of(b))
      bad[k] = FanViolation{"intersection", "intersection is not a face of both cones", {a, b, i}};
  });
  for (auto& v : bad)
    if (v) result.violations.push_back(std::move(*v));
  result.ok = result.violations.empty();
  return result;
}

bool LazyFan::is_member(const Cone& c) const {
  if (c.is_zero()) return true;
  auto cell = cell_containing(c.interior_point());
  if (!cell) return false;
  return c.is_face_of(*cell);
}

FiniteFan LazyFan::window(const WindowSpec& w, Exec exec) const {
  return FiniteFan::closure_of(gspace_ptr(), window_cells(w), exec);
}

void require_admissible(const Cone& c) {
  const ExtensionFrame& f = c.gspace().frame();
  auto check = [&](const QMat& n) {
    if (!f.restriction_scale(n))
      throw precondition_violated("cone element does not restrict to a nonnegative multiple of N'");
    if (!admissible_direction(f, n)) throw precondition_violated("cone element has no relative monodromy filtration");
  };
  for (const auto& g : c.generators()) check(g);
  if (!c.is_zero()) check(c.interior_point());
}

std::variant<Subdivision, NoCover> subdivide_against(const Cone& c, const LazyFan& fan) {
  require_admissible(c);
  if (auto host = fan.cell_containing(c.interior_point()); host && host->contains(c))
    return Subdivision{{c}, {*host}};
  auto chart = fan.grid_chart(c);
  if (!chart) return NoCover{"no cell contains the cone and the fan has no grid over it", c};

  std::vector<PolyCone> pieces{c.poly()};
  for (const auto& phi : chart->phi) {
    std::vector<PolyCone> next;
    for (const auto& p : pieces) {
      Rat lo, hi;
      bool first = true;
      for (const auto& r : p.rays()) {
        Vec rv = to_rat(r);
        Rat val = dot(phi, rv) / dot(chart->lambda, rv);
        if (first || val < lo) lo = val;
        if (first || val > hi) hi = val;
        first = false;
      }
      Int k0 = floor_rat(lo), k1 = floor_rat(hi);
      if (Rat(k1) == hi && k1 > k0) k1 -= 1;
      for (Int k = k0; k <= k1; ++k) {
        Vec lower = phi, upper = scale(Rat(-1), phi);
        axpy(Rat(-k), chart->lambda, lower);
        axpy(Rat(k + 1), chart->lambda, upper);
        PolyCone piece = p.cut(lower).cut(upper);
        if (piece.dim() == c.dim()) next.push_back(std::move(piece));
      }
    }
    pieces = std::move(next);
  }

  Subdivision out;
  for (auto& p : pieces) {
    Cone piece(c.gspace_ptr(), std::move(p));
    auto host = fan.cell_containing(piece.interior_point());
    if (!host || !host->contains(piece)) return NoCover{"a piece of the subdivision lies in no cell", piece};
    out.pieces.push_back(std::move(piece));
    out.hosts.push_back(std::move(*host));
  }
  return out;
}

}  // namespace relfan
