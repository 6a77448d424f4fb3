#include "relfan/polyhedral.hpp"

#include "relfan/errors.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <set>

namespace relfan {

namespace {

using Bits = boost::dynamic_bitset<>;

struct Ray {
  Vec v;
  Bits tight;
};

Vec normalized(const Vec& v) { return to_rat(primitive_direction(v)); }

}  // namespace

RaysAndLines cone_from_inequalities(std::size_t dim, const std::vector<Vec>& inequalities) {
  std::vector<Vec> lines;
  for (std::size_t i = 0; i < dim; ++i) lines.push_back(unit_vec(dim, i));
  std::vector<Ray> rays;
  std::size_t processed = 0;

  for (const auto& a : inequalities) {
    if (is_zero(a)) continue;
    for (auto& r : rays) r.tight.push_back(false);
    auto line_it = std::find_if(lines.begin(), lines.end(), [&](const Vec& l) { return !is_zero(dot(a, l)); });
    if (line_it != lines.end()) {
      Vec l = *line_it;
      lines.erase(line_it);
      Rat al = dot(a, l);
      if (sgn(al) < 0) {
        l = scale(Rat(-1), l);
        al = -al;
      }
      for (auto& other : lines) {
        Rat c = dot(a, other);
        if (!is_zero(c)) axpy(-c / al, l, other);
      }
      for (auto& r : rays) {
        Rat c = dot(a, r.v);
        if (!is_zero(c)) {
          axpy(-c / al, l, r.v);
          r.v = normalized(r.v);
        }
        r.tight[processed] = true;
      }
      Bits t(processed + 1);
      t.set();
      t[processed] = false;
      rays.push_back({normalized(l), t});
    } else {
      std::vector<Rat> s(rays.size());
      for (std::size_t i = 0; i < rays.size(); ++i) s[i] = dot(a, rays[i].v);
      const std::size_t pointed_dim = dim - lines.size();
      std::vector<Ray> next;
      for (std::size_t i = 0; i < rays.size(); ++i) {
        if (sgn(s[i]) < 0) continue;
        Ray r = rays[i];
        r.tight[processed] = sgn(s[i]) == 0;
        next.push_back(std::move(r));
      }
      for (std::size_t p = 0; p < rays.size(); ++p) {
        if (sgn(s[p]) <= 0) continue;
        for (std::size_t n = 0; n < rays.size(); ++n) {
          if (sgn(s[n]) >= 0) continue;
          Bits common = rays[p].tight & rays[n].tight;
          if (pointed_dim >= 2 && common.count() + 2 < pointed_dim) continue;
          bool adjacent = true;
          for (std::size_t o = 0; o < rays.size() && adjacent; ++o)
            if (o != p && o != n && common.is_subset_of(rays[o].tight)) adjacent = false;
          if (!adjacent) continue;
          Vec v = scale(s[p], rays[n].v);
          axpy(-s[n], rays[p].v, v);
          common[processed] = true;
          next.push_back({normalized(v), common});
        }
      }
      rays = std::move(next);
    }
    ++processed;
  }
  RaysAndLines out;
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  out.lines = std::move(lines);
  return out;
}

bool lex_less(const IntVec& a, const IntVec& b) { return a < b; }

PolyCone PolyCone::from_generators(std::size_t ambient, const std::vector<Vec>& generators) {
  PolyCone c(ambient);
  std::vector<Vec> gens;
  for (const auto& g : generators) {
    if (g.size() != ambient) throw precondition_violated("generator has wrong ambient dimension");
    if (!relfan::is_zero(g)) gens.push_back(g);
  }
  if (gens.empty()) return c;
  c.span_ = Subspace::span(ambient, gens);
  const std::size_t r = c.span_.dim();
  std::vector<Vec> coords;
  for (const auto& g : gens) coords.push_back(c.span_.coordinates(g));
  auto dual = cone_from_inequalities(r, coords);
  if (!dual.lines.empty()) throw MathError("InvariantViolated", "dual cone of a spanning set has lines");
  c.facets_ = std::move(dual.rays);
  std::set<IntVec> extreme;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<Vec> tight;
    bool positive_somewhere = false;
    for (const auto& f : c.facets_) {
      Rat v = dot(f, coords[i]);
      if (relfan::is_zero(v))
        tight.push_back(f);
      else
        positive_somewhere = true;
    }
    if (!positive_somewhere) throw MathError("NotSharp", "the cone contains a line");
    std::size_t rk = tight.empty() ? 0 : rank(QMat::from_rows(tight, r));
    if (rk + 1 == r) extreme.insert(primitive_direction(gens[i]));
  }
  c.rays_.assign(extreme.begin(), extreme.end());
  return c;
}

std::vector<Vec> PolyCone::rational_rays() const {
  std::vector<Vec> out;
  for (const auto& r : rays_) out.push_back(to_rat(r));
  return out;
}

bool PolyCone::contains(const Vec& x) const {
  if (x.size() != ambient_) throw MathError("MixedAmbient", "vector and cone live in different spaces");
  if (!span_.contains(x)) return false;
  Vec c = coordinates(x);
  for (const auto& f : facets_)
    if (sgn(dot(f, c)) < 0) return false;
  return true;
}

bool PolyCone::contains_in_relative_interior(const Vec& x) const {
  if (!span_.contains(x)) return false;
  Vec c = coordinates(x);
  for (const auto& f : facets_)
    if (sgn(dot(f, c)) <= 0) return false;
  return true;
}

bool PolyCone::contains(const PolyCone& other) const {
  if (other.ambient_ != ambient_) throw MathError("MixedAmbient", "cones live in different spaces");
  for (const auto& r : other.rays_)
    if (!contains(to_rat(r))) return false;
  return true;
}

Vec PolyCone::interior_point() const {
  Vec s = zero_vec(ambient_);
  for (const auto& r : rays_)
    for (std::size_t i = 0; i < ambient_; ++i) s[i] += r[i];
  return s;
}

PolyCone PolyCone::intersect(const PolyCone& other) const {
  if (other.ambient_ != ambient_) throw MathError("MixedAmbient", "cones live in different spaces");
  if (is_zero() || other.is_zero()) return PolyCone(ambient_);
  Subspace common = span_.intersect(other.span_);
  const std::size_t k = common.dim();
  if (k == 0) return PolyCone(ambient_);
  const auto& t = common.basis();
  std::vector<Vec> c1, c2;
  for (const auto& v : t) {
    c1.push_back(coordinates(v));
    c2.push_back(other.coordinates(v));
  }
  std::vector<Vec> ineqs;
  auto pull_back = [&](const std::vector<Vec>& facets, const std::vector<Vec>& coords) {
    for (const auto& f : facets) {
      Vec a(k);
      for (std::size_t l = 0; l < k; ++l) a[l] = dot(f, coords[l]);
      ineqs.push_back(std::move(a));
    }
  };
  pull_back(facets_, c1);
  pull_back(other.facets_, c2);
  auto gen = cone_from_inequalities(k, ineqs);
  if (!gen.lines.empty()) throw MathError("InvariantViolated", "intersection of sharp cones has lines");
  std::vector<Vec> amb;
  for (const auto& z : gen.rays) {
    Vec x = zero_vec(ambient_);
    for (std::size_t l = 0; l < k; ++l)
      if (!relfan::is_zero(z[l])) axpy(z[l], t[l], x);
    amb.push_back(std::move(x));
  }
  return from_generators(ambient_, amb);
}

PolyCone PolyCone::cut(const Vec& h) const {
  if (h.size() != ambient_) throw MathError("MixedAmbient", "functional and cone live in different spaces");
  if (is_zero()) return *this;
  bool all_nonneg = true, all_nonpos = true;
  for (const auto& r : rays_) {
    int sg = sgn(dot(h, to_rat(r)));
    if (sg < 0) all_nonneg = false;
    if (sg > 0) all_nonpos = false;
  }
  if (all_nonneg) return *this;
  if (all_nonpos) {
    // Only the face on the hyperplane survives.
    std::vector<Vec> tight;
    for (const auto& r : rays_)
      if (relfan::is_zero(dot(h, to_rat(r)))) tight.push_back(to_rat(r));
    return from_generators(ambient_, tight);
  }
  const auto& b = span_.basis();
  const std::size_t k = b.size();
  // h restricted to the span, in span coordinates: x = sum_l c_l b_l.
  Vec hc(k);
  for (std::size_t l = 0; l < k; ++l) hc[l] = dot(h, b[l]);
  std::vector<Vec> ineqs = facets_;
  ineqs.push_back(hc);
  auto gen = cone_from_inequalities(k, ineqs);
  std::vector<Vec> amb;
  for (const auto& z : gen.rays) {
    Vec x = zero_vec(ambient_);
    for (std::size_t l = 0; l < k; ++l)
      if (!relfan::is_zero(z[l])) axpy(z[l], b[l], x);
    amb.push_back(std::move(x));
  }
  return from_generators(ambient_, amb);
}

std::vector<std::vector<std::size_t>> PolyCone::face_ray_sets() const {
  std::vector<Vec> ray_coords;
  for (const auto& r : rays_) ray_coords.push_back(coordinates(to_rat(r)));
  std::vector<Bits> facet_sets;
  for (const auto& f : facets_) {
    Bits b(rays_.size());
    for (std::size_t i = 0; i < rays_.size(); ++i) b[i] = relfan::is_zero(dot(f, ray_coords[i]));
    facet_sets.push_back(std::move(b));
  }
  Bits all(rays_.size());
  all.set();
  std::set<Bits> seen{all};
  std::vector<Bits> queue{all};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (const auto& fs : facet_sets) {
      Bits s = queue[q] & fs;
      if (seen.insert(s).second) queue.push_back(s);
    }
  }
  if (rays_.empty()) return {{}};
  std::vector<std::vector<std::size_t>> out;
  for (const auto& b : seen) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < rays_.size(); ++i)
      if (b[i]) idx.push_back(i);
    out.push_back(std::move(idx));
  }
  return out;
}

std::vector<PolyCone> PolyCone::faces() const {
  std::vector<PolyCone> out;
  for (const auto& idx : face_ray_sets()) {
    std::vector<Vec> gens;
    for (auto i : idx) gens.push_back(to_rat(rays_[i]));
    out.push_back(from_generators(ambient_, gens));
  }
  std::sort(out.begin(), out.end(), [](const PolyCone& a, const PolyCone& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.rays_ < b.rays_;
  });
  return out;
}

bool PolyCone::has_face(const PolyCone& f) const {
  if (f.ambient_ != ambient_) throw MathError("MixedAmbient", "cones live in different spaces");
  if (f.is_zero()) return true;
  for (const auto& r : f.rays_)
    if (!std::binary_search(rays_.begin(), rays_.end(), r)) return false;
  std::vector<Vec> fr;
  for (const auto& r : f.rays_) fr.push_back(coordinates(to_rat(r)));
  std::vector<const Vec*> tight;
  for (const auto& fa : facets_)
    if (std::all_of(fr.begin(), fr.end(), [&](const Vec& x) { return relfan::is_zero(dot(fa, x)); })) tight.push_back(&fa);
  std::size_t count = 0;
  for (const auto& r : rays_) {
    Vec c = coordinates(to_rat(r));
    if (std::all_of(tight.begin(), tight.end(), [&](const Vec* fa) { return relfan::is_zero(dot(*fa, c)); })) ++count;
  }
  return count == f.rays_.size();
}

bool operator<(const PolyCone& a, const PolyCone& b) {
  if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
  return a.rays_ < b.rays_;
}

}  // namespace relfan
