#include "relfan/errors.hpp"
#include "relfan/polyhedral.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace relfan;
using relfan::testing::Rng;

namespace {

Vec v(std::initializer_list<Rat> xs) { return Vec(xs); }

// Random sharp cone: generators with positive first coordinate.
std::vector<Vec> random_pointed_generators(Rng& rng, std::size_t n, std::size_t count) {
  std::vector<Vec> g;
  for (std::size_t i = 0; i < count; ++i) {
    Vec x = relfan::testing::random_vec(rng, n, 4, 2);
    x[0] = Rat(relfan::testing::uniform(rng, 1, 4));
    g.push_back(x);
  }
  return g;
}

Vec random_combination(Rng& rng, const std::vector<Vec>& gens, std::size_t n) {
  Vec x = zero_vec(n);
  for (const auto& g : gens) axpy(Rat(relfan::testing::uniform(rng, 0, 3)), g, x);
  return x;
}

long euler_sum(const std::vector<PolyCone>& faces) {
  long s = 0;
  for (const auto& f : faces) s += (f.dim() % 2 == 0) ? 1 : -1;
  return s;
}

}  // namespace

TEST(PolyCone, RayAndZero) {
  auto ray = PolyCone::from_generators(2, {v({2, 4})});
  ASSERT_EQ(ray.rays().size(), 1u);
  EXPECT_EQ(ray.rays()[0], (IntVec{1, 2}));
  EXPECT_EQ(ray.faces().size(), 2u);
  PolyCone zero(2);
  EXPECT_EQ(zero.faces().size(), 1u);
  EXPECT_TRUE(ray.has_face(zero));
  EXPECT_TRUE(zero.has_face(zero));
}

TEST(PolyCone, OppositeGeneratorsAreNotSharp) {
  EXPECT_THROW(PolyCone::from_generators(2, {v({1, 1}), v({-1, -1})}), MathError);
  EXPECT_THROW(PolyCone::from_generators(2, {v({1, 0}), v({0, 1}), v({-1, -1})}), MathError);
}

TEST(PolyCone, RedundantGeneratorsDropped) {
  auto c = PolyCone::from_generators(3, {v({1, 0, 0}), v({0, 1, 0}), v({1, 1, 0}), v({2, 1, 0})});
  EXPECT_EQ(c.rays().size(), 2u);
  EXPECT_EQ(c.dim(), 2u);
  EXPECT_TRUE(c.contains(v({Rat(1, 2), Rat(1, 3), 0})));
  EXPECT_FALSE(c.contains(v({1, -1, 0})));
  EXPECT_FALSE(c.contains(v({1, 1, 1})));
}

TEST(PolyCone, SquareConeFaces) {
  auto c = PolyCone::from_generators(3, {v({1, 0, 0}), v({1, 1, 0}), v({1, 0, 1}), v({1, 1, 1})});
  auto f = c.faces();
  EXPECT_EQ(f.size(), 1u + 4u + 4u + 1u);
  EXPECT_EQ(euler_sum(f), 0);
  auto edge = PolyCone::from_generators(3, {v({1, 0, 0}), v({1, 1, 0})});
  EXPECT_TRUE(c.has_face(edge));
  auto diagonal = PolyCone::from_generators(3, {v({1, 0, 0}), v({1, 1, 1})});
  EXPECT_FALSE(c.has_face(diagonal));
}

TEST(PolyCone, MixedAmbientRejected) {
  auto a = PolyCone::from_generators(2, {v({1, 0})});
  auto b = PolyCone::from_generators(3, {v({1, 0, 0})});
  EXPECT_THROW(a.intersect(b), MathError);
}

TEST(PolyhedralProperty, CanonicalEquality) {
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 2 + rng() % 3;
    auto g = random_pointed_generators(rng, n, 2 + rng() % 5);
    auto c = PolyCone::from_generators(n, g);
    std::vector<Vec> h;
    for (const auto& x : g) h.push_back(scale(Rat(relfan::testing::uniform(rng, 1, 5), 3), x));
    h.push_back(random_combination(rng, g, n));
    std::shuffle(h.begin(), h.end(), rng);
    EXPECT_EQ(PolyCone::from_generators(n, h), c);
  }
}

TEST(PolyhedralProperty, MembershipAndSharpness) {
  Rng rng(42);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 2 + rng() % 3;
    auto g = random_pointed_generators(rng, n, 1 + rng() % 5);
    auto c = PolyCone::from_generators(n, g);
    for (const auto& x : g) EXPECT_TRUE(c.contains(x));
    Vec p = c.interior_point();
    EXPECT_TRUE(c.contains_in_relative_interior(p));
    EXPECT_FALSE(c.contains(scale(Rat(-1), p)));
    for (int k = 0; k < 5; ++k) EXPECT_TRUE(c.contains(random_combination(rng, g, n)));
    // Facets: nonnegative on every ray and tight on dim-1 independent rays.
    for (const auto& f : c.facets()) {
      std::vector<Vec> tight;
      for (const auto& r : c.rational_rays()) {
        Rat val = dot(f, c.span().coordinates(r));
        EXPECT_GE(sgn(val), 0);
        if (is_zero(val)) tight.push_back(r);
      }
      std::size_t rk = tight.empty() ? 0 : rank(QMat::from_rows(tight, n));
      EXPECT_EQ(rk + 1, c.dim());
    }
  }
}

TEST(PolyhedralProperty, FaceLatticeEulerAndClosure) {
  Rng rng(43);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 2 + rng() % 3;
    auto c = PolyCone::from_generators(n, random_pointed_generators(rng, n, 2 + rng() % 5));
    auto faces = c.faces();
    EXPECT_EQ(euler_sum(faces), 0);
    for (const auto& f : faces) {
      EXPECT_TRUE(c.has_face(f));
      for (const auto& ff : f.faces()) EXPECT_TRUE(std::find(faces.begin(), faces.end(), ff) != faces.end());
    }
  }
}

TEST(PolyhedralProperty, IntersectionMatchesMembership) {
  Rng rng(44);
  for (int t = 0; t < 80; ++t) {
    std::size_t n = 2 + rng() % 2;
    auto g1 = random_pointed_generators(rng, n, 2 + rng() % 3);
    auto g2 = random_pointed_generators(rng, n, 2 + rng() % 3);
    auto a = PolyCone::from_generators(n, g1), b = PolyCone::from_generators(n, g2);
    auto i = a.intersect(b);
    EXPECT_TRUE(a.contains(i));
    EXPECT_TRUE(b.contains(i));
    for (int k = 0; k < 20; ++k) {
      Vec x = k % 2 ? random_combination(rng, g1, n) : relfan::testing::random_vec(rng, n, 4, 1);
      EXPECT_EQ(i.contains(x), a.contains(x) && b.contains(x));
    }
    EXPECT_EQ(i, b.intersect(a));
  }
}

TEST(ConeFromInequalities, HalfPlaneHasLine) {
  auto r = cone_from_inequalities(2, {v({1, 0})});
  EXPECT_EQ(r.rays.size(), 1u);
  EXPECT_EQ(r.lines.size(), 1u);
  auto z = cone_from_inequalities(1, {v({1}), v({-1})});
  EXPECT_TRUE(z.rays.empty());
  EXPECT_TRUE(z.lines.empty());
}
