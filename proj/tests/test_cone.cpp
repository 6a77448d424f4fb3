#include "relfan/cone.hpp"
#include "relfan/errors.hpp"
#include "relfan/fixtures.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace relfan;
namespace gen = relfan::testing;

namespace {

struct FixA {
  GSpacePtr gs = make_gspace(ExtensionFrame(fixtures::fix_a()));
  const ExtensionFrame& f() const { return gs->frame(); }
  // N|H' = N' and N(e) = t e1.
  QMat at(const Rat& t) const { return f().lift({t, Rat(0)}); }
  Cone interval(const Rat& a, const Rat& b) const { return Cone::from_generators(gs, {at(a), at(b)}); }
};

std::string kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const MathError& e) {
    return e.kind();
  }
  return "";
}

}  // namespace

TEST(Cone, UnitCellHasFourFaces) {
  FixA a;
  Cone c = a.interval(0, 1);
  EXPECT_EQ(c.dim(), 2u);
  EXPECT_EQ(c.generators().size(), 2u);
  EXPECT_EQ(c.faces().size(), 4u);
}

TEST(Cone, MembershipOfHalfStep) {
  FixA a;
  Cone c = a.interval(0, 1);
  EXPECT_TRUE(c.contains(a.at(Rat(1, 2))));
  EXPECT_TRUE(c.contains(Rat(3) * a.at(Rat(1, 3))));
  EXPECT_FALSE(c.contains(a.at(Rat(3, 2))));
  EXPECT_FALSE(c.contains(a.f().lift({Rat(0), Rat(1)})));
}

TEST(Cone, AdjacentCellsMeetInSharedRay) {
  FixA a;
  Cone lower = a.interval(-1, 0);
  Cone upper = a.interval(0, 1);
  Cone shared = Cone::from_generators(a.gs, {a.at(0)});
  EXPECT_EQ(lower.intersect(upper), shared);
  EXPECT_TRUE(shared.is_face_of(lower));
  EXPECT_TRUE(shared.is_face_of(upper));
}

TEST(Cone, ValidatingConstructorRejectsBadGenerators) {
  FixA a;
  QMat n0 = a.at(0);
  EXPECT_EQ(kind_of([&] { Cone::from_generators(a.gs, {n0, Rat(-1) * n0}); }), "NotSharp");
  QMat bad_row = n0;
  bad_row(2, 0) = 1;
  EXPECT_EQ(kind_of([&] { Cone::from_generators(a.gs, {bad_row}); }), "NotInG");
  QMat semisimple(3, 3);
  semisimple(0, 0) = 1;
  semisimple(1, 1) = -1;
  ASSERT_TRUE(a.gs->contains(semisimple));
  EXPECT_EQ(kind_of([&] { Cone::from_generators(a.gs, {semisimple}); }), "NotNilpotent");
  QMat to_e2 = a.f().lift({Rat(0), Rat(1)});
  EXPECT_EQ(kind_of([&] { Cone::from_generators(a.gs, {n0, to_e2}); }), "NotCommutative");
}

TEST(Cone, ZeroConeIsFaceOfEverything) {
  FixA a;
  Cone z = Cone::zero(a.gs);
  EXPECT_TRUE(z.is_zero());
  EXPECT_TRUE(z.is_face_of(a.interval(0, 1)));
  EXPECT_EQ(z.faces().size(), 1u);
}

TEST(Cone, GSpaceBasisMatchesMembership) {
  FixA a;
  const Subspace& g = a.gs->basis();
  for (const auto& b : g.basis()) EXPECT_TRUE(a.gs->contains(a.gs->matrix(b)));
  // g = {N : N(H) in H', N|H' in sp(2)}: 3 + 2 dimensions.
  EXPECT_EQ(g.dim(), 5u);
}

TEST(FiniteFan, UnitIntervalsFormAFan) {
  FixA a;
  std::vector<Cone> cells;
  for (int n = -2; n <= 1; ++n) cells.push_back(a.interval(n, n + 1));
  FiniteFan fan = FiniteFan::closure_of(a.gs, cells);
  EXPECT_EQ(fan.size(), 1u + 5u + 4u);
  EXPECT_EQ(fan.maximal_cones().size(), 4u);
  for (Exec e : {Exec::serial, Exec::parallel}) EXPECT_TRUE(check_fan(fan, e).ok);
}

TEST(FiniteFan, OverlappingCellsAreRejectedWithWitness) {
  FixA a;
  FiniteFan fan = FiniteFan::closure_of(a.gs, {a.interval(0, 1), a.interval(Rat(1, 2), Rat(3, 2))});
  for (Exec e : {Exec::serial, Exec::parallel}) {
    auto r = check_fan(fan, e);
    ASSERT_FALSE(r.ok);
    EXPECT_EQ(r.violations.front().kind, "intersection");
    EXPECT_EQ(r.violations.front().witness.size(), 3u);
  }
}

TEST(FiniteFan, MissingFaceIsReported) {
  FixA a;
  FiniteFan fan(a.gs, {a.interval(0, 1), Cone::zero(a.gs)});
  auto r = check_fan(fan, Exec::serial);
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(r.violations.front().kind, "face-closure");
}

TEST(Admissibility, InadmissibleRayIsAPreconditionFailure) {
  FixA a;
  Cone ray = Cone::from_generators(a.gs, {a.f().lift({Rat(0), Rat(1)})});
  EXPECT_EQ(kind_of([&] { require_admissible(ray); }), "PreconditionViolated");
  EXPECT_NO_THROW(require_admissible(a.interval(0, 1)));
}

// Intervals [a, b] of N(e)/e1 form a fan exactly when two distinct ones
// overlap in at most a point.
TEST(FanProperty, IntervalFansMatchOverlapOracle) {
  gen::Rng rng(20261017);
  FixA a;
  for (int trial = 0; trial < 60; ++trial) {
    const int count = static_cast<int>(gen::uniform(rng, 2, 4));
    std::vector<std::pair<Rat, Rat>> iv;
    std::vector<Cone> cells;
    for (int i = 0; i < count; ++i) {
      Rat x = gen::random_rat(rng, 6, 2), y = gen::random_rat(rng, 6, 2);
      if (x == y) y = x + 1;
      if (y < x) std::swap(x, y);
      iv.emplace_back(x, y);
      cells.push_back(a.interval(x, y));
    }
    bool expect_ok = true;
    for (std::size_t i = 0; i < iv.size(); ++i)
      for (std::size_t j = i + 1; j < iv.size(); ++j) {
        if (iv[i] == iv[j]) continue;
        Rat lo = std::max(iv[i].first, iv[j].first), hi = std::min(iv[i].second, iv[j].second);
        if (lo < hi) expect_ok = false;
      }
    FiniteFan fan = FiniteFan::closure_of(a.gs, cells);
    EXPECT_EQ(check_fan(fan, Exec::serial).ok, expect_ok) << "trial " << trial;
    EXPECT_EQ(check_fan(fan, Exec::parallel).ok, expect_ok) << "trial " << trial;
  }
}

TEST(ConeProperty, NonnegativeCombinationsAreMembers) {
  gen::Rng rng(7);
  FixA a;
  for (int trial = 0; trial < 50; ++trial) {
    Rat x = gen::random_rat(rng, 6, 3), y = x + Rat(gen::uniform(rng, 1, 4));
    Cone c = a.interval(x, y);
    Rat s(gen::uniform(rng, 0, 5)), t(gen::uniform(rng, 0, 5));
    QMat inside = s * a.at(x) + t * a.at(y);
    EXPECT_TRUE(c.contains(inside));
    EXPECT_FALSE(c.contains(a.at(y + 1)));
    EXPECT_FALSE(c.contains(Rat(-1) * a.at(x)));
  }
}
