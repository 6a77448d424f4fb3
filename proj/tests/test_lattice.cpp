#include "relfan/errors.hpp"
#include "relfan/lattice.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace relfan;
using relfan::testing::Rng;

namespace {

Vec v(std::initializer_list<Rat> xs) { return Vec(xs); }

ZMat z(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVec> r;
  for (const auto& row : rows) {
    IntVec x;
    for (long a : row) x.emplace_back(a);
    r.push_back(x);
  }
  return ZMat::from_rows(r, r.front().size());
}

bool is_diagonal_chain(const ZMat& d) {
  std::size_t k = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && sgn(d(i, j)) != 0) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (sgn(d(i, i)) < 0) return false;
    if (i + 1 < k && sgn(d(i, i)) != 0 && !mpz_divisible_p(d(i + 1, i + 1).get_mpz_t(), d(i, i).get_mpz_t()))
      return false;
    if (i + 1 < k && sgn(d(i, i)) == 0 && sgn(d(i + 1, i + 1)) != 0) return false;
  }
  return true;
}

Int abs_det(const ZMat& m) { return Rat(abs(determinant(to_rat(m)))).get_num(); }

}  // namespace

TEST(Smith, DiagonalTwoThree) {
  auto r = smith(z({{2, 0}, {0, 3}}));
  EXPECT_EQ(r.d, z({{1, 0}, {0, 6}}));
}

TEST(Smith, IdentityAndScalar) {
  EXPECT_EQ(smith(ZMat::identity(3)).d, ZMat::identity(3));
  EXPECT_EQ(smith(z({{6}})).d, z({{6}}));
}

TEST(SmithProperty, FactorizationIsExact) {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    ZMat m = relfan::testing::random_zmat(rng, r, c);
    auto s = smith(m);
    EXPECT_EQ(s.u * m * s.v, s.d);
    EXPECT_EQ(abs_det(s.u), 1);
    EXPECT_EQ(abs_det(s.v), 1);
    EXPECT_TRUE(is_diagonal_chain(s.d));
  }
}

TEST(HermiteProperty, TransformAndShape) {
  Rng rng(22);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    ZMat m = relfan::testing::random_zmat(rng, r, c);
    auto h = hermite(m);
    EXPECT_EQ(abs_det(h.u), 1);
    ZMat um = h.u * m;
    for (std::size_t i = 0; i < h.h.rows(); ++i) EXPECT_EQ(um.row(i), h.h.row(i));
    for (std::size_t i = h.h.rows(); i < um.rows(); ++i)
      for (const auto& x : um.row(i)) EXPECT_EQ(x, 0);
    EXPECT_EQ(h.h.rows(), rank(to_rat(m)));
  }
}

TEST(Lattice, SumAndIntersectionOfAxes) {
  ZLattice a = ZLattice::generated_by(2, {v({1, 0})});
  ZLattice b = ZLattice::generated_by(2, {v({0, 1})});
  EXPECT_EQ(a + b, ZLattice::standard(2));
  EXPECT_EQ(a.intersect(b).rank(), 0u);
}

TEST(Lattice, GcdAndLcmOnALine) {
  ZLattice a = ZLattice::generated_by(2, {v({2, 0})});
  ZLattice b = ZLattice::generated_by(2, {v({3, 0})});
  EXPECT_EQ(a + b, ZLattice::generated_by(2, {v({1, 0})}));
  EXPECT_EQ(a.intersect(b), ZLattice::generated_by(2, {v({6, 0})}));
}

TEST(Lattice, Idempotence) {
  ZLattice a = ZLattice::generated_by(3, {v({1, 2, 3}), v({0, Rat(1, 2), 1})});
  EXPECT_EQ(a + a, a);
  EXPECT_EQ(a.intersect(a), a);
}

TEST(Lattice, RationalBasisIsCanonical) {
  ZLattice a = ZLattice::generated_by(3, {v({Rat(1, 2), 0, 0}), v({0, 1, 0}), v({0, 0, 1})});
  ZLattice b = ZLattice::generated_by(3, {v({Rat(1, 2), 1, 0}), v({1, 0, 0}), v({0, 1, 1}), v({0, 0, 1})});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.denominator(), 2);
  EXPECT_TRUE(a.contains(v({Rat(3, 2), -4, 7})));
  EXPECT_FALSE(a.contains(v({Rat(1, 4), 0, 0})));
}

TEST(LatticeProperty, SumAndIntersectionMembership) {
  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + rng() % 3;
    std::vector<Vec> ga, gb;
    for (std::size_t i = 0; i < 1 + rng() % 3; ++i) ga.push_back(relfan::testing::random_vec(rng, n, 4, 3));
    for (std::size_t i = 0; i < 1 + rng() % 3; ++i) gb.push_back(relfan::testing::random_vec(rng, n, 4, 3));
    ZLattice a = ZLattice::generated_by(n, ga), b = ZLattice::generated_by(n, gb);
    ZLattice s = a + b, i = a.intersect(b);
    EXPECT_TRUE(s.contains(a));
    EXPECT_TRUE(s.contains(b));
    EXPECT_TRUE(a.contains(i));
    EXPECT_TRUE(b.contains(i));
    for (const auto& g : ga) EXPECT_TRUE(a.contains(g));
    // Sampled integer combinations lying in both spans.
    for (int k = 0; k < 5; ++k) {
      Vec x = zero_vec(n);
      for (const auto& g : ga) axpy(Rat(relfan::testing::uniform(rng, -3, 3)), g, x);
      EXPECT_EQ(i.contains(x), b.contains(x));
    }
  }
}

TEST(OrderInQuotient, Examples) {
  EXPECT_EQ(order_in_quotient(v({Rat(1, 2), 0}), ZLattice::standard(2), Subspace(2)), 2);
  EXPECT_EQ(order_in_quotient(v({3, -1}), ZLattice::standard(2), Subspace(2)), 1);
  EXPECT_EQ(order_in_quotient(v({Rat(1, 3), Rat(1, 2)}), ZLattice::standard(2), Subspace::span(2, {v({0, 1})})), 3);
}

TEST(OrderInQuotient, OutsideSpanIsPrecondition) {
  ZLattice a = ZLattice::generated_by(2, {v({1, 0})});
  EXPECT_THROW(order_in_quotient(v({0, 1}), a, Subspace(2)), MathError);
}

TEST(OrderInQuotientProperty, MinimalityAgainstDirectMembership) {
  Rng rng(24);
  for (int t = 0; t < 150; ++t) {
    std::size_t n = 2 + rng() % 2;
    std::vector<Vec> ga;
    for (std::size_t i = 0; i < n; ++i) ga.push_back(relfan::testing::random_vec(rng, n, 3, 3));
    ZLattice a = ZLattice::generated_by(n, ga);
    Subspace sub = rng() % 2 ? Subspace(n) : Subspace::span(n, {relfan::testing::random_vec(rng, n)});
    Subspace span = a.rational_span() + sub;
    Vec x = relfan::testing::random_vec(rng, n, 6, 6);
    if (!span.contains(x)) {
      EXPECT_THROW(order_in_quotient(x, a, sub), MathError);
      continue;
    }
    Int ord = order_in_quotient(x, a, sub);
    ASSERT_GE(ord, 1);
    ASSERT_LE(ord, 10000);
    EXPECT_TRUE(in_lattice_plus_subspace(scale(Rat(ord), x), a, sub));
    for (long k = 1; k < ord.get_si(); ++k) EXPECT_FALSE(in_lattice_plus_subspace(scale(Rat(k), x), a, sub));
  }
}
