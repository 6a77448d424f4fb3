#include "relfan/errors.hpp"
#include "relfan/linalg.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace relfan;
using relfan::testing::Rng;

namespace {

QMat q(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vec> r;
  for (const auto& row : rows) {
    Vec v;
    for (long x : row) v.emplace_back(x);
    r.push_back(v);
  }
  return QMat::from_rows(r, r.front().size());
}

Vec v(std::initializer_list<long> xs) {
  Vec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(Rational, ParseAndFormatRoundTrip) {
  EXPECT_EQ(parse_rat("6/4"), Rat(3, 2));
  EXPECT_EQ(parse_rat("-7"), Rat(-7));
  EXPECT_EQ(format_rat(parse_rat("-3/6")), "-1/2");
  EXPECT_EQ(format_rat(Rat(4)), "4/1");
  EXPECT_THROW(parse_rat("1/0"), ParseError);
  EXPECT_THROW(parse_rat("abc"), ParseError);
}

TEST(Rational, FloorRoundsTowardMinusInfinity) {
  EXPECT_EQ(floor_rat(Rat(3, 2)), 1);
  EXPECT_EQ(floor_rat(Rat(-3, 2)), -2);
  EXPECT_EQ(floor_rat(Rat(-2)), -2);
}

TEST(Rational, GaussianParsing) {
  EXPECT_EQ(parse_gauss("i"), GaussRat::i_unit());
  EXPECT_EQ(parse_gauss("-i"), -GaussRat::i_unit());
  EXPECT_EQ(parse_gauss("1/2-3*i"), GaussRat(Rat(1, 2), Rat(-3)));
  EXPECT_EQ(parse_gauss(format_gauss(GaussRat(Rat(-2, 3), Rat(5, 7)))), GaussRat(Rat(-2, 3), Rat(5, 7)));
  EXPECT_TRUE(is_gaussian_integer(GaussRat(Rat(2), Rat(-1))));
  EXPECT_FALSE(is_gaussian_integer(GaussRat(Rat(1, 2), Rat(0))));
}

TEST(Kernel, JordanBlock) { EXPECT_EQ(kernel(q({{0, 1}, {0, 0}})), Subspace::span(2, {v({1, 0})})); }

TEST(Kernel, ZeroMatrixIsEverything) { EXPECT_TRUE(kernel(QMat(2, 2)).is_full()); }

TEST(Kernel, RankOneSystem) {
  // x + 2y = 0.
  EXPECT_EQ(kernel(q({{1, 2}, {2, 4}})), Subspace::span(2, {v({2, -1})}));
}

TEST(Image, Examples) {
  EXPECT_EQ(image(q({{0, 1}, {0, 0}})), Subspace::span(2, {v({1, 0})}));
  EXPECT_TRUE(image(QMat::identity(3)).is_full());
  EXPECT_EQ(image(q({{1, 1}, {1, 1}})), Subspace::span(2, {v({1, 1})}));
}

TEST(LinalgProperty, RankNullity) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5, k = rng() % 4;
    QMat m = relfan::testing::random_low_rank(rng, r, c, k);
    Subspace ker = kernel(m);
    EXPECT_EQ(ker.dim() + image(m).dim(), c);
    for (const auto& b : ker.basis()) EXPECT_TRUE(is_zero(m.apply(b)));
  }
}

TEST(LinalgProperty, SubspaceEqualityIsCanonical) {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng() % 5, k = 1 + rng() % 4;
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(relfan::testing::random_vec(rng, n));
    Subspace s = Subspace::span(n, gens);
    std::vector<Vec> other;
    for (const auto& g : gens) {
      Rat c = relfan::testing::random_rat(rng);
      if (is_zero(c)) c = 3;
      other.push_back(scale(c, g));
    }
    std::shuffle(other.begin(), other.end(), rng);
    if (other.size() > 1) other.push_back(add(other[0], other[1]));
    EXPECT_EQ(Subspace::span(n, other), s);
  }
}

TEST(LinalgProperty, IntersectionAndSum) {
  Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 2 + rng() % 4;
    Subspace a = image(relfan::testing::random_low_rank(rng, n, n, rng() % n));
    Subspace b = image(relfan::testing::random_low_rank(rng, n, n, rng() % n));
    Subspace i = a.intersect(b), s = a + b;
    EXPECT_TRUE(a.contains(i));
    EXPECT_TRUE(b.contains(i));
    EXPECT_TRUE(s.contains(a));
    EXPECT_TRUE(s.contains(b));
    EXPECT_EQ(i.dim() + s.dim(), a.dim() + b.dim());
  }
}

TEST(LinalgProperty, PreimageAndSolve) {
  Rng rng(14);
  for (int t = 0; t < 150; ++t) {
    std::size_t n = 1 + rng() % 4;
    QMat m = relfan::testing::random_low_rank(rng, n, n, rng() % (n + 1));
    Subspace s = image(relfan::testing::random_low_rank(rng, n, n, rng() % (n + 1)));
    Subspace pre = preimage(m, s);
    for (const auto& b : pre.basis()) EXPECT_TRUE(s.contains(m.apply(b)));
    EXPECT_EQ(pre.dim(), kernel(m).dim() + image(m).intersect(s).dim());
    Vec x = relfan::testing::random_vec(rng, n);
    auto sol = solve(m, m.apply(x));
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(m.apply(*sol), m.apply(x));
  }
}

TEST(LinalgProperty, DeterminantAndInverse) {
  Rng rng(15);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + rng() % 4;
    QMat a = relfan::testing::random_qmat(rng, n, n);
    QMat b = relfan::testing::random_qmat(rng, n, n);
    EXPECT_EQ(determinant(a * b), determinant(a) * determinant(b));
    auto inv = inverse(a);
    EXPECT_EQ(inv.has_value(), !is_zero(determinant(a)));
    if (inv) EXPECT_EQ(a * *inv, QMat::identity(n));
  }
}
