#include "relfan/gallery.hpp"

#include "relfan/errors.hpp"
#include "relfan/io.hpp"

#include <map>

namespace relfan {

namespace {

ZMat zmat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Int>> r;
  std::size_t cols = 0;
  for (const auto& row : rows) {
    r.emplace_back(row.begin(), row.end());
    cols = row.size();
  }
  return ZMat::from_rows(r, cols);
}

QMat qmat1(long x) { return QMat::from_rows({{Rat(x)}}, 1); }

KFactor curve(std::string name, ZMat h1_monodromy, std::vector<GradedHodgeNumber> h1_limit) {
  KFactor f;
  f.name = std::move(name);
  f.degree[0] = {ZMat::identity(1), {{0, 0, 1}}, {{0, 0, 0, 1}}};
  f.degree[1] = {std::move(h1_monodromy), {{1, 0, 1}, {0, 1, 1}}, std::move(h1_limit)};
  f.degree[2] = {ZMat::identity(1), {{1, 1, 1}}, {{2, 1, 1, 1}}};
  f.cup[0] = qmat1(1);
  f.cup[1] = QMat::from_rows({{Rat(0), Rat(1)}, {Rat(-1), Rat(0)}}, 2);
  f.cup[2] = qmat1(1);
  return f;
}

ZMat kron(const ZMat& a, const ZMat& b) {
  ZMat k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t s = 0; s < b.cols(); ++s) k(i * b.rows() + r, j * b.cols() + s) = a(i, j) * b(r, s);
  return k;
}

void degree_tuples(std::size_t factors, int total, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (prefix.size() == factors) {
    if (total == 0) out.push_back(prefix);
    return;
  }
  for (int d = 0; d <= 2 && d <= total; ++d) {
    prefix.push_back(d);
    degree_tuples(factors, total - d, prefix, out);
    prefix.pop_back();
  }
}

/// Index tuple of position `flat` in a Kronecker block with the given sizes.
std::vector<std::size_t> unflatten_index(std::size_t flat, const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> idx(sizes.size());
  for (std::size_t j = sizes.size(); j-- > 0;) {
    idx[j] = flat % sizes[j];
    flat /= sizes[j];
  }
  return idx;
}

ZuckerPoint make_point(const std::array<TCoord, 4>& t, const Rat& a1, long a2, std::optional<GaussRat> tau) {
  return ZuckerPoint::make(t, GaussRat(a1), GaussRat(a2), std::move(tau));
}

Json json_of(const Equivalence& e) {
  Json j;
  j["holds"] = e.holds;
  j["b"] = e.b ? Json(format_gauss(*e.b)) : Json(nullptr);
  j["reason"] = e.reason;
  return j;
}

}  // namespace

KFactor constant_elliptic_curve() {
  return curve("Y", ZMat::identity(2), {{1, 1, 0, 1}, {1, 0, 1, 1}});
}

KFactor tate_curve() { return curve("E", zmat({{1, 1}, {0, 1}}), {{0, 0, 0, 1}, {2, 1, 1, 1}}); }

DegenerationData kunneth(const std::string& name, const std::vector<KFactor>& factors, int twist) {
  const std::size_t r = factors.size();
  std::vector<std::vector<int>> tuples;
  std::vector<int> prefix;
  degree_tuples(r, static_cast<int>(r), prefix, tuples);

  std::vector<std::size_t> offset;
  std::map<std::vector<int>, std::size_t> block_of;
  std::size_t dim = 0;
  for (std::size_t b = 0; b < tuples.size(); ++b) {
    offset.push_back(dim);
    block_of[tuples[b]] = b;
    std::size_t size = 1;
    for (std::size_t j = 0; j < r; ++j) size *= factors[j].degree[static_cast<std::size_t>(tuples[b][j])].rank();
    dim += size;
  }

  ZMat gamma(dim, dim);
  QMat gram(dim, dim);
  std::map<std::pair<int, int>, int> hodge;
  std::map<std::tuple<int, int, int>, int> limit;

  for (std::size_t b = 0; b < tuples.size(); ++b) {
    const auto& d = tuples[b];
    std::vector<std::size_t> sizes;
    ZMat block = ZMat::identity(1);
    std::map<std::pair<int, int>, int> h{{{0, 0}, 1}};
    std::map<std::tuple<int, int, int>, int> l{{{0, 0, 0}, 1}};
    for (std::size_t j = 0; j < r; ++j) {
      const KDegree& kd = factors[j].degree[static_cast<std::size_t>(d[j])];
      sizes.push_back(kd.rank());
      block = kron(block, kd.monodromy);
      std::map<std::pair<int, int>, int> h2;
      for (const auto& [pq, c] : h)
        for (const auto& x : kd.hodge) h2[{pq.first + x.p, pq.second + x.q}] += c * x.count;
      h = std::move(h2);
      std::map<std::tuple<int, int, int>, int> l2;
      for (const auto& [wpq, c] : l)
        for (const auto& x : kd.limit)
          l2[{std::get<0>(wpq) + x.weight, std::get<1>(wpq) + x.p, std::get<2>(wpq) + x.q}] += c * x.count;
      l = std::move(l2);
    }
    for (const auto& [pq, c] : h) hodge[{pq.first - twist, pq.second - twist}] += c;
    for (const auto& [wpq, c] : l)
      limit[{std::get<0>(wpq) - 2 * twist, std::get<1>(wpq) - twist, std::get<2>(wpq) - twist}] += c;

    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j) gamma(offset[b] + i, offset[b] + j) = block(i, j);

    // Cup product into the complementary block.
    std::vector<int> dual(r);
    for (std::size_t j = 0; j < r; ++j) dual[j] = 2 - d[j];
    const std::size_t b2 = block_of.at(dual);
    int sign_exp = 0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < i; ++j) sign_exp += d[i] * dual[j];
    const Rat sign(sign_exp % 2 == 0 ? 1 : -1);
    std::vector<std::size_t> sizes2;
    for (std::size_t j = 0; j < r; ++j) sizes2.push_back(factors[j].degree[static_cast<std::size_t>(dual[j])].rank());
    std::size_t size2 = 1;
    for (auto s : sizes2) size2 *= s;
    for (std::size_t x = 0; x < block.rows(); ++x) {
      const auto ix = unflatten_index(x, sizes);
      for (std::size_t y = 0; y < size2; ++y) {
        const auto iy = unflatten_index(y, sizes2);
        Rat v = sign;
        for (std::size_t j = 0; j < r && v != 0; ++j)
          v *= factors[j].cup[static_cast<std::size_t>(d[j])](ix[j], iy[j]);
        gram(offset[b] + x, offset[b2] + y) = v;
      }
    }
  }

  std::vector<HodgeNumber> hn;
  for (const auto& [pq, c] : hodge)
    if (c > 0) hn.push_back({pq.first, pq.second, c});
  std::vector<GradedHodgeNumber> ln;
  for (const auto& [wpq, c] : limit)
    if (c > 0) ln.push_back({std::get<0>(wpq), std::get<1>(wpq), std::get<2>(wpq), c});
  const int weight = static_cast<int>(r) - 2 * twist;
  const int sign = r % 2 == 0 ? 1 : -1;
  return DegenerationData::make(name, Pairing::make(gram, sign), gamma, weight, hn, ln);
}

DegenerationData kunneth_h3() {
  return kunneth("y2xe-h3", {constant_elliptic_curve(), constant_elliptic_curve(), tate_curve()}, 2);
}

ZuckerPoint ZuckerPoint::make(std::array<TCoord, 4> t, GaussRat a1, GaussRat a2, std::optional<GaussRat> tau) {
  for (const auto& c : t) {
    if (is_zero(c.base)) throw precondition_violated("t coordinates must be nonzero");
    if (!tau && c.q_power != 0) throw precondition_violated("q^m with m != 0 is undefined at q = 0");
  }
  if (tau && sgn(tau->im) <= 0) throw precondition_violated("q = exp(2 pi i tau) lies in the punctured disc only for Im tau > 0");
  ZuckerPoint p;
  p.t_ = t;
  p.a1_ = std::move(a1);
  p.a2_ = std::move(a2);
  p.tau_ = std::move(tau);
  return p;
}

ZuckerPoint ZuckerPoint::limit_at_q_zero() const {
  std::array<TCoord, 4> t = t_;
  for (auto& c : t)
    if (c.q_power != 0) throw precondition_violated("the limit keeps t fixed only when t has no q factor");
  return make(t, a1_, a2_, std::nullopt);
}

Equivalence compare(const ZuckerPoint& p, const ZuckerPoint& p2) {
  if (p.q_is_zero() != p2.q_is_zero()) return {false, std::nullopt, "q' != q"};
  if (p.q_is_zero()) {
    if (p.t() != p2.t()) return {false, std::nullopt, "t' != t"};
    if (p2.a2() != p.a2()) return {false, std::nullopt, "a'_2 - a_2 != 0"};
    if (!is_gaussian_integer(p2.a1() - p.a1())) return {false, std::nullopt, "a'_1 - a_1 not in Z[i]"};
    return {true, std::nullopt, "q = 0 clause"};
  }
  const GaussRat shift = *p2.tau() - *p.tau();
  if (!shift.is_real() || shift.re.get_den() != 1) return {false, std::nullopt, "q' != q"};
  // With tau in Q(i) \ Q, q^k is transcendental for k != 0 (Gelfond-Schneider
  // applied to (-1)^{2k tau}), so base'/base in Q(i) lies in q^Z only when
  // it is 1.
  for (std::size_t j = 0; j < 4; ++j)
    if (p2.t()[j].base != p.t()[j].base) return {false, std::nullopt, "t'_j / t_j not in q^Z"};
  const GaussRat b = p2.a2() - p.a2();
  if (!is_gaussian_integer(b)) return {false, std::nullopt, "a'_2 - a_2 not in Z[i]"};
  if (!is_gaussian_integer(p2.a1() - p.a1() - b * *p.tau()))
    return {false, b, "a'_1 - a_1 - b tau not in Z[i]"};
  return {true, b, "q != 0 clause"};
}

bool slit_member(const ZuckerPoint& p) { return !p.q_is_zero() || is_zero(p.a2()); }

bool HausdorffCertificate::passes() const {
  for (const auto& s : steps)
    if (!s.equivalence.holds) return false;
  return limits_identified && !limits.holds;
}

Json HausdorffCertificate::to_json() const {
  Json j;
  j["c"] = relfan::json_of(c);
  Json st = Json::array();
  for (const auto& s : steps) {
    Json x;
    x["n"] = s.n;
    x["tau"] = format_gauss(GaussRat(c, Rat(s.n)));
    x["equivalence"] = json_of(s.equivalence);
    st.push_back(std::move(x));
  }
  j["steps"] = std::move(st);
  j["limit_first"] = relfan::json_of(limit_first);
  j["limit_second"] = relfan::json_of(limit_second);
  j["limits_identified"] = limits_identified;
  j["limits"] = json_of(limits);
  j["passes"] = passes();
  return j;
}

HausdorffCertificate hausdorff_witness(const Rat& c, const std::array<TCoord, 4>& t, long n_first, long n_last) {
  HausdorffCertificate cert;
  cert.c = c;
  cert.limit_first = make_point(t, c, 1, std::nullopt);
  cert.limit_second = make_point(t, Rat(0), 0, std::nullopt);
  cert.limits_identified = true;
  for (long n = n_first; n <= n_last; ++n) {
    const GaussRat tau(c, Rat(n));
    const ZuckerPoint first = make_point(t, c, 1, tau);
    const ZuckerPoint second = make_point(t, Rat(0), 0, tau);
    cert.steps.push_back({n, compare(first, second)});
    // Both sequences keep (t, a) and send Im tau = n to infinity, so q_n -> 0.
    if (first.limit_at_q_zero() != cert.limit_first || second.limit_at_q_zero() != cert.limit_second)
      cert.limits_identified = false;
  }
  cert.limits = compare(cert.limit_first, cert.limit_second);
  return cert;
}

Json json_of(const ZuckerPoint& p) {
  Json j;
  Json t = Json::array();
  for (const auto& c : p.t()) t.push_back({{"base", format_gauss(c.base)}, {"q_power", c.q_power}});
  j["t"] = std::move(t);
  j["a"] = {format_gauss(p.a1()), format_gauss(p.a2())};
  j["tau"] = p.tau() ? Json(format_gauss(*p.tau())) : Json(nullptr);
  return j;
}

std::vector<CheckResult> gallery_checks() {
  std::vector<CheckResult> out;
  const DegenerationData data = kunneth_h3();
  const ExtensionFrame frame(data);

  {
    CheckResult r{"kunneth-rank", data.rank() == 20 ? Status::pass : Status::fail, {}};
    r.witness["rank"] = data.rank();
    r.witness["weight"] = data.weight_k;
    out.push_back(std::move(r));
  }
  const CubeCondition cube = check_cube_condition(frame);
  {
    CheckResult r{"n-prime-squared-zero", cube.n_prime_squared_zero ? Status::pass : Status::fail, {}};
    r.witness["n_prime_rank"] = frame.image_n_prime().dim();
    out.push_back(std::move(r));
  }
  {
    CheckResult r{"gr0-hodge-type-00", cube.gr0_type_00 ? Status::pass : Status::fail, {}};
    Json types = Json::array();
    for (const auto& h : *data.limit_hodge_numbers)
      if (h.weight == 0) types.push_back({h.p, h.q, h.count});
    r.witness["gr0_types"] = std::move(types);
    out.push_back(std::move(r));
  }
  {
    const std::array<TCoord, 4> t{TCoord{GaussRat(2)}, TCoord{GaussRat(Rat(1), Rat(1))}, TCoord{GaussRat(Rat(1, 3))},
                                  TCoord{GaussRat(Rat(0), Rat(-5))}};
    const HausdorffCertificate cert = hausdorff_witness(Rat(1, 3), t, 1, 10);
    bool b_is_minus_one = true;
    for (const auto& s : cert.steps)
      if (!s.equivalence.b || *s.equivalence.b != GaussRat(-1)) b_is_minus_one = false;
    CheckResult r{"hausdorff-certificate", cert.passes() && b_is_minus_one ? Status::pass : Status::fail,
                  cert.to_json()};
    r.witness["b_is_minus_one"] = b_is_minus_one;
    out.push_back(std::move(r));
  }
  {
    const std::array<TCoord, 4> t{};
    struct Vector {
      ZuckerPoint p;
      bool expected;
    };
    const std::vector<Vector> vectors{
        {ZuckerPoint::make(t, GaussRat(5), GaussRat(0), std::nullopt), true},
        {ZuckerPoint::make(t, GaussRat(5), GaussRat(1), std::nullopt), false},
        {ZuckerPoint::make(t, GaussRat(5), GaussRat(1), GaussRat(Rat(0), Rat(1))), true},
    };
    CheckResult r{"slit-vectors", Status::pass, {}};
    Json v = Json::array();
    for (const auto& x : vectors) {
      const bool got = slit_member(x.p);
      if (got != x.expected) r.status = Status::fail;
      v.push_back({{"point", json_of(x.p)}, {"member", got}, {"expected", x.expected}});
    }
    r.witness["vectors"] = std::move(v);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace relfan
