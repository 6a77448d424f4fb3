#include "relfan/classifying.hpp"

#include "relfan/errors.hpp"

#include <algorithm>

namespace relfan {

namespace {

MathError flag_violation(const std::string& what) { return MathError("FlagConditionViolated", what); }

/// h_w^{p, w-p} keyed by p. gr^W_0 is the rank-one piece spanned by e.
std::map<int, int> hodge_on(const ExtensionFrame& frame, int w) {
  std::map<int, int> h;
  if (w == 0) {
    h[0] = 1;
  } else if (w == frame.weight_k()) {
    for (const auto& x : frame.base().hodge_numbers)
      if (x.count > 0) h[x.p] += x.count;
  }
  return h;
}

std::vector<int> weights(const ExtensionFrame& frame) { return {frame.weight_k(), 0}; }

CSubspace W_c(const ExtensionFrame& frame, int w) { return complexify(frame.W().at(w)); }

CSubspace conj(const CSubspace& s) {
  std::vector<CVec> b;
  for (const auto& v : s.basis()) {
    CVec c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i].conj();
    b.push_back(std::move(c));
  }
  return CSubspace::span(s.ambient(), b);
}

GaussRat bilinear(const CMat& g, const CVec& x, const CVec& y) {
  GaussRat s;
  const CVec gy = g.apply(y);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!is_zero(x[i])) s += x[i] * gy[i];
  return s;
}

/// i^e for any integer e.
GaussRat i_power(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0:
      return GaussRat(1);
    case 1:
      return GaussRat::i_unit();
    case 2:
      return GaussRat(-1);
    default:
      return -GaussRat::i_unit();
  }
}

/// dim of F^p(gr_w) = F^p cap W_w modulo W_{w-1}.
std::size_t graded_dim(const CSubspace& f, const CSubspace& ww, const CSubspace& wprev) {
  return f.intersect(ww).dim() - f.intersect(wprev).dim();
}

/// Representatives in W_w of (A + W_{w-1}) / W_{w-1}, reduced mod W_{w-1}.
CSubspace mod_lower(const CSubspace& a, const CSubspace& wprev) {
  std::vector<CVec> b;
  for (const auto& v : a.basis()) b.push_back(wprev.reduce(v));
  return CSubspace::span(a.ambient(), b);
}

}  // namespace

PeriodPoint::PeriodPoint(ExtensionFrame frame, std::map<int, CSubspace> levels)
    : frame_(std::move(frame)), levels_(std::move(levels)) {
  full_ = CSubspace::full(frame_.dim());
  zero_ = CSubspace(frame_.dim());
  if (!levels_.empty()) {
    lowest_ = levels_.begin()->first;
    highest_ = levels_.rbegin()->first;
  }
}

const CSubspace& PeriodPoint::F(int p) const {
  if (levels_.empty() || p > highest_) return zero_;
  if (p < lowest_) return full_;
  return levels_.at(p);
}

PeriodPoint PeriodPoint::make(const ExtensionFrame& frame, const std::map<int, std::vector<CVec>>& levels) {
  const std::size_t d = frame.dim();
  std::map<int, CSubspace> spans;
  for (const auto& [p, vecs] : levels) {
    for (const auto& v : vecs)
      if (v.size() != d)
        throw flag_violation("vector of length " + std::to_string(v.size()) + " in F^" + std::to_string(p) +
                             ", expected " + std::to_string(d));
    spans.emplace(p, CSubspace::span(d, vecs));
  }
  if (!spans.empty() && spans.rbegin()->first - spans.begin()->first + 1 != static_cast<int>(spans.size()))
    throw flag_violation("filtration levels must be consecutive");
  PeriodPoint pt(frame, std::move(spans));

  for (int p = pt.lowest_; p < pt.highest_; ++p)
    if (!pt.F(p).contains(pt.F(p + 1)))
      throw flag_violation("F^" + std::to_string(p) + " does not contain F^" + std::to_string(p + 1));

  for (int w : weights(frame)) {
    const auto h = hodge_on(frame, w);
    const CSubspace ww = W_c(frame, w), wprev = W_c(frame, w - 1);
    // Outside [lowest - 1, highest + 1] F^p is constant.
    for (int p = pt.lowest_ - 1; p <= pt.highest_ + 1; ++p) {
      std::size_t expected = 0;
      for (const auto& [hp, c] : h)
        if (hp >= p) expected += static_cast<std::size_t>(c);
      const std::size_t got = graded_dim(pt.F(p), ww, wprev);
      if (got != expected)
        throw flag_violation("dim F^" + std::to_string(p) + " gr_" + std::to_string(w) + " = " + std::to_string(got) +
                             ", expected " + std::to_string(expected));
    }
  }
  return pt;
}

PeriodPoint PeriodPoint::split(const ExtensionFrame& frame, const std::map<int, std::vector<CVec>>& pure,
                               const CVec& shift) {
  const std::size_t n = frame.rank();
  if (!shift.empty() && shift.size() != n) throw flag_violation("shift must be a vector of H'");
  CVec e(n + 1);
  e[n] = GaussRat(1);
  for (std::size_t i = 0; i < shift.size(); ++i) e[i] = shift[i];

  int lo = 0, hi = 0;
  if (!pure.empty()) {
    lo = std::min(lo, pure.begin()->first);
    hi = std::max(hi, pure.rbegin()->first);
  }
  std::map<int, std::vector<CVec>> levels;
  for (int p = lo; p <= hi; ++p) {
    std::vector<CVec> vecs;
    auto it = pure.find(p);
    if (it != pure.end()) {
      for (const auto& v : it->second) {
        if (v.size() != n) throw flag_violation("pure filtration vectors must lie in H'");
        CVec x = v;
        x.push_back(GaussRat(0));
        vecs.push_back(std::move(x));
      }
    } else if (p < (pure.empty() ? 0 : pure.begin()->first)) {
      for (std::size_t i = 0; i < n; ++i) {
        CVec x(n + 1);
        x[i] = GaussRat(1);
        vecs.push_back(std::move(x));
      }
    }
    if (p <= 0) vecs.push_back(e);
    levels.emplace(p, std::move(vecs));
  }
  return make(frame, levels);
}

PeriodPoint PeriodPoint::transformed(const CMat& g) const {
  std::map<int, std::vector<CVec>> out;
  for (const auto& [p, s] : levels_) {
    std::vector<CVec> vecs;
    for (const auto& v : s.basis()) vecs.push_back(g.apply(v));
    out.emplace(p, std::move(vecs));
  }
  return make(frame_, out);
}

bool in_compact_dual(const PeriodPoint& pt) {
  const auto& frame = pt.frame();
  for (int w : weights(frame)) {
    const CMat g = complexify(frame.graded_gram(w));
    const CSubspace ww = W_c(frame, w);
    // <F^p, F^q> = 0 for p + q > w follows from the case p + q = w + 1.
    for (int p = pt.lowest() - 1; p <= pt.highest() + 1; ++p) {
      const CSubspace a = pt.F(p).intersect(ww), b = pt.F(w + 1 - p).intersect(ww);
      for (const auto& x : a.basis())
        for (const auto& y : b.basis())
          if (!is_zero(bilinear(g, x, y))) return false;
    }
  }
  return true;
}

bool in_D(const PeriodPoint& pt) {
  if (!in_compact_dual(pt)) throw MathError("NotInCompactDual", "the filtration is not isotropic");
  const auto& frame = pt.frame();
  for (int w : weights(frame)) {
    const auto h = hodge_on(frame, w);
    const CMat g = complexify(frame.graded_gram(w));
    const CSubspace ww = W_c(frame, w), wprev = W_c(frame, w - 1);

    int lo = std::min(pt.lowest() - 1, w - pt.highest() - 1), hi = std::max(pt.highest() + 1, w - pt.lowest() + 1);
    if (!h.empty()) {
      lo = std::min(lo, h.begin()->first);
      hi = std::max(hi, h.rbegin()->first);
    }
    for (int p = lo; p <= hi; ++p) {
      const int q = w - p;
      const CSubspace a = pt.F(p).intersect(ww) + wprev;
      const CSubspace b = conj(pt.F(q)).intersect(ww) + wprev;
      const CSubspace hpq = mod_lower(a.intersect(b), wprev);
      const auto it = h.find(p);
      const std::size_t expected = it == h.end() ? 0 : static_cast<std::size_t>(it->second);
      if (hpq.dim() != expected) return false;

      const std::size_t m = hpq.dim();
      const GaussRat factor = i_power(p - q);
      CMat herm(m, m);
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) {
          CVec yc = hpq.basis()[c];
          for (auto& z : yc) z = z.conj();
          herm(r, c) = factor * bilinear(g, hpq.basis()[r], yc);
        }
      for (std::size_t k = 1; k <= m; ++k) {
        CMat lead(k, k);
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t c = 0; c < k; ++c) lead(r, c) = herm(r, c);
        const GaussRat det = determinant(lead);
        if (!det.is_real()) throw MathError("InvariantViolated", "Hermitian minor with nonzero imaginary part");
        if (sgn(det.re) <= 0) return false;
      }
    }
  }
  return true;
}

bool small_griffiths(const PeriodPoint& pt, const QMat& n) {
  const auto& frame = pt.frame();
  if (n.rows() != frame.dim() || n.cols() != frame.dim() || !frame.in_g(n))
    throw MathError("NotInG", "small Griffiths transversality needs N in g");
  const CMat nc = complexify(n);
  for (int p = pt.lowest(); p <= pt.highest(); ++p)
    for (const auto& v : pt.F(p).basis())
      if (!pt.F(p - 1).contains(nc.apply(v))) return false;
  return true;
}

CMat exp_nilpotent(const CMat& n) {
  const std::size_t d = n.rows();
  CMat sum = CMat::identity(d);
  CMat term = CMat::identity(d);
  for (std::size_t k = 1; k <= d; ++k) {
    term = term * n;
    if (term.is_zero()) return sum;
    term *= GaussRat(Rat(1, static_cast<unsigned long>(k)));
    sum += term;
  }
  if (!(term * n).is_zero()) throw MathError("NotNilpotent", "matrix is not nilpotent");
  return sum;
}

OrbitTestOutcome nilpotent_orbit_test(const PeriodPoint& pt, const Cone& c, const std::vector<long>& samples,
                                      long threshold, Exec exec) {
  const std::vector<QMat> gens = c.generators();
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (!small_griffiths(pt, gens[j]))
      throw MathError("GriffithsViolated", "generator " + std::to_string(j) + " moves F^p outside F^{p-1}");
  for (long y : samples)
    if (y <= 0) throw precondition_violated("orbit samples must be positive");

  // The product grid samples^r, filtered by the threshold.
  std::vector<std::vector<long>> grid{{}};
  for (std::size_t j = 0; j < gens.size(); ++j) {
    std::vector<std::vector<long>> next;
    for (const auto& prefix : grid)
      for (long y : samples) {
        auto v = prefix;
        v.push_back(y);
        next.push_back(std::move(v));
      }
    grid = std::move(next);
  }
  std::erase_if(grid, [&](const std::vector<long>& y) {
    return !y.empty() && *std::min_element(y.begin(), y.end()) < threshold;
  });

  std::vector<char> ok(grid.size(), 0);
  const std::size_t d = pt.frame().dim();
  for_each_index(grid.size(), exec, [&](std::size_t s) {
    QMat m(d, d);
    for (std::size_t j = 0; j < gens.size(); ++j) m += Rat(grid[s][j]) * gens[j];
    CMat x(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t col = 0; col < d; ++col) x(r, col) = GaussRat(Rat(0), m(r, col));
    ok[s] = in_D(pt.transformed(exp_nilpotent(x))) ? 1 : 0;
  });

  OrbitTestOutcome out;
  out.samples = grid.size();
  for (std::size_t s = 0; s < grid.size(); ++s)
    if (!ok[s]) {
      out.sampled_pass = false;
      out.first_failure = grid[s];
      break;
    }
  return out;
}

}  // namespace relfan
