#include "relfan/hodge_data.hpp"

#include "relfan/errors.hpp"

namespace relfan {

Pairing Pairing::make(QMat gram, int sign) {
  if (!gram.square()) throw precondition_violated("pairing Gram matrix is not square");
  if (sign != 1 && sign != -1) throw precondition_violated("pairing sign must be +1 or -1");
  QMat t = gram.transpose();
  if (!(t == (sign == 1 ? gram : -gram)))
    throw precondition_violated(sign == 1 ? "pairing is not symmetric" : "pairing is not alternating");
  if (gram.rows() > 0 && is_zero(determinant(gram))) throw precondition_violated("pairing is degenerate");
  Pairing p;
  p.gram_ = std::move(gram);
  p.sign_ = sign;
  return p;
}

bool Pairing::preserved_by(const QMat& g) const { return g.transpose() * gram_ * g == gram_; }

bool Pairing::infinitesimally_preserved_by(const QMat& h) const {
  return (h.transpose() * gram_ + gram_ * h).is_zero();
}

NilpotentEndo NilpotentEndo::make(QMat m) {
  if (!m.square()) throw MathError("NotNilpotent", "matrix is not square");
  const std::size_t n = m.rows();
  QMat p = QMat::identity(n);
  unsigned e = 0;
  while (!p.is_zero()) {
    if (e >= n) throw MathError("NotNilpotent", "no power up to the dimension vanishes");
    p = p * m;
    ++e;
  }
  NilpotentEndo out;
  out.m_ = std::move(m);
  out.index_ = e;
  return out;
}

QMat exp_nilpotent(const QMat& n) {
  const std::size_t d = n.rows();
  QMat sum = QMat::identity(d);
  QMat term = QMat::identity(d);
  Rat fact = 1;
  for (std::size_t j = 1; j <= d; ++j) {
    term = term * n;
    if (term.is_zero()) break;
    fact *= Rat(static_cast<long>(j));
    sum += Rat(1 / fact) * term;
  }
  return sum;
}

NilpotentEndo log_unipotent(const QMat& g) {
  if (!g.square()) throw MathError("NotUnipotent", "matrix is not square");
  const std::size_t d = g.rows();
  QMat x = g - QMat::identity(d);
  if (!x.pow(static_cast<unsigned>(d)).is_zero()) throw MathError("NotUnipotent", "(g - I)^dim != 0");
  // log(1 + x) = sum_{j>=1} (-1)^{j+1} x^j / j
  QMat sum(d, d);
  QMat term = QMat::identity(d);
  for (std::size_t j = 1; j <= d; ++j) {
    term = term * x;
    if (term.is_zero()) break;
    Rat c = Rat(j % 2 == 1 ? 1 : -1) / Rat(static_cast<long>(j));
    sum += c * term;
  }
  return NilpotentEndo::make(sum);
}

namespace {

// W(N) centred at 0: W_k = sum_{j >= max(0,-k)} N^j Ker N^{k+2j+1}.
std::map<int, Subspace> centered_ladder(const NilpotentEndo& n) {
  const std::size_t d = n.dim();
  const int nu = static_cast<int>(n.index());
  std::vector<QMat> powers{QMat::identity(d)};
  for (int j = 1; j <= 2 * nu + 2; ++j) powers.push_back(powers.back() * n.matrix());
  auto ker_pow = [&](int e) -> Subspace {
    if (e <= 0) return Subspace(d);
    if (e >= nu) return Subspace::full(d);
    return kernel(powers[e]);
  };
  std::map<int, Subspace> steps;
  for (int k = -nu - 1; k <= nu; ++k) {
    Subspace wk(d);
    for (int j = std::max(0, -k); j <= nu; ++j) {
      int e = k + 2 * j + 1;
      if (e <= 0) continue;
      wk = wk + map_subspace(powers[j], ker_pow(e));
    }
    steps.emplace(k, wk);
  }
  return steps;
}

}  // namespace

Filtration monodromy_filtration(const NilpotentEndo& n, int center) {
  if (n.dim() == 0) return Filtration(0);
  std::map<int, Subspace> steps;
  for (auto& [k, s] : centered_ladder(n)) steps.emplace(k + center, s);
  return Filtration::from_steps(n.dim(), steps);
}

bool satisfies_monodromy_axioms(const QMat& n, const Filtration& w, int center) {
  const std::size_t d = n.rows();
  if (d == 0) return true;
  const int lo = std::min(w.lowest(), center) - 2;
  const int hi = std::max(w.highest(), center) + 2;
  for (int k = lo; k <= hi; ++k)
    if (!w.at(k - 2).contains(map_subspace(n, w.at(k)))) return false;
  QMat np = QMat::identity(d);
  for (int l = 1; l <= hi - center + 1; ++l) {
    np = np * n;
    if (w.graded_dim(center + l) != w.graded_dim(center - l)) return false;
    Subspace img = map_subspace(np, w.at(center + l)) + w.at(center - l - 1);
    if (!(img == w.at(center - l))) return false;
  }
  return true;
}

DegenerationData DegenerationData::make(std::string name, Pairing pairing, ZMat gamma, int weight_k,
                                        std::vector<HodgeNumber> hodge_numbers,
                                        std::optional<std::vector<GradedHodgeNumber>> limit) {
  if (!gamma.square()) throw precondition_violated("monodromy matrix is not square");
  if (pairing.dim() != gamma.rows()) throw precondition_violated("pairing and monodromy dimensions differ");
  if (weight_k >= 0) throw precondition_violated("weight k must be negative");
  int expected_sign = (weight_k % 2 == 0) ? 1 : -1;
  if (gamma.rows() > 0 && pairing.sign() != expected_sign)
    throw precondition_violated("pairing symmetry does not match the parity of the weight");
  QMat g = to_rat(gamma);
  if (!pairing.preserved_by(g)) throw MathError("InvariantViolated", "monodromy does not preserve the pairing");
  DegenerationData d;
  d.name = std::move(name);
  d.log_monodromy = log_unipotent(g);
  if (!pairing.infinitesimally_preserved_by(d.log_monodromy.matrix()))
    throw MathError("InvariantViolated", "log of the monodromy is not in g'");
  d.pairing = std::move(pairing);
  d.gamma = std::move(gamma);
  d.weight_k = weight_k;
  d.hodge_numbers = std::move(hodge_numbers);
  d.limit_hodge_numbers = std::move(limit);
  return d;
}

ExtensionFrame::ExtensionFrame(DegenerationData base) : base_(std::move(base)) {
  const std::size_t n = base_.rank();
  const std::size_t d = n + 1;
  std::vector<Vec> hp;
  for (std::size_t i = 0; i < n; ++i) hp.push_back(unit_vec(d, i));
  std::map<int, Subspace> steps;
  steps.emplace(base_.weight_k, Subspace::span(d, hp));
  steps.emplace(0, Subspace::full(d));
  w_ = Filtration::from_steps(d, steps);
  w_prime_ = monodromy_filtration(base_.log_monodromy, 0).shift(-base_.weight_k);
  im_ = image(base_.n_prime());
  ker_ = kernel(base_.n_prime());
  gram0_ = QMat(d, d);
  gram0_(n, n) = 1;
  gramk_ = QMat(d, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gramk_(i, j) = base_.pairing.gram()(i, j);
}

QMat ExtensionFrame::lift(const QMat& restriction, const Vec& image_of_e) const {
  const std::size_t n = rank();
  QMat m(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = restriction(i, j);
    m(i, n) = image_of_e[i];
  }
  return m;
}

QMat ExtensionFrame::restriction(const QMat& m) const {
  const std::size_t n = rank();
  QMat r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = m(i, j);
  return r;
}

Vec ExtensionFrame::image_of_e(const QMat& m) const {
  const std::size_t n = rank();
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = m(i, n);
  return v;
}

Vec ExtensionFrame::embed(const Vec& v) const {
  Vec out = v;
  out.push_back(Rat(0));
  return out;
}

bool ExtensionFrame::in_g(const QMat& m) const {
  const std::size_t n = rank();
  if (m.rows() != n + 1 || m.cols() != n + 1) return false;
  for (std::size_t j = 0; j <= n; ++j)
    if (!is_zero(m(n, j))) return false;
  return base_.pairing.infinitesimally_preserved_by(restriction(m));
}

std::optional<Rat> ExtensionFrame::restriction_scale(const QMat& m) const {
  const std::size_t n = rank();
  if (m.rows() != n + 1 || m.cols() != n + 1) return std::nullopt;
  for (std::size_t j = 0; j <= n; ++j)
    if (!is_zero(m(n, j))) return std::nullopt;
  QMat r = restriction(m);
  const QMat& np = n_prime();
  if (np.is_zero()) return r.is_zero() ? std::optional<Rat>(Rat(1)) : std::nullopt;
  std::size_t pi = 0, pj = 0;
  bool found = false;
  for (std::size_t i = 0; i < n && !found; ++i)
    for (std::size_t j = 0; j < n && !found; ++j)
      if (!is_zero(np(i, j))) {
        pi = i;
        pj = j;
        found = true;
      }
  Rat lambda = r(pi, pj) / np(pi, pj);
  if (sgn(lambda) < 0) return std::nullopt;
  if (!(lambda * np == r)) return std::nullopt;
  return lambda;
}

GammaElement make_gamma(const ExtensionFrame& frame, int power_k, IntVec h) {
  if (h.size() != frame.rank()) throw MathError("NotInGamma", "translation vector has wrong length");
  return GammaElement{power_k, std::move(h)};
}

namespace {

QMat gamma_prime_power(const ExtensionFrame& frame, int k) {
  // gamma'^k = exp(k N') for any integer k.
  return exp_nilpotent(Rat(k) * frame.n_prime());
}

}  // namespace

QMat gamma_matrix(const ExtensionFrame& frame, const GammaElement& g) {
  QMat gp = gamma_prime_power(frame, g.power_k);
  QMat m = frame.lift(gp, to_rat(g.h));
  m(frame.e_index(), frame.e_index()) = 1;
  return m;
}

GammaElement gamma_inverse(const ExtensionFrame& frame, const GammaElement& g) {
  // gamma^{-1}(e) = e - gamma'^{-k} h.
  QMat inv = gamma_prime_power(frame, -g.power_k);
  Vec h = inv.apply(to_rat(g.h));
  IntVec hi(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) hi[i] = -h[i].get_num();
  return GammaElement{-g.power_k, hi};
}

std::optional<GammaElement> as_gamma(const ExtensionFrame& frame, const ZMat& m) {
  const std::size_t n = frame.rank();
  if (m.rows() != n + 1 || m.cols() != n + 1) return std::nullopt;
  for (std::size_t j = 0; j < n; ++j)
    if (sgn(m(n, j)) != 0) return std::nullopt;
  if (m(n, n) != 1) return std::nullopt;
  QMat q = to_rat(m);
  QMat block = frame.restriction(q);
  QMat x = block - QMat::identity(n);
  if (!x.pow(static_cast<unsigned>(std::max<std::size_t>(n, 1))).is_zero()) return std::nullopt;
  QMat lg = log_unipotent(block).matrix();
  int k = 0;
  const QMat& np = frame.n_prime();
  if (np.is_zero()) {
    if (!lg.is_zero()) return std::nullopt;
  } else {
    std::size_t pi = 0, pj = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!is_zero(np(i, j))) {
          pi = i;
          pj = j;
        }
    Rat t = lg(pi, pj) / np(pi, pj);
    if (t.get_den() != 1 || !(t * np == lg)) return std::nullopt;
    k = static_cast<int>(t.get_num().get_si());
  }
  IntVec h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = m(i, n);
  return GammaElement{k, h};
}

namespace {

struct Splitting {
  Rat lambda;
  QMat restriction;  // N'' = lambda N'
  Filtration w_pp;   // W(N'')[-k] on H'
  Vec image_e;
};

Splitting split_checked(const ExtensionFrame& frame, const QMat& n) {
  auto lambda = frame.restriction_scale(n);
  if (!lambda)
    throw precondition_violated("N must map H into H' and restrict to a nonnegative multiple of N'");
  Splitting s;
  s.lambda = *lambda;
  s.restriction = frame.restriction(n);
  if (sgn(s.lambda) > 0 || frame.n_prime().is_zero())
    s.w_pp = frame.W_prime();
  else
    s.w_pp = Filtration::trivial(frame.rank(), 0).shift(-frame.weight_k());
  s.image_e = frame.image_of_e(n);
  return s;
}

// Solve v = R a + u with u in U; returns a.
std::optional<Vec> split_solution(const QMat& r, const Subspace& u, const Vec& v) {
  const std::size_t n = r.rows();
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < r.cols(); ++j) cols.push_back(r.col(j));
  for (const auto& b : u.basis()) cols.push_back(b);
  if (cols.empty()) {
    if (is_zero(v)) return zero_vec(n);
    return std::nullopt;
  }
  auto sol = solve(QMat::from_columns(cols, n), v);
  if (!sol) return std::nullopt;
  return Vec(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(r.cols()));
}

}  // namespace

bool admissible_direction(const ExtensionFrame& frame, const QMat& n) {
  auto s = split_checked(frame, n);
  Subspace target = image(s.restriction) + s.w_pp.at(-2);
  return target.contains(s.image_e);
}

std::optional<Filtration> relative_monodromy_filtration(const ExtensionFrame& frame, const QMat& n,
                                                        const std::optional<Vec>& kernel_shift) {
  auto s = split_checked(frame, n);
  auto a = split_solution(s.restriction, s.w_pp.at(-2), s.image_e);
  if (!a) return std::nullopt;
  if (kernel_shift) {
    if (!is_zero(s.restriction.apply(*kernel_shift)))
      throw precondition_violated("kernel shift is not in Ker N''");
    *a = add(*a, *kernel_shift);
  }
  const std::size_t d = frame.dim();
  Vec e_tilde = frame.embed(scale(Rat(-1), *a));
  e_tilde[frame.e_index()] = 1;
  std::map<int, Subspace> steps;
  auto lift_sub = [&](const Subspace& sub) {
    std::vector<Vec> vs;
    for (const auto& b : sub.basis()) vs.push_back(frame.embed(b));
    return Subspace::span(d, vs);
  };
  const int lo = std::min(s.w_pp.lowest(), 0) - 1;
  const int hi = std::max(s.w_pp.highest(), 0);
  for (int j = lo; j <= hi; ++j) {
    Subspace mj = lift_sub(s.w_pp.at(j));
    if (j >= 0) mj = mj + Subspace::span(d, {e_tilde});
    steps.emplace(j, mj);
  }
  Filtration m = Filtration::from_steps(d, steps);
  if (!satisfies_relative_axioms(frame, n, m))
    throw MathError("InvariantViolated", "constructed M(N, W) fails the defining axioms");
  return m;
}

bool satisfies_relative_axioms(const ExtensionFrame& frame, const QMat& n, const Filtration& m) {
  const Filtration& w = frame.W();
  const std::size_t d = frame.dim();
  const int lo = std::min({m.lowest(), w.lowest()}) - 3;
  const int hi = std::max({m.highest(), w.highest()}) + 3;
  for (int k = lo; k <= hi; ++k)
    if (!m.at(k - 2).contains(map_subspace(n, m.at(k)))) return false;
  for (const auto& [wt, step] : w.jumps()) {
    (void)step;
    Subspace wk = w.at(wt);
    Subspace wk1 = w.at(wt - 1);
    auto a = [&](int j) { return m.at(j).intersect(wk) + wk1; };
    auto gdim = [&](int j) { return a(j).dim() - a(j - 1).dim(); };
    QMat np = QMat::identity(d);
    for (int l = 0; l <= hi - wt + 1; ++l) {
      if (l > 0) np = np * n;
      if (gdim(wt + l) != gdim(wt - l)) return false;
      if (l == 0) continue;
      Subspace img = map_subspace(np, a(wt + l)) + a(wt - l - 1);
      if (!(img == a(wt - l))) return false;
    }
  }
  return true;
}

bool commutes_by_criterion(const ExtensionFrame& frame, const QMat& n1, const QMat& n2) {
  auto l1 = frame.restriction_scale(n1);
  auto l2 = frame.restriction_scale(n2);
  if (!l1 || !l2 || *l1 != *l2)
    throw precondition_violated("both maps must send H into H' and share the restriction lambda N'");
  QMat r = frame.restriction(n1);
  Vec diff = sub(frame.image_of_e(n1), frame.image_of_e(n2));
  bool criterion = is_zero(r.apply(diff));
  bool direct = (n1 * n2 - n2 * n1).is_zero();
  if (criterion != direct) throw MathError("InvariantViolated", "kernel criterion disagrees with the commutator");
  return criterion;
}

}  // namespace relfan
