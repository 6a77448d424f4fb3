#include "relfan/fan_checks.hpp"

#include "relfan/errors.hpp"
#include "relfan/io.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace relfan {

namespace {

Json gamma_json(const GammaElement& g) { return {{"k", g.power_k}, {"h", json_of(g.h)}}; }

std::vector<GammaElement> with_inverses(const ExtensionFrame& f, const std::vector<GammaElement>& gens) {
  std::vector<GammaElement> out = gens;
  for (const auto& g : gens) out.push_back(gamma_inverse(f, g));
  return out;
}

// Uniform integer in [lo, hi] by reduction; identical across standard
// libraries, which keeps corpora reproducible.
long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rat draw_rat(std::mt19937_64& rng, long num_bound, long max_den) {
  Rat r(draw(rng, -num_bound, num_bound), draw(rng, 1, max_den));
  r.canonicalize();
  return r;
}

CheckResult members_check(const std::string& name, const std::vector<Cone>& cones, const LazyFan& host,
                          Exec exec) {
  std::vector<char> ok(cones.size(), 0);
  for_each_index(cones.size(), exec, [&](std::size_t i) { ok[i] = host.is_member(cones[i]) ? 1 : 0; });
  CheckResult r{name, Status::pass, {{"cones", cones.size()}}};
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (!ok[i]) {
      r.status = Status::fail;
      r.witness = {{"cones", cones.size()}, {"non_member", json_of(cones[i])}, {"host", host.name()}};
      break;
    }
  return r;
}

}  // namespace

Cone conjugate(const Cone& c, const GammaElement& g) {
  const ExtensionFrame& f = c.gspace().frame();
  const QMat gm = gamma_matrix(f, g);
  const QMat gi = gamma_matrix(f, gamma_inverse(f, g));
  std::vector<QMat> gens;
  for (const auto& n : c.generators()) gens.push_back(gm * n * gi);
  return Cone::from_trusted_generators(c.gspace_ptr(), gens);
}

CellIndex ad_action(const SigmaThreeParams& params, const GammaElement& g, const CellIndex& idx) {
  const ExtensionFrame& f = params.frame();
  const QMat gk = f.restriction(gamma_matrix(f, g));
  const Vec h = to_rat(gamma_inverse(f, g).h);  // gamma^{-1} e = e + h
  Vec w = gk.apply(section(params, idx.x));
  w = add(w, f.n_prime().apply(gk.apply(h)));
  CellIndex out;
  out.x = canonical_coset(params, w);
  const Int a = a_of(params, idx.x);
  if (a_of(params, out.x) != a) throw MathError("InvariantViolated", "a(y) differs from a(x)");
  const Vec aq = scale(Rat(a), sub(w, section(params, out.x)));
  out.n = idx.n;
  for (std::size_t j = 0; j < params.m(); ++j) {
    Rat mj = dot(params.e_functionals[j], aq);
    if (mj.get_den() != 1) throw MathError("InvariantViolated", "a(x) q is not in Q cap L");
    out.n[j] += mj.get_num();
  }
  return out;
}

std::vector<GammaElement> gamma_generators(const ExtensionFrame& frame, int max_power) {
  const std::size_t n = frame.rank();
  std::vector<GammaElement> out;
  for (int k = -max_power; k <= max_power; ++k) {
    out.push_back(make_gamma(frame, k, IntVec(n, Int(0))));
    for (std::size_t i = 0; i < n; ++i) {
      IntVec h(n, Int(0));
      h[i] = 1;
      out.push_back(make_gamma(frame, k, h));
    }
  }
  return out;
}

CheckResult ad_action_check(const SigmaThreeFan& fan, const std::vector<GammaElement>& gens, const WindowSpec& w,
                            Exec exec) {
  const auto& params = fan.params();
  const auto all = with_inverses(params.frame(), gens);
  const auto cells = fan.window_indices(w);
  const std::size_t total = all.size() * cells.size();
  std::vector<std::optional<Json>> bad(total);
  for_each_index(total, exec, [&](std::size_t t) {
    const GammaElement& g = all[t / cells.size()];
    const CellIndex& idx = cells[t % cells.size()];
    try {
      CellIndex res = ad_action(params, g, idx);
      Cone lhs = conjugate(sigma_cell(params, idx), g);
      Cone rhs = sigma_cell(params, res);
      if (!(lhs == rhs))
        bad[t] = Json{{"gamma", gamma_json(g)},        {"cell", json_of(idx)}, {"predicted", json_of(res)},
                      {"conjugated", json_of(lhs)}, {"predicted_cone", json_of(rhs)}};
    } catch (const MathError& e) {
      bad[t] = Json{{"gamma", gamma_json(g)}, {"cell", json_of(idx)}, {"error", e.what()}};
    }
  });
  CheckResult r{"gamma-action-formula", Status::pass, {{"elements", all.size()}, {"cells", cells.size()}}};
  std::size_t mismatches = 0;
  for (auto& b : bad)
    if (b) {
      if (mismatches == 0) r.witness["first_mismatch"] = *b;
      ++mismatches;
    }
  r.witness["mismatches"] = mismatches;
  if (mismatches) r.status = Status::fail;
  return r;
}

std::vector<CheckResult> strong_compatibility_check(const LazyFan& fan, const std::vector<GammaElement>& gens,
                                                    const WindowSpec& w, Exec exec, int max_step) {
  const ExtensionFrame& f = fan.gspace_ptr()->frame();
  const auto all = with_inverses(f, gens);
  const auto cells = fan.window_cells(w);
  std::vector<CheckResult> out;

  const std::size_t total = all.size() * cells.size();
  std::vector<std::optional<Json>> bad(total);
  for_each_index(total, exec, [&](std::size_t t) {
    const GammaElement& g = all[t / cells.size()];
    const Cone& c = cells[t % cells.size()];
    Cone image = conjugate(c, g);
    if (!fan.is_member(image))
      bad[t] = Json{{"gamma", gamma_json(g)}, {"cell", json_of(c)}, {"image", json_of(image)}};
  });
  CheckResult a{"gamma-stability", Status::pass, {{"elements", all.size()}, {"cells", cells.size()}}};
  for (auto& b : bad)
    if (b) {
      a.status = Status::fail;
      a.witness["non_member"] = *b;
      break;
    }
  out.push_back(std::move(a));

  std::set<IntVec> ray_set;
  for (const auto& c : cells)
    for (const auto& r : c.poly().rays()) ray_set.insert(r);
  const std::vector<IntVec> rays(ray_set.begin(), ray_set.end());
  const GSpace& gs = *fan.gspace_ptr();
  std::vector<int> steps(rays.size(), 0);
  for_each_index(rays.size(), exec, [&](std::size_t i) {
    const QMat r = gs.matrix(to_rat(rays[i]));
    const auto lambda = f.restriction_scale(r);
    if (!lambda) return;
    for (int step = 1; step <= max_step; ++step) {
      const Rat s = sgn(*lambda) > 0 ? Rat(step) / *lambda : Rat(step);
      const QMat g = exp_nilpotent(s * r);
      if (is_integral(g) && as_gamma(f, to_int(g))) {
        steps[i] = step;
        return;
      }
    }
  });
  CheckResult b{"integral-generation", Status::interpreted_pass, {{"rays", rays.size()}}};
  b.witness["reading"] = "each extreme ray contains log(gamma) for some gamma in Gamma";
  int max_found = 0;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (steps[i] == 0) {
      b.status = Status::fail;
      b.witness["ray_without_gamma"] = json_of(gs.matrix(to_rat(rays[i])));
      b.witness["search_bound"] = max_step;
      break;
    }
    max_found = std::max(max_found, steps[i]);
  }
  b.witness["max_step"] = max_found;
  out.push_back(std::move(b));
  return out;
}

std::vector<Cone> make_corpus(const SigmaThreeParams& params, std::size_t size, std::uint64_t seed) {
  const ExtensionFrame& f = params.frame();
  const std::size_t n = f.rank();
  std::mt19937_64 rng(seed);
  auto random_p = [&] {
    Vec v = zero_vec(n);
    for (const auto& b : params.basis_e) axpy(draw_rat(rng, 12, 4), b, v);
    for (const auto& b : params.basis_f) axpy(draw_rat(rng, 12, 4), b, v);
    return v;
  };
  std::vector<Cone> out;
  out.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    const Vec v1 = random_p();
    const Rat l1(draw(rng, 1, 3));
    const QMat g1 = l1 * f.lift(v1);
    if (i % 2 == 0) {
      out.push_back(Cone::from_generators(params.gs, {g1}));
      continue;
    }
    std::optional<QMat> g2;
    for (int attempt = 0; attempt < 64 && !g2; ++attempt) {
      Vec v2 = v1;
      for (const auto& b : params.basis_e) axpy(draw_rat(rng, 30, 3), b, v2);
      if (draw(rng, 0, 3) == 0)
        for (const auto& b : params.basis_f) axpy(draw_rat(rng, 4, 2), b, v2);
      // The kernel criterion compares maps with the same restriction; scaling
      // afterwards does not affect commutation.
      const QMat cand = f.lift(v2);
      if (commutes_by_criterion(f, f.lift(v1), cand)) g2 = Rat(draw(rng, 1, 2)) * cand;
    }
    out.push_back(g2 ? Cone::from_generators(params.gs, {g1, *g2}) : Cone::from_generators(params.gs, {g1}));
  }
  return out;
}

std::vector<CompletenessOutcome> relative_completeness(const LazyFan& fan, const std::vector<Cone>& corpus,
                                                       Exec exec) {
  std::vector<CompletenessOutcome> out(corpus.size());
  for_each_index(corpus.size(), exec, [&](std::size_t i) {
    try {
      auto r = subdivide_against(corpus[i], fan);
      if (auto* s = std::get_if<Subdivision>(&r)) {
        out[i].pieces = s->pieces.size();
      } else {
        out[i].status = Status::fail;
        out[i].detail = std::get<NoCover>(r).reason;
      }
    } catch (const MathError& e) {
      out[i].status = e.kind() == "PreconditionViolated" ? Status::precondition : Status::fail;
      out[i].detail = e.what();
    }
  });
  return out;
}

CheckResult relative_completeness_check(const LazyFan& fan, const std::vector<Cone>& corpus, Exec exec) {
  const auto outcomes = relative_completeness(fan, corpus, exec);
  std::size_t pieces = 0, max_pieces = 0, nocover = 0, precondition = 0;
  Json first_failure;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    pieces += o.pieces;
    max_pieces = std::max(max_pieces, o.pieces);
    if (o.status == Status::pass) continue;
    (o.status == Status::fail ? nocover : precondition) += 1;
    if (first_failure.is_null())
      first_failure = {{"index", i}, {"cone", json_of(corpus[i])}, {"status", to_string(o.status)}, {"detail", o.detail}};
  }
  CheckResult r{"relative-completeness", Status::pass, Json::object()};
  r.witness["cones"] = corpus.size();
  r.witness["pieces"] = pieces;
  r.witness["max_pieces"] = max_pieces;
  r.witness["no_cover"] = nocover;
  r.witness["precondition"] = precondition;
  if (!first_failure.is_null()) r.witness["first_failure"] = first_failure;
  if (nocover) r.status = Status::fail;
  else if (precondition) r.status = Status::precondition;
  return r;
}

std::vector<CheckResult> fan_relations_check(const SigmaThreeParams& params, CubeConditionScope scope,
                                             const WindowSpec& w, Exec exec) {
  const ExtensionFrame& f = params.frame();
  std::vector<CheckResult> out;
  CubeCondition cond;
  try {
    cond = check_cube_condition(f);
  } catch (const MathError& e) {
    out.push_back({"cube-condition", Status::precondition, {{"error", e.what()}}});
    return out;
  }
  Json cw = {{"n_prime_squared_zero", cond.n_prime_squared_zero},
             {"gr0_type_00", cond.gr0_type_00},
             {"scope", scope == CubeConditionScope::full ? "full" : "nilpotency-only"}};
  if (!cond.holds(scope)) {
    out.push_back({"cube-condition", Status::precondition, cw});
    return out;
  }
  out.push_back({"cube-condition", Status::pass, cw});

  out.push_back({"p-equals-q", params.pq.p == params.pq.q ? Status::pass : Status::fail,
                 {{"dim_p", params.pq.p.dim()}, {"dim_q", params.pq.q.dim()}}});

  const GSpacePtr& gs = params.gs;
  RayFan s0(gs, RayFan::Kind::sigma0), s1(gs, RayFan::Kind::sigma1), neron(gs, RayFan::Kind::neron);
  CubeFan s2(gs, scope);
  SigmaThreeFan s3(params);
  const auto rays0 = s0.window_cells(w);

  CheckResult r01 = members_check("sigma0-in-sigma1", rays0, s1, exec);
  r01.witness["lattice_containment"] = s1.lattice().contains(s0.lattice());
  if (!s1.lattice().contains(s0.lattice())) r01.status = Status::fail;
  out.push_back(std::move(r01));
  out.push_back(members_check("sigma0-in-sigma2", rays0, s2, exec));
  out.push_back(members_check("sigma1-in-sigma3", s1.window_cells(w), s3, exec));
  out.push_back(members_check("neron-in-sigma3", neron.window_cells(w), s3, exec));

  // Sigma_2 cells against Sigma_3 cells in the slice lambda = 1: containment
  // of every enumerated Sigma_3 cube plus the volume count |det T|, where T
  // holds the Sigma_2 basis in Q cap L coordinates.
  CheckResult cover{"sigma2-covered-by-sigma3", Status::pass, Json::object()};
  const std::size_t m = params.m();
  const auto& e2 = s2.basis();
  if (e2.size() != m) {
    cover.status = Status::fail;
    cover.witness = {{"rank_sigma2_basis", e2.size()}, {"rank_q_cap_l", m}};
    out.push_back(std::move(cover));
    return out;
  }
  QMat t(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    if (!params.pq.q.contains(e2[j])) {
      cover.status = Status::fail;
      cover.witness = {{"basis_vector_outside_q", json_of(e2[j])}};
      out.push_back(std::move(cover));
      return out;
    }
    for (std::size_t i = 0; i < m; ++i) t(i, j) = dot(params.e_functionals[i], e2[j]);
  }
  const Rat det = m == 0 ? Rat(1) : determinant(t);
  const Rat volume = sgn(det) < 0 ? Rat(-det) : det;
  const Vec zero = zero_vec(f.rank());
  const auto cells = box_points(m, w.bound);
  std::vector<std::size_t> counts(cells.size(), 0);
  for_each_index(cells.size(), exec, [&](std::size_t c) {
    Cone big = s2.cell(cells[c]);
    IntVec lo(m), hi(m);
    for (std::size_t i = 0; i < m; ++i) {
      Rat mn, mx;
      for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        Rat v = 0;
        for (std::size_t j = 0; j < m; ++j) v += t(i, j) * Rat(cells[c][j] + Int((mask >> j) & 1U));
        if (mask == 0 || v < mn) mn = v;
        if (mask == 0 || v > mx) mx = v;
      }
      lo[i] = floor_rat(mn);
      hi[i] = -floor_rat(-mx) - 1;
    }
    std::size_t count = 0;
    for (auto& n3 : box_points(lo, hi))
      if (big.contains(sigma_cell(params, {zero, n3}))) ++count;
    if (m == 0 && big.contains(sigma_cell(params, {zero, {}}))) count = 1;
    counts[c] = count;
  });
  cover.witness["cells"] = cells.size();
  cover.witness["expected_subcells"] = json_of(volume);
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (Rat(static_cast<long>(counts[c])) != volume) {
      cover.status = Status::fail;
      cover.witness["cell"] = json_of(cells[c]);
      cover.witness["subcells_found"] = counts[c];
      break;
    }
  out.push_back(std::move(cover));
  return out;
}

CheckResult fan_axioms_check(const LazyFan& fan, const WindowSpec& w, Exec exec) {
  FiniteFan window = fan.window(w, exec);
  FanCheckResult res = check_fan(window, exec);
  CheckResult r{"fan-axioms", res.ok ? Status::pass : Status::fail,
                {{"fan", fan.name()}, {"cones", res.cones_checked}, {"pairs", res.pairs_checked}}};
  if (!res.ok) {
    const auto& v = res.violations.front();
    Json cones = Json::array();
    for (const auto& c : v.witness) cones.push_back(json_of(c));
    r.witness["violation"] = {{"kind", v.kind}, {"detail", v.detail}, {"cones", cones}};
    r.witness["violations"] = res.violations.size();
  }
  return r;
}

CorruptedSigmaThree::CorruptedSigmaThree(SigmaThreeParams params, Rat upper) : base_(params) {
  const std::size_t m = params.m();
  if (m == 0) throw precondition_violated("a corrupted cell needs m >= 1");
  if (sgn(upper) <= 0) throw precondition_violated("the corrupted cell needs a positive upper bound");
  const CellIndex zero{zero_vec(params.frame().rank()), IntVec(m, Int(0))};
  original_ = sigma_cell(params, zero);
  std::vector<QMat> gens;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    Vec v = zero_vec(params.frame().rank());
    for (std::size_t j = 0; j < m; ++j)
      if ((mask >> j) & 1U) axpy(j == 0 ? upper : Rat(1), params.basis_e[j], v);
    gens.push_back(params.frame().lift(v));
  }
  bad_ = Cone::from_trusted_generators(params.gs, gens);
}

std::optional<Cone> CorruptedSigmaThree::cell_containing(const QMat& n) const {
  if (bad_.contains(n)) return bad_;
  auto c = base_.cell_containing(n);
  if (c && *c == original_) return std::nullopt;
  return c;
}

std::vector<Cone> CorruptedSigmaThree::window_cells(const WindowSpec& w) const {
  auto cells = base_.window_cells(w);
  for (auto& c : cells)
    if (c == original_) c = bad_;
  return cells;
}

}  // namespace relfan
