// Acceptance run: one PASS/FAIL line per criterion. Every comparison is
// exact (rational or Gaussian-rational arithmetic); the only pinned
// numbers are instance counts, window bounds and orbit samples below.
// Exit status 0 iff every criterion passes.

#include "relfan/classifying.hpp"
#include "relfan/errors.hpp"
#include "relfan/fan_checks.hpp"
#include "relfan/fixtures.hpp"
#include "relfan/gallery.hpp"
#include "relfan/io.hpp"
#include "support.hpp"

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace relfan;
namespace gen = relfan::testing;

namespace {

// Pinned parameters.
constexpr int kRmfInstances = 100;         // per fixture, admissible and inadmissible each
constexpr int kFactInstances = 1000;       // per fixture and per equivalence
constexpr int kGammaMaxPower = 2;          // |k| <= 2
constexpr int kCellBound = 3;              // |n_j| <= 3
constexpr std::size_t kCorpusSize = 500;   // per fixture
constexpr std::uint64_t kSeed = 20261017;
constexpr int kGalleryRelationsWindow = 0;
const Rat kCorruptUpper(3, 2);
const Rat kCertificateC(1, 3);
constexpr long kCertificateFirst = 1, kCertificateLast = 10;

const std::string kData = RELFAN_DATA_DIR;
const std::string kCli = RELFAN_CLI_PATH;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void note(std::string s) { notes.push_back(std::move(s)); }
  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    note(what);
  }
  std::string detail() const {
    std::string s;
    for (const auto& n : notes) s += (s.empty() ? "" : "; ") + n;
    return s;
  }
};

struct Fixture {
  std::string name;
  SpecFile spec;
  ExtensionFrame frame() const { return ExtensionFrame(spec.data); }
};

template <class... Ts>
std::string cat(const Ts&... xs) {
  std::ostringstream os;
  (os << ... << xs);
  return os.str();
}

Fixture fixture(const std::string& file) { return {file, load_spec(kData + "/" + file + ".json")}; }

/// W'' = W(N|H')[-k]: W' for lambda > 0, the single jump at k for lambda = 0.
Filtration w_double_prime(const ExtensionFrame& f, const Rat& lambda) {
  if (sgn(lambda) > 0 || f.n_prime().is_zero()) return f.W_prime();
  return Filtration::trivial(f.rank(), 0).shift(-f.weight_k());
}

/// Every filtration M satisfying the relative axioms induces W'' on
/// gr_k = H' (uniqueness of the monodromy filtration) and the single jump
/// at 0 on gr_0 = H/H' (N vanishes there). So M_j = W''_j for j < 0 and
/// M_j = W''_j + Q(e + a_j) for j >= 0. When W''_0 = H' this leaves exactly
/// one candidate; the enumeration below is then exhaustive. Returns
/// nullopt when the candidate set is not finite.
std::optional<std::vector<Filtration>> all_candidates(const ExtensionFrame& f, const Rat& lambda) {
  const Filtration wpp = w_double_prime(f, lambda);
  if (!wpp.at(0).is_full()) return std::nullopt;
  std::map<int, Subspace> steps;
  for (int j = std::min(wpp.lowest(), 0) - 1; j < 0; ++j) {
    std::vector<Vec> vs;
    for (const auto& b : wpp.at(j).basis()) vs.push_back(f.embed(b));
    steps.emplace(j, Subspace::span(f.dim(), vs));
  }
  steps.emplace(0, Subspace::full(f.dim()));
  return std::vector<Filtration>{Filtration::from_steps(f.dim(), steps)};
}

/// N(e) admissible for N|H' = lambda N': lambda (Im N' + W'_{-2}) for
/// lambda > 0, W''_{-2} for lambda = 0.
Vec admissible_image(gen::Rng& rng, const ExtensionFrame& f, const Rat& lambda) {
  if (sgn(lambda) > 0) return scale(lambda, gen::random_admissible_image(rng, f));
  return gen::random_member(rng, w_double_prime(f, lambda).at(-2));
}

Rat random_lambda(gen::Rng& rng, bool allow_zero) {
  static const std::array<Rat, 5> choices{Rat(1), Rat(2), Rat(1, 2), Rat(5, 3), Rat(0)};
  return choices[static_cast<std::size_t>(gen::uniform(rng, 0, allow_zero ? 4 : 3))];
}

// 1. M(N, W) on admissible extensions; NoExist on inadmissible ones, with
// the exhaustive candidate oracle in dimension <= 3.
void criterion_rmf(Outcome& out) {
  gen::Rng rng(kSeed);
  std::size_t admissible = 0, inadmissible = 0, exhaustive = 0;
  for (const char* name : {"fix_a", "fix_d", "y2xe"}) {
    const ExtensionFrame f = fixture(name).frame();
    for (int t = 0; t < kRmfInstances; ++t) {
      const Rat lambda = random_lambda(rng, t % 10 == 9);
      const QMat n = f.lift(lambda * f.n_prime(), admissible_image(rng, f, lambda));
      const auto m = relative_monodromy_filtration(f, n);
      out.require(m.has_value(), std::string(name) + ": admissible instance without M");
      if (!m) continue;
      out.require(satisfies_relative_axioms(f, n, *m), std::string(name) + ": M fails the axioms");
      const auto shifted = relative_monodromy_filtration(f, n, gen::random_member(rng, kernel(f.restriction(n))));
      out.require(shifted && *shifted == *m, std::string(name) + ": M depends on the splitting");
      ++admissible;
    }
    for (int t = 0; t < kRmfInstances; ++t) {
      const auto ne = gen::random_inadmissible_image(rng, f);
      if (!ne) {
        out.require(false, std::string(name) + ": no inadmissible direction exists");
        break;
      }
      const Rat lambda = random_lambda(rng, false);
      const QMat n = f.lift(lambda * f.n_prime(), scale(lambda, *ne));
      out.require(!relative_monodromy_filtration(f, n).has_value(), std::string(name) + ": M for an inadmissible N");
      ++inadmissible;
      if (f.dim() > 3) continue;
      const auto cands = all_candidates(f, lambda);
      out.require(cands.has_value(), std::string(name) + ": candidate set not finite");
      if (!cands) continue;
      for (const auto& c : *cands)
        out.require(!satisfies_relative_axioms(f, n, c), std::string(name) + ": oracle found an M");
      ++exhaustive;
    }
  }
  out.note(cat(admissible, " admissible, ", inadmissible, " inadmissible, ", exhaustive, " exhaustively confirmed"));
}

// 2. Existence of M decided by admissibility, commutation decided by the
// kernel criterion, each against direct verification.
void criterion_facts(Outcome& out) {
  gen::Rng rng(kSeed + 1);
  std::size_t fact1 = 0, fact2 = 0, disagree1 = 0, disagree2 = 0;
  for (const char* name : {"fix_a", "fix_d"}) {
    const ExtensionFrame f = fixture(name).frame();
    for (int t = 0; t < kFactInstances; ++t) {
      const Rat lambda = random_lambda(rng, true);
      const Vec ne = (t % 2) ? admissible_image(rng, f, lambda) : gen::random_vec(rng, f.rank());
      const QMat n = f.lift(lambda * f.n_prime(), ne);
      const bool decided = admissible_direction(f, n);
      bool exists = false;
      if (const auto m = relative_monodromy_filtration(f, n)) {
        exists = satisfies_relative_axioms(f, n, *m);
      } else {
        const auto cands = all_candidates(f, lambda);
        if (!cands) {
          out.require(false, std::string(name) + ": no exhaustive oracle");
          continue;
        }
        for (const auto& c : *cands) exists = exists || satisfies_relative_axioms(f, n, c);
      }
      disagree1 += decided != exists;
      ++fact1;
    }
    for (int t = 0; t < kFactInstances; ++t) {
      const Rat lambda = random_lambda(rng, true);
      const QMat r = lambda * f.n_prime();
      const Vec a = gen::random_vec(rng, f.rank());
      const Vec b = (t % 2) ? add(a, gen::random_member(rng, kernel(r))) : gen::random_vec(rng, f.rank());
      const QMat n1 = f.lift(r, a), n2 = f.lift(r, b);
      const bool direct = (n1 * n2 - n2 * n1).is_zero();
      try {
        disagree2 += commutes_by_criterion(f, n1, n2) != direct;
      } catch (const MathError&) {
        ++disagree2;
      }
      ++fact2;
    }
  }
  out.require(disagree1 == 0, std::to_string(disagree1) + " existence disagreements");
  out.require(disagree2 == 0, std::to_string(disagree2) + " commutation disagreements");
  out.note(cat(fact1, " existence and ", fact2, " commutation instances"));
}

SigmaThreeParams params_of(const Fixture& fx) { return default_params(make_gspace(fx.frame())); }

// 3. Ad(gamma) sigma(x, n) = sigma(y, n + m) on fix_a and fix_d windows.
void criterion_gamma(Outcome& out) {
  for (const char* name : {"fix_a", "fix_d"}) {
    const Fixture fx = fixture(name);
    const SigmaThreeFan fan(params_of(fx));
    const auto gens = gamma_generators(fan.gspace_ptr()->frame(), kGammaMaxPower);
    const CheckResult r = ad_action_check(fan, gens, WindowSpec{kCellBound, fx.spec.cosets});
    out.require(r.status == Status::pass, std::string(name) + ": " + r.witness.dump());
    out.note(cat(name, " ", gens.size(), " generators"));
  }
}

// 4. Finite subdivision of every corpus cone against sigma-three.
void criterion_completeness(Outcome& out) {
  for (const char* name : {"fix_a", "fix_d"}) {
    const Fixture fx = fixture(name);
    const SigmaThreeParams params = params_of(fx);
    const SigmaThreeFan fan(params);
    const auto corpus = make_corpus(params, kCorpusSize, kSeed);
    out.require(corpus.size() == kCorpusSize, std::string(name) + ": corpus has " + std::to_string(corpus.size()));
    std::size_t no_cover = 0, pieces = 0;
    for (const auto& o : relative_completeness(fan, corpus)) {
      no_cover += o.status != Status::pass;
      pieces += o.pieces;
    }
    out.require(no_cover == 0, std::string(name) + ": " + std::to_string(no_cover) + " cones not covered");
    out.note(cat(name, " ", corpus.size(), " cones, ", pieces, " pieces"));
  }
}

// 5. Window fan axioms; the corrupted fixture fails with a witness.
void criterion_fan_axioms(Outcome& out) {
  for (const char* name : {"fix_a", "fix_d"}) {
    const Fixture fx = fixture(name);
    const CheckResult r = fan_axioms_check(SigmaThreeFan(params_of(fx)), WindowSpec{kCellBound, fx.spec.cosets});
    out.require(r.status == Status::pass, std::string(name) + ": " + r.witness.dump());
  }
  const Fixture bad = fixture("fix_a_corrupted");
  const CheckResult r = fan_axioms_check(CorruptedSigmaThree(params_of(bad), kCorruptUpper), WindowSpec{2, {}});
  out.require(r.status == Status::fail && r.witness.contains("violation"), "corrupted fan not rejected");
  out.note("corrupted fan rejected with a witness");
}

// 6. Fan relations under the cube condition.
void criterion_relations(Outcome& out) {
  struct Case {
    const char* name;
    CubeConditionScope scope;
    int bound;
  };
  for (const Case& c : {Case{"fix_a", CubeConditionScope::full, kCellBound},
                        Case{"y2xe", CubeConditionScope::nilpotency_only, kGalleryRelationsWindow}}) {
    const Fixture fx = fixture(c.name);
    const auto results = fan_relations_check(params_of(fx), c.scope, WindowSpec{c.bound, fx.spec.cosets});
    bool saw_pq = false;
    for (const auto& r : results) {
      saw_pq = saw_pq || r.name == "p-equals-q";
      out.require(r.status == Status::pass, std::string(c.name) + " " + r.name + ": " + to_string(r.status));
    }
    out.require(saw_pq, std::string(c.name) + ": P = Q not checked");
    out.note(cat(c.name, " ", results.size(), " relations"));
  }
}

// 7. The Y^2 x E certificate, including the full cube condition.
void criterion_gallery(Outcome& out) {
  const ExtensionFrame f(kunneth_h3());
  const CubeCondition cube = check_cube_condition(f);
  out.require(f.rank() == 20, "rank " + std::to_string(f.rank()));
  out.require(cube.n_prime_squared_zero, "N'^2 != 0");
  out.require(cube.gr0_type_00, "gr_0 of the limit is not of type (0,0)");
  for (const auto& r : gallery_checks())
    out.require(r.status == Status::pass, r.name + ": " + to_string(r.status));
  const HausdorffCertificate cert = hausdorff_witness(kCertificateC, {}, kCertificateFirst, kCertificateLast);
  bool b_minus_one = cert.steps.size() == static_cast<std::size_t>(kCertificateLast - kCertificateFirst + 1);
  for (const auto& s : cert.steps) b_minus_one = b_minus_one && s.equivalence.b == GaussRat(-1);
  out.require(b_minus_one && !cert.limits.holds && cert.passes(), "Hausdorff certificate");
}

// 8. Period domain membership on fix_a and the Tate orbit.
void criterion_classifying(Outcome& out) {
  const ExtensionFrame f = fixture("fix_a").frame();
  auto point = [&](const GaussRat& tau) { return PeriodPoint::split(f, {{0, {{tau, GaussRat(1)}}}}); };
  const GaussRat i = GaussRat::i_unit();
  out.require(in_D(point(i)), "tau = i not in D");
  out.require(!in_D(point(GaussRat(Rat(0), Rat(-1)))), "tau = -i in D");
  const Cone tate = Cone::from_generators(make_gspace(f), {f.lift(f.n_prime(), zero_vec(f.rank()))});
  const auto orbit = nilpotent_orbit_test(point(GaussRat(0)), tate, kDefaultOrbitSamples);
  out.require(orbit.sampled_pass && orbit.samples == kDefaultOrbitSamples.size(), "Tate orbit leaves D");
  out.note("sampled pass at y in {1,4,16,64,256}");
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  CliRun r;
  FILE* pipe = popen((kCli + " " + args + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// 9. Every suite twice with the same seed; reports must match byte for
// byte. The rank-20 frame runs the suites that finish in seconds.
void criterion_determinism(Outcome& out) {
  std::vector<std::string> runs;
  for (const char* f : {"fix_a", "fix_d", "fix_a_corrupted"})
    for (const char* s : {"axioms", "gamma", "completeness", "relations"})
      runs.push_back(std::string("check --suite ") + s + " --spec " + kData + "/" + f + ".json --seed 5");
  runs.push_back("check --suite relations --spec " + kData + "/y2xe.json --seed 5");
  runs.push_back("check --suite gallery --spec " + kData + "/y2xe.json --seed 5");
  runs.push_back("build --spec " + kData + "/fix_d.json");
  for (const auto& args : runs) {
    const CliRun a = run_cli(args), b = run_cli(args);
    out.require(a.code >= 0 && a.code <= 1 && !a.out.empty(), "did not run: " + args);
    out.require(a.code == b.code && a.out == b.out, "reports differ: " + args);
  }
  out.note(cat(runs.size(), " invocations repeated"));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"relative monodromy filtration axioms and NoExist", criterion_rmf},
      {"existence and commutation criteria agree with direct checks", criterion_facts},
      {"Gamma acts on sigma-three cells by the index formula", criterion_gamma},
      {"relative completeness on a 500-cone corpus", criterion_completeness},
      {"fan axioms on windows; corrupted fan rejected", criterion_fan_axioms},
      {"fan relations under the cube condition", criterion_relations},
      {"Y^2 x E certificate", criterion_gallery},
      {"classifying space predicates and the Tate orbit", criterion_classifying},
      {"byte-identical reports", criterion_determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[k].second(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !out.pass;
    std::printf("criterion %zu: %s  %s (%s) [%.1fs]\n", k + 1, out.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                out.detail().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
