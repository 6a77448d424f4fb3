// relfan: build fan windows, run check suites and compute relative
// monodromy filtrations from a degeneration spec file.
//
// Exit codes: 0 all checks pass, 1 a check failed or hit a precondition,
// 2 unreadable input, 3 a mathematical invariant was violated.

#include "relfan/errors.hpp"
#include "relfan/fan_checks.hpp"
#include "relfan/gallery.hpp"
#include "relfan/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

using namespace relfan;

namespace {

struct Options {
  std::string spec_path;
  std::optional<int> window;
  std::optional<int> corpus;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
  std::string suite;
  std::string ne;
  std::string n_matrix;
  std::string emit_spec;
};

const std::set<std::string> kPreconditionKinds{"PreconditionViolated", "CubeConditionViolated", "MissingHodgeData"};

struct Loaded {
  std::string text;
  SpecFile spec;
  GSpacePtr gs;
  WindowSpec window;

  SigmaThreeParams params() const {
    if (spec.L_generators) return make_params(gs, ZLattice::generated_by(gs->frame().rank(), *spec.L_generators));
    return default_params(gs);
  }
};

Loaded load(const Options& o) {
  if (o.spec_path.empty()) throw ParseError("--spec is required");
  Loaded l;
  l.text = read_file(o.spec_path);
  l.spec = parse_spec(l.text);
  if (o.window) l.spec.window = *o.window;
  if (o.corpus) l.spec.corpus = static_cast<std::size_t>(*o.corpus);
  if (o.seed) l.spec.seed = *o.seed;
  if (l.spec.window < 0) throw ParseError("--window must be nonnegative");
  l.gs = make_gspace(ExtensionFrame(l.spec.data));
  l.window = WindowSpec{l.spec.window, l.spec.cosets};
  return l;
}

Report new_report(const Loaded* l, std::string fan) {
  Report r;
  r.tool_version = RELFAN_VERSION;
  r.spec_hash = l ? fnv1a64(l->text) : "";
  r.fan = std::move(fan);
  return r;
}

std::string joined(const std::vector<std::string>& names) {
  std::string s;
  for (const auto& n : names) s += (s.empty() ? "" : ",") + n;
  return s;
}

CheckResult precondition(const std::string& name, const MathError& e) {
  CheckResult c{name, Status::precondition, {}};
  c.witness["kind"] = e.kind();
  c.witness["reason"] = e.what();
  return c;
}

/// The fan named `name`, honouring the corrupted-cell override for sigma3.
std::unique_ptr<LazyFan> make_fan(const Loaded& l, const std::string& name) {
  if (name == "sigma3") {
    if (l.spec.corrupt_cell) return std::make_unique<CorruptedSigmaThree>(l.params(), l.spec.corrupt_cell->upper);
    return std::make_unique<SigmaThreeFan>(l.params());
  }
  if (name == "sigma0") return std::make_unique<RayFan>(l.gs, RayFan::Kind::sigma0);
  if (name == "sigma1") return std::make_unique<RayFan>(l.gs, RayFan::Kind::sigma1);
  if (name == "neron") return std::make_unique<RayFan>(l.gs, RayFan::Kind::neron);
  if (name == "sigma2") return std::make_unique<CubeFan>(l.gs, l.spec.cube_scope);
  throw ParseError("unknown fan " + name);
}

/// Runs fn for every fan of the spec; a fan that cannot be built under its
/// preconditions contributes a single precondition result.
template <class Fn>
void for_each_fan(const Loaded& l, Report& r, const std::string& check, Fn&& fn) {
  for (const auto& name : l.spec.fans) {
    std::unique_ptr<LazyFan> fan;
    try {
      fan = make_fan(l, name);
    } catch (const MathError& e) {
      if (!kPreconditionKinds.count(e.kind())) throw;
      r.checks.push_back(precondition(check + ":" + name, e));
      continue;
    }
    fn(*fan);
  }
}

void rename(std::vector<CheckResult>& checks, const std::string& suffix) {
  for (auto& c : checks) c.name += ":" + suffix;
}

Report cmd_build(const Options& o) {
  const Loaded l = load(o);
  Report r = new_report(&l, joined(l.spec.fans));
  Json fans = Json::object();
  for_each_fan(l, r, "fan-axioms", [&](const LazyFan& fan) {
    Json cells = Json::array();
    for (const auto& c : fan.window_cells(l.window)) {
      Json cj = json_of(c);
      cj["faces"] = c.faces().size();
      cells.push_back(std::move(cj));
    }
    fans[fan.name()] = {{"bound", l.window.bound}, {"cell_count", cells.size()}, {"cells", std::move(cells)}};
    CheckResult ax = fan_axioms_check(fan, l.window);
    ax.name += ":" + fan.name();
    r.checks.push_back(std::move(ax));
  });
  r.data["windows"] = std::move(fans);
  return r;
}

Report gallery_report() {
  Report r = new_report(nullptr, "gallery");
  r.checks = gallery_checks();
  return r;
}

SpecFile gallery_spec() {
  SpecFile s;
  s.data = kunneth_h3();
  s.window = 0;
  s.corpus = 100;
  s.cube_scope = CubeConditionScope::nilpotency_only;
  return s;
}

Report cmd_check(const Options& o) {
  if (o.suite == "gallery") {
    std::unique_ptr<Loaded> l;
    if (!o.spec_path.empty()) l = std::make_unique<Loaded>(load(o));
    Report r = new_report(l.get(), "gallery");
    r.checks = gallery_checks();
    return r;
  }
  const Loaded l = load(o);
  Report r = new_report(&l, joined(l.spec.fans));
  if (o.suite == "axioms") {
    for_each_fan(l, r, "fan-axioms", [&](const LazyFan& fan) {
      CheckResult c = fan_axioms_check(fan, l.window);
      c.name += ":" + fan.name();
      r.checks.push_back(std::move(c));
    });
  } else if (o.suite == "gamma") {
    const auto gens = gamma_generators(l.gs->frame());
    for_each_fan(l, r, "gamma", [&](const LazyFan& fan) {
      if (const auto* s = dynamic_cast<const SigmaThreeFan*>(&fan)) {
        CheckResult c = ad_action_check(*s, gens, l.window);
        c.name += ":" + fan.name();
        r.checks.push_back(std::move(c));
      }
      auto sc = strong_compatibility_check(fan, gens, l.window);
      rename(sc, fan.name());
      for (auto& c : sc) r.checks.push_back(std::move(c));
    });
  } else if (o.suite == "completeness") {
    const auto corpus = make_corpus(l.params(), l.spec.corpus, l.spec.seed);
    r.data["corpus_size"] = corpus.size();
    r.data["seed"] = l.spec.seed;
    for_each_fan(l, r, "relative-completeness", [&](const LazyFan& fan) {
      CheckResult c = relative_completeness_check(fan, corpus);
      c.name += ":" + fan.name();
      r.checks.push_back(std::move(c));
    });
  } else if (o.suite == "relations") {
    r.fan = "sigma0,sigma1,sigma2,neron,sigma3";
    r.checks = fan_relations_check(l.params(), l.spec.cube_scope, l.window);
  } else {
    throw ParseError("unknown suite " + o.suite);
  }
  return r;
}

Vec parse_vector_list(const std::string& s) {
  Vec v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_rat(item));
  return v;
}

Report cmd_rmf(const Options& o) {
  const Loaded l = load(o);
  const ExtensionFrame& f = l.gs->frame();
  if (o.ne.empty() == o.n_matrix.empty()) throw ParseError("give exactly one of --ne and --n");
  QMat n;
  if (!o.ne.empty()) {
    Vec v;
    try {
      v = parse_vector_list(o.ne);
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad --ne: ") + e.what());
    }
    if (v.size() != f.rank()) throw ParseError("--ne needs " + std::to_string(f.rank()) + " entries");
    n = f.lift(v);
  } else {
    Json j;
    try {
      j = Json::parse(o.n_matrix);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("bad --n: ") + e.what());
    }
    n = mat_from_json(j, f.dim(), f.dim());
  }
  if (!f.in_g(n)) throw MathError("NotInG", "N must map H into H' and restrict to an element of sp/so(H')");

  Report r = new_report(&l, "rmf");
  r.data["N"] = json_of(n);
  const bool admissible = admissible_direction(f, n);
  r.data["admissible"] = admissible;
  r.data["image_of_e"] = json_of(f.image_of_e(n));
  const auto m = relative_monodromy_filtration(f, n);
  r.data["M"] = m ? json_of(*m) : Json("NoExist");

  CheckResult agree{"existence-matches-admissibility", m.has_value() == admissible ? Status::pass : Status::fail, {}};
  agree.witness["exists"] = m.has_value();
  agree.witness["admissible"] = admissible;
  if (!admissible) {
    agree.witness["reason"] = "N(e) not in P = Im N'' + W''_{-2}";
    agree.witness["image_of_e"] = json_of(f.image_of_e(n));
  }
  r.checks.push_back(std::move(agree));
  if (m) {
    CheckResult ax{"relative-axioms", satisfies_relative_axioms(f, n, *m) ? Status::pass : Status::fail, {}};
    r.checks.push_back(std::move(ax));
  }
  return r;
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw ParseError("cannot write " + o.out);
  out << text;
}

std::string render(const Options& o, const Report& r) {
  if (o.format == "text") return r.to_text();
  return r.to_json().dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fans for degenerations of intermediate Jacobians: build windows and check them exactly"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool spec_required) {
    auto* spec = sub->add_option("--spec", o.spec_path, "degeneration spec (relfan-spec/1 JSON)");
    if (spec_required) spec->required();
    sub->add_option("--out", o.out, "write the report here instead of stdout");
    sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "text"}));
  };
  auto add_window = [&](CLI::App* sub) {
    sub->add_option("--window", o.window, "cell window bound |n_j| <= b");
  };

  auto* build = app.add_subcommand("build", "construct the fan windows of a spec");
  add_common(build, true);
  add_window(build);

  auto* check = app.add_subcommand("check", "run a check suite");
  add_common(check, false);
  add_window(check);
  check->add_option("--suite", o.suite, "suite to run")
      ->required()
      ->check(CLI::IsMember({"axioms", "gamma", "completeness", "relations", "gallery"}));
  check->add_option("--corpus", o.corpus, "corpus size for the completeness suite");
  check->add_option("--seed", o.seed, "corpus seed");

  auto* rmf = app.add_subcommand("rmf", "relative monodromy filtration of N with N|H' = N'");
  add_common(rmf, true);
  rmf->add_option("--ne", o.ne, "N(e) as comma separated rationals (N|H' = N')");
  rmf->add_option("--n", o.n_matrix, "N as a JSON matrix on H' + e");

  auto* gallery = app.add_subcommand("gallery", "the Y^2 x E degeneration: Kunneth data, certificate, slit");
  add_common(gallery, false);
  gallery->add_option("--emit-spec", o.emit_spec, "also write its spec file here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Report r;
    try {
      if (command == "build")
        r = cmd_build(o);
      else if (command == "check")
        r = cmd_check(o);
      else if (command == "rmf")
        r = cmd_rmf(o);
      else {
        r = gallery_report();
        r.data["degeneration"] = spec_to_json(gallery_spec());
        if (!o.emit_spec.empty()) {
          std::ofstream out(o.emit_spec, std::ios::binary);
          if (!out) throw ParseError("cannot write " + o.emit_spec);
          out << spec_to_json(gallery_spec()).dump(2) << "\n";
        }
      }
    } catch (const MathError& e) {
      if (!kPreconditionKinds.count(e.kind())) throw;
      r = new_report(nullptr, command);
      if (!o.spec_path.empty()) r.spec_hash = fnv1a64(read_file(o.spec_path));
      r.checks.push_back(precondition(command, e));
    }
    write_output(o, render(o, r));
    return r.exit_code();
  } catch (const ParseError& e) {
    std::cerr << "relfan: input error: " << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    std::cerr << "relfan: invariant violation: " << e.what() << "\n";
    return 3;
  }
}
