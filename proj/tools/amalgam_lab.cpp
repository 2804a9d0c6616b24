// amalgam-lab: builds the symplectic geometries, certifies their properties and writes JSON.
//
// Exit codes: 0 every asserted check passed, 1 an asserted check failed, 2 invalid
// configuration, 3 a budgeted computation was inconclusive.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "amlab/amlab.hpp"
#include "report_json.hpp"

namespace {

using namespace amlab;
using nlohmann::json;

enum Status { ok = 0, failed = 1, invalid = 2, inconclusive = 3 };

Status worst(Status a, Status b) {
  for (Status s : {invalid, failed, inconclusive})
    if (a == s || b == s) return s;
  return ok;
}

struct RunConfig {
  std::string command;
  int q = 2;
  int n = 4;
  std::optional<int> d;
  bool pi = false;
  bool slim = false;
  std::size_t max_cosets = 1'000'000;
  int threads = 1;
  std::string out;

  GammaSpec gamma() const { return {q, n, d.value_or(n % 2)}; }

  json echo() const {
    return {{"command", command}, {"q", q}, {"n", n}, {"d", d.value_or(n % 2)}, {"pi", pi},
            {"slim", slim}, {"max_cosets", max_cosets}, {"threads", threads}};
  }
};

// Collects named asserted checks and prints them to stderr.
struct Checks {
  json list = json::array();
  Status status = ok;

  void add(std::string const& name, bool pass) {
    list.push_back({{"name", name}, {"ok", pass}});
    if (!pass) status = worst(status, failed);
    std::cerr << "  " << (pass ? "ok   " : "FAIL ") << name << "\n";
  }
};

struct Result {
  json body;
  Status status = ok;
};

Result cmd_geometry(RunConfig const& cfg) {
  GammaSpec const gs = cfg.gamma();
  gs.validate();
  SubspaceGeometry const g = cfg.pi ? build_pi(PiSpec::standard(gs)) : build_gamma(gs);
  IncidenceGeometry const& geom = g.geom;
  std::cerr << "geometry " << (cfg.pi ? "Pi(p,H)" : "Gamma") << " q=" << cfg.q << " n=" << cfg.n << "\n";

  json counts = json::array();
  for (int t : geom.types()) counts.push_back(geom.count_of_type(t));
  std::uint64_t const chambers = geom.count_chambers();
  auto const diam = diameter(shadow_graph(geom, 1, 2).adj);
  bool const transversal = geom.is_transversal();
  bool const string_diagram = geom.has_string_diagram();
  bool const rc = geom.is_residually_connected();

  Result r;
  r.body = {{"kind", cfg.pi ? "pi" : "gamma"},
            {"type_counts", counts},
            {"objects", geom.size()},
            {"edges", geom.edges().size()},
            {"chambers", chambers},
            {"transversal", transversal},
            {"string_diagram", string_diagram},
            {"residually_connected", rc}};
  r.body["shadow_diameter"] = diam ? json(*diam) : json(nullptr);

  if (!cfg.pi) {
    Checks c;
    c.add("transversal", transversal);
    c.add("string diagram", string_diagram);
    c.add("residually connected", rc);
    c.add("point-line shadow diameter 2", diam && *diam == 2);
    PiSpec const ps = PiSpec::standard(gs);
    PhiWitness const w = check_residue_iso(g, g.find(ps.p), ps);
    r.body["phi_certified"] = w.certified();
    c.add("residue of a point is Pi(p,H)", w.certified());
    if (gs.d == 0) {
      std::uint64_t const sp = sp_order(cfg.q, cfg.n);
      std::uint64_t const borel = ipow(static_cast<std::uint64_t>(cfg.q) * (cfg.q - 1), cfg.n / 2);
      r.body["chamber_formula"] = {{"sp_order", sp}, {"borel", borel}, {"quotient", sp / borel}};
      c.add("chambers = |Sp| / |B|", chambers * borel == sp);
    }
    r.body["checks"] = c.list;
    r.status = c.status;
  }
  r.body["dump"] = report::geometry_dump(g);
  return r;
}

Result cmd_pi1(RunConfig const& cfg) {
  GammaSpec const gs = cfg.gamma();
  gs.validate();
  SubspaceGeometry const g = cfg.pi ? build_pi(PiSpec::standard(gs)) : build_gamma(gs);
  Pi1Presentation const p = pi1_presentation(g.geom);
  Pi1Budget budget;
  budget.max_cosets = cfg.max_cosets;
  Pi1Report const rep = certify_trivial(p, budget);
  std::cerr << "pi1 " << (cfg.pi ? "Pi(p,H)" : "Gamma") << " q=" << cfg.q << " n=" << cfg.n << ": "
            << report::verdict_name(rep.verdict);
  if (rep.order) std::cerr << ", order " << *rep.order;
  std::cerr << "\n";
  Result r{report::pi1(p, rep), ok};
  r.body["kind"] = cfg.pi ? "pi" : "gamma";
  if (rep.verdict == Pi1Verdict::inconclusive) r.status = inconclusive;
  return r;
}

Result cmd_cover(RunConfig const& cfg) {
  GammaSpec const gs = cfg.gamma();
  gs.validate();
  DoubleCover const dc = build_cover(PiSpec::standard(gs));
  std::cerr << "cover q=" << cfg.q << " n=" << cfg.n << "\n";
  CoverReport const rep = verify_2cover(dc);
  CoverDistances const dist = cover_distances(dc);
  Pi1Budget budget;
  budget.max_cosets = cfg.max_cosets;
  Pi1Report const cover_pi1 = certify_trivial(pi1_presentation(dc.geom), budget);
  std::vector<int> bases;
  for (int t : dc.base.geom.types()) bases.push_back(dc.base.geom.of_type(t).front());
  DeckReport const deck = deck_regularity(dc, bases, budget);

  Checks c;
  c.add("types and incidence preserved", rep.types_preserved && rep.incidence_preserved);
  c.add("incidence follows the shadow rule", rep.shadow_rule && rep.partitions_agree);
  c.add("CO1 on all flags", rep.co1);
  c.add("CO2 on all flags", rep.co2);
  c.add("cover is connected", dist.connected);
  c.add("distance between the two lifts of Rad(H) is 3", dist.q_plus_minus == 3);
  c.add("cover is simply connected", cover_pi1.verdict == Pi1Verdict::trivial);
  c.add("deck transformation swaps every fiber",
        deck.nontrivial_swaps && deck.trivial_fixes && deck.lifting_unique);

  Result r;
  r.body = {{"cover_points", dc.point_count()},
            {"base_points", dc.base.geom.count_of_type(1)},
            {"cover_objects", dc.geom.size()},
            {"base_flags", rep.base_flags},
            {"cover_flags", rep.cover_flags},
            {"failure", rep.failure},
            {"distances",
             {{"q_plus_minus", dist.q_plus_minus},
              {"max_other", dist.max_other},
              {"max_distinct", dist.max_distinct},
              {"min_fiber", dist.min_fiber},
              {"max_fiber", dist.max_fiber}}},
            {"cover_pi1", report::pi1(pi1_presentation(dc.geom), cover_pi1)},
            {"deck", {{"bases_checked", deck.bases_checked}, {"loops_checked", deck.loops_checked}}},
            {"checks", c.list},
            {"dump", report::cover_dump(dc)}};
  r.status = c.status;
  if (cover_pi1.verdict == Pi1Verdict::inconclusive) r.status = worst(r.status, inconclusive);
  return r;
}

Result cmd_action(RunConfig const& cfg) {
  GammaSpec const gs = cfg.gamma();
  gs.validate();
  if (gs.d != 0) throw usage_error("the action needs a nondegenerate space (even n)");
  SubspaceGeometry const g = build_gamma(gs);
  SpAction const act(g);
  std::cerr << "action q=" << cfg.q << " n=" << cfg.n << "\n";
  std::uint64_t const order = act.group().order();
  std::uint64_t const sp = sp_order(cfg.q, cfg.n);
  std::uint64_t const borel_want = ipow(static_cast<std::uint64_t>(cfg.q) * (cfg.q - 1), cfg.n / 2);

  Checks c;
  c.add("|G| matches the order formula", order == sp);
  json rows = json::array();
  bool all = true;
  std::uint64_t borel = 0;
  for (auto const& row : check_flag_transitivity(act)) {
    rows.push_back({{"types", row.types}, {"flags", row.flags}, {"orbit", row.orbit},
                    {"stabilizer", row.stabilizer}, {"transitive", row.transitive()}});
    all = all && row.transitive();
    if (static_cast<int>(row.types.size()) == g.geom.rank()) borel = row.stabilizer;
  }
  c.add("flag-transitive on every type set", all);
  c.add("Borel order (q(q-1))^(n/2)", borel == borel_want);
  StructureReport const par = verify_parabolic_structure(act);
  c.add("parabolic structure", par.ok());

  Result r;
  r.body = {{"degree", act.degree()},
            {"vectors", act.vectors()},
            {"objects", act.objects()},
            {"order", order},
            {"sp_order", sp},
            {"kernel", act.kernel_order()},
            {"borel", borel},
            {"flag_transitivity", rows},
            {"parabolic_structure", report::structure(par)},
            {"checks", c.list}};
  r.status = c.status;
  return r;
}

Result cmd_amalgam(RunConfig const& cfg) {
  GammaSpec const gs = cfg.gamma();
  gs.validate();
  if (cfg.n != 4 && !cfg.slim) throw usage_error("the maximal parabolic amalgam is supported for n = 4");
  if (cfg.slim && cfg.n != 4) throw usage_error("slim completion is supported for n = 4");
  std::optional<SubspaceGeometry> g;
  std::optional<SpAction> act;
  Amalgam a;
  if (cfg.slim) {
    a = build_slim_amalgam(cfg.q, cfg.n);
  } else {
    g = build_gamma(gs);
    act.emplace(*g);
    a = build_max_parabolic_amalgam(*act);
  }
  std::cerr << "amalgam " << (cfg.slim ? "slim" : "maximal parabolic") << " q=" << cfg.q << " n=" << cfg.n
            << ", " << a.members().size() << " members\n";
  CoherenceReport const coh = a.verify_coherence();
  CompletionPresentation const cp = completion_presentation(a);
  CompletionBudget budget;
  budget.max_cosets = cfg.max_cosets;
  CompletionVerdict const v = verify_completion(a, sp_order(cfg.q, cfg.n), -1, budget, &cp);

  Checks c;
  c.add("inclusions are injective homomorphisms", coh.injective_homomorphisms);
  c.add("composition law", coh.composition_law);
  c.add("relators hold in the matrix group", v.relators_hold);
  c.add("members generate Sp", v.generated == v.target);
  // At q = 2 the slim completion is reported but not asserted.
  bool const exploratory = cfg.slim && cfg.q == 2;
  if (!exploratory && !v.inconclusive()) c.add("completion is Sp", v.iso());

  Result r;
  r.body = {{"variant", cfg.slim ? "slim" : "maximal-parabolic"},
            {"exploratory", exploratory},
            {"manifest", report::manifest(a)},
            {"coherence", {{"ok", coh.ok()}, {"chains_checked", coh.chains_checked}, {"failure", coh.failure}}},
            {"presentation",
             {{"raw_generators", cp.raw.ngens},
              {"raw_relators", cp.raw.relators.size()},
              {"text", to_text(cp.simplified.pres)}}},
            {"verdict", report::verdict(v)}};
  if (cfg.slim) {
    StructureReport const s = verify_slim_structure(cfg.q, cfg.n);
    r.body["slim_structure"] = report::structure(s);
    c.add("slim structure", s.ok());
  }
  r.body["checks"] = c.list;
  r.status = c.status;
  if (v.inconclusive()) r.status = worst(r.status, inconclusive);
  std::cerr << "  completion order ";
  if (v.order) std::cerr << *v.order << " (index " << *v.index << " over " << v.relative_to << ")";
  else std::cerr << "unknown";
  std::cerr << ", target " << v.target << "\n";
  return r;
}

Result cmd_all(RunConfig const& cfg) {
  Result r;
  r.body = json::object();
  auto run = [&](std::string const& name, Result (*f)(RunConfig const&), RunConfig sub) {
    sub.command = name;
    Result x = f(sub);
    r.body[name] = {{"status", static_cast<int>(x.status)}, {"result", x.body}};
    r.status = worst(r.status, x.status);
  };
  run("geometry", cmd_geometry, cfg);
  run("pi1", cmd_pi1, cfg);
  if (cfg.n % 2 == 0 && !cfg.pi) run("action", cmd_action, cfg);
  if (cfg.q == 2 && cfg.n == 6) run("cover", cmd_cover, cfg);
  if (cfg.n == 4 && (cfg.q == 2 || cfg.q == 3)) {
    RunConfig s = cfg;
    s.slim = true;
    run("amalgam", cmd_amalgam, s);
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symplectic geometries, their fundamental groups and amalgams"};
  app.require_subcommand(1);
  RunConfig cfg;
  int d = -1;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--q", cfg.q, "field size (prime)")->capture_default_str();
    sub->add_option("--n", cfg.n, "dimension of V")->capture_default_str();
    sub->add_option("--d", d, "dimension of Rad(V) (defaults to n mod 2)");
    sub->add_flag("--pi", cfg.pi, "use Pi(p,H) instead of Gamma");
    sub->add_flag("--slim", cfg.slim, "use the slim amalgam");
    sub->add_option("--max-cosets", cfg.max_cosets, "coset enumeration budget")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "worker threads (runs are sequential)")->capture_default_str();
    sub->add_option("--out", cfg.out, "write the JSON report here instead of stdout");
  };
  std::vector<std::pair<std::string, Result (*)(RunConfig const&)>> const commands = {
      {"geometry", cmd_geometry}, {"pi1", cmd_pi1},         {"cover", cmd_cover},
      {"action", cmd_action},     {"amalgam", cmd_amalgam}, {"all", cmd_all}};
  for (auto const& [name, fn] : commands) add_common(app.add_subcommand(name));

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : invalid;
  }

  Result (*fn)(RunConfig const&) = nullptr;
  for (auto const& [name, f] : commands)
    if (app.got_subcommand(name)) {
      cfg.command = name;
      fn = f;
    }
  if (d >= 0) cfg.d = d;

  auto const start = std::chrono::steady_clock::now();
  Result res;
  try {
    if (cfg.max_cosets == 0) throw usage_error("--max-cosets must be positive");
    if (cfg.threads < 1) throw usage_error("--threads must be at least 1");
    res = fn(cfg);
  } catch (usage_error const& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return invalid;
  } catch (budget_exceeded const& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return inconclusive;
  } catch (std::exception const& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return failed;
  }
  double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json report = {{"schema", "amalgam-lab/1"},
                 {"cfg", cfg.echo()},
                 {"status", static_cast<int>(res.status)},
                 {"result", res.body},
                 {"timing", {{"wall_seconds", secs}}}};
  std::string const text = report.dump(1) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) {
      std::cerr << "cannot write " << cfg.out << "\n";
      return invalid;
    }
    f << text;
  }
  std::cerr << "status " << static_cast<int>(res.status) << " in " << secs << " s\n";
  return res.status;
}
