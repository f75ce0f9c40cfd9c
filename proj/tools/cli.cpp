#include "residua/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "residua/error.hpp"
#include "residua/generators.hpp"
#include "residua/io.hpp"
#include "residua/laws.hpp"
#include "residua/residual.hpp"
#include "residua/testbed.hpp"
#include "residua/topology.hpp"

namespace residua::cli {

namespace {

struct Options {
  std::string gen;
  std::string input;
  std::string family = "all";
  std::string element;
  std::string report;
  std::string format = "json";
  std::string laws = "all";
  std::string space;
  std::string group;
  std::string cayley;
  std::uint64_t seed = 0;
  std::size_t bound = 6;
  std::size_t dims = 0;
  std::size_t jobs = 1;
  std::uint64_t ring = 0;
  bool cb = false;
  bool shrink = false;
  bool strict = false;
};

/// Usage problems detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t default_jobs() {
  if (const char* env = std::getenv("RESIDUA_JOBS"); env && *env) {
    try {
      return std::max<std::size_t>(1, std::stoul(env));
    } catch (const std::exception&) {
    }
  }
  return 1;
}

Json names_json(const FiniteLattice& l, const ElementSet& s) {
  Json a = Json::array();
  for (Elem e : s) a.push_back(l.name(e));
  return a;
}

std::string names_text(const FiniteLattice& l, const ElementSet& s) {
  std::string out = "{";
  bool first = true;
  for (Elem e : s) {
    out += (first ? "" : ",") + l.name(e);
    first = false;
  }
  return out + "}";
}

struct Source {
  FiniteLattice lattice;
  std::string label;
};

Source load_source(const Options& o) {
  if (o.gen.empty() == o.input.empty()) throw UsageError("exactly one of --gen and --input is required");
  if (!o.gen.empty()) {
    Generated g = generate(o.gen);
    return {std::move(g.lattice), g.provenance};
  }
  return {load_lattice(o.input), o.input};
}

Json lattice_summary(const FiniteLattice& l, const std::string& label) {
  Json j;
  j["source"] = label;
  j["size"] = l.size();
  j["elements"] = l.names();
  j["bottom"] = l.name(l.bottom());
  j["top"] = l.top() ? Json(l.name(*l.top())) : Json(nullptr);
  j["distributive"] = l.distributive();
  j["coframe"] = l.coframe();
  return j;
}

ElementSet parse_family(const FiniteLattice& l, const std::string& spec) {
  if (spec == "all") return l.all();
  if (spec == "t0") return t_class_members(l, 0);
  ElementSet h = l.empty_set();
  std::stringstream ss(spec);
  for (std::string name; std::getline(ss, name, ',');) h.insert(l.poset().index_of(name));
  return h;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.report.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.report, std::ios::binary);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write '" + o.report + "'");
  f << text;
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (o.format == f) return;
  throw UsageError("format '" + o.format + "' not supported by this subcommand");
}

int cmd_analyze(const Options& o, std::ostream& out) {
  require_format(o, {"json", "text", "dot"});
  Source src = load_source(o);
  const FiniteLattice& l = src.lattice;
  const ElementSet h = parse_family(l, o.family);
  std::vector<Elem> targets;
  if (!o.element.empty()) targets.push_back(l.poset().index_of(o.element));
  else
    for (Elem x = 0; x < l.size(); ++x) targets.push_back(x);

  std::vector<ResidualProfile> profiles;
  bool violated = false;
  for (Elem x : targets) {
    profiles.push_back(residual_profile(l, x, h));
    const auto& p = profiles.back();
    for (Verification v : {p.core_residue_identity, p.core_fixpoint, p.delta_plus_identity})
      if (v == Verification::Violated) violated = true;
  }

  if (o.format == "dot") {
    emit(o, o.element.empty() ? hasse_dot(l) : boundary_dot(l, profiles.front()), out);
  } else if (o.format == "text") {
    std::ostringstream t;
    t << "lattice " << src.label << ": " << l.size() << " elements, "
      << (l.distributive() ? "distributive" : "not distributive") << "\n";
    for (const auto& p : profiles) {
      t << l.name(p.element) << ": M=" << names_text(l, p.maximal) << " mu=" << l.name(p.mu)
        << " rank=" << to_string(p.rank) << " core=" << l.name(p.core)
        << " boundary=" << l.name(p.boundary) << " T" << p.t_class << " strata=[";
      for (std::size_t a = 0; a < p.strata.size(); ++a) t << (a ? " " : "") << names_text(l, p.strata[a]);
      t << "]\n";
    }
    emit(o, t.str(), out);
  } else {
    Json j;
    j["lattice"] = lattice_summary(l, src.label);
    j["family"] = o.family;
    Json ps = Json::array();
    for (const auto& p : profiles) ps.push_back(profile_to_json(l, p));
    j["profiles"] = ps;
    emit(o, dump_canonical(j), out);
  }
  return violated ? 1 : 0;
}

std::vector<LawId> parse_laws(const std::string& spec) {
  std::vector<LawId> ids;
  if (spec == "all") return ids;
  std::stringstream ss(spec);
  for (std::string name; std::getline(ss, name, ',');) {
    auto id = law_from_string(name);
    if (!id) throw UsageError("unknown law '" + name + "'");
    ids.push_back(*id);
  }
  return ids;
}

int cmd_laws(const Options& o, std::ostream& out) {
  require_format(o, {"json", "text"});
  std::vector<LawId> ids = parse_laws(o.laws);
  std::vector<LawReport> reports;
  FiniteLattice lattice;
  std::string label;
  const bool testbed = o.dims != 0;
  if (testbed) {
    if (!o.gen.empty() || !o.input.empty()) throw UsageError("--dims excludes --gen and --input");
    Testbed t(o.dims);
    if (ids.empty())
      for (const auto& info : law_registry()) ids.push_back(info.id);
    for (LawId id : ids) reports.push_back(run_law(t, id, o.bound));
    label = reports.empty() ? "testbed" : reports.front().instance;
  } else {
    Source src = load_source(o);
    lattice = std::move(src.lattice);
    label = src.label;
    Budget budget;
    budget.seed = o.seed;
    budget.strict = o.strict;
    reports = run_all(lattice, budget, o.jobs, {}, ids, label);
  }

  std::size_t pass = 0, fail = 0, skipped = 0;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Pass) ++pass;
    else if (r.verdict == Verdict::Fail) ++fail;
    else ++skipped;
  }

  if (o.format == "text") {
    std::ostringstream t;
    for (const auto& r : reports) {
      t << to_string(r.law) << ": " << to_string(r.verdict) << " (" << r.checked << " checked, "
        << r.coverage << ")";
      if (!r.detail.empty()) t << " " << r.detail;
      t << "\n";
    }
    t << pass << " pass, " << fail << " fail, " << skipped << " skipped\n";
    emit(o, t.str(), out);
  } else {
    Json j;
    j["instance"] = label;
    j["seed"] = o.seed;
    Json rs = Json::array();
    for (const auto& r : reports) {
      Json rj = report_to_json(lattice, r, false);
      if (!testbed && o.shrink && r.verdict == Verdict::Fail) {
        Budget budget;
        budget.seed = o.seed;
        ShrinkResult s = shrink(lattice, r.law, budget);
        rj["shrunk"] = lattice_to_json(s.lattice);
      }
      rs.push_back(rj);
    }
    j["reports"] = rs;
    j["summary"] = {{"pass", pass}, {"fail", fail}, {"skipped", skipped}};
    emit(o, dump_canonical(j), out);
  }
  return fail ? 1 : 0;
}

Json set_json(const ElementSet& s) { return s.to_vector(); }

int cmd_topology(const Options& o, std::ostream& out) {
  require_format(o, {"json", "text"});
  std::optional<Source> src;
  FiniteTopology t;
  if (!o.space.empty()) {
    if (!o.gen.empty() || !o.input.empty()) throw UsageError("--space excludes --gen and --input");
    t = topology_from_json(Json::parse(read_file(o.space)));
  } else {
    src = load_source(o);
    t = dual_lawson(src->lattice);
  }
  bool ok = true;
  Json j;
  j["topology"] = topology_to_json(t);
  j["discrete"] = t.is_discrete();
  j["t1"] = t.is_t1();
  if (t.is_discrete() || t.size() <= 20) j["open_count"] = t.open_count();
  CBSequence cb = cb_sequence(t, ElementSet::full(t.size()));
  j["cb"] = cb_to_json(cb);
  if (src) {
    const FiniteLattice& l = src->lattice;
    j["elements"] = l.names();
    ConditionReport oc = check_order_compatible(l, t);
    j["order_compatible"] = condition_report_to_json(oc);
    bool convex = !convexity_scan(l).has_value();
    j["convex"] = convex;
    ok = ok && oc.all_pass() && convex && t.is_discrete();
  }
  if (t.is_t1() && t.size() <= 12) {
    CBResidualReport rep = residual_equals_cb_closedsets(t);
    Json rows = Json::array();
    for (const auto& row : rep.rows)
      rows.push_back({{"set", set_json(row.set)}, {"mu", set_json(row.mu)}, {"derived", set_json(row.derived)}});
    j["cb_residual"] = {{"all_equal", rep.all_equal}, {"rows", rows}};
    ok = ok && rep.all_equal;
  }
  if (o.format == "text") {
    std::ostringstream s;
    s << t.size() << " points, " << (t.is_discrete() ? "discrete" : "not discrete")
      << (t.is_t1() ? ", T1" : "") << "\nCB rank " << cb.rank << "\n";
    for (std::size_t a = 0; a < cb.levels.size(); ++a)
      s << "S_" << a << " = " << Json(set_json(cb.levels[a])).dump() << "\n";
    if (j.contains("order_compatible"))
      for (const auto& c : j["order_compatible"]["clauses"])
        s << "order-compatible (" << c["clause"].get<std::string>() << "): "
          << c["verdict"].get<std::string>() << "\n";
    if (j.contains("cb_residual"))
      s << "closed-set residual equals CB derivative: "
        << (j["cb_residual"]["all_equal"].get<bool>() ? "yes" : "no") << "\n";
    emit(o, s.str(), out);
  } else {
    emit(o, dump_canonical(j), out);
  }
  return ok ? 0 : 1;
}

int cmd_testbed(const Options& o, std::ostream& out) {
  require_format(o, {"json", "text"});
  if (o.dims == 0) throw UsageError("--dims is required");
  Testbed t(o.dims);
  const auto bound = static_cast<Coord>(o.bound);
  bool ok = true;
  Json j;
  j["dims"] = o.dims;
  j["bound"] = o.bound;

  if (!o.element.empty()) {
    OrdinalVector x = parse_vector(o.element, o.dims);
    TestbedProfile p = testbed_profile(t, x, o.bound);
    ok = ok && p.engine_agrees;
    Json e;
    e["profile"] = testbed_profile_to_json(p);
    e["cb_level"] = cb_level(t, x);
    e["dually_compact"] = t.dually_compact(x);
    Characterization c = characterization_predicates(t, x);
    e["characterization"] = {{"literal", c.literal}, {"corrected", c.corrected}};
    Isolation iso = isolated_oracle(t, x, std::max<Coord>(bound, x.max_finite() + 2));
    e["isolation"] = std::string(to_string(iso));
    j["element"] = e;
  }

  if (o.cb) {
    Json rows = Json::array();
    for (const auto& row : verify_cb_ladder(t, bound)) {
      rows.push_back({{"alpha", row.alpha},
                      {"pattern", to_string(row.pattern)},
                      {"points", row.points},
                      {"isolated", row.isolated},
                      {"matches", row.matches},
                      {"mismatch", row.mismatch}});
      ok = ok && row.matches;
    }
    j["ladder"] = rows;
  }

  Json mismatches = Json::array(), discrepancies = Json::array();
  std::size_t checked = 0;
  for (const auto& x : t.box(bound)) {
    ++checked;
    Characterization c = characterization_predicates(t, x);
    Isolation iso = isolated_oracle(t, x, std::max<Coord>(bound, x.max_finite() + 2));
    bool isolated = iso == Isolation::Isolated;
    Json row{{"element", to_string(x)},
             {"literal", c.literal},
             {"corrected", c.corrected},
             {"oracle", std::string(to_string(iso))}};
    if (iso == Isolation::Unstable || c.corrected != isolated) mismatches.push_back(row);
    if (c.literal != c.corrected) discrepancies.push_back(row);
  }
  ok = ok && mismatches.empty();
  j["isolation_check"] = {{"checked", checked}, {"mismatches", mismatches}, {"discrepancies", discrepancies}};

  if (o.format == "text") {
    std::ostringstream s;
    s << "testbed I=" << o.dims << " B=" << o.bound << "\n";
    if (j.contains("element")) {
      const auto& e = j["element"];
      s << "element " << o.element << ": rank " << e["profile"]["rank"].dump() << ", core "
        << e["profile"]["core"].get<std::string>() << ", cb level " << e["cb_level"].get<std::size_t>()
        << ", " << e["isolation"].get<std::string>() << "\n";
    }
    if (j.contains("ladder"))
      for (const auto& r : j["ladder"])
        s << "S_" << r["alpha"].get<std::size_t>() << " = " << r["pattern"].get<std::string>() << "  points "
          << r["points"].get<std::size_t>() << ", isolated " << r["isolated"].get<std::size_t>() << ", "
          << (r["matches"].get<bool>() ? "ok" : "MISMATCH " + r["mismatch"].get<std::string>()) << "\n";
    s << "isolation: " << checked << " vectors, " << mismatches.size() << " mismatches, "
      << discrepancies.size() << " literal/corrected discrepancies\n";
    for (const auto& d : discrepancies)
      s << "  " << d["element"].get<std::string>() << " literal=" << d["literal"].get<bool>()
        << " corrected=" << d["corrected"].get<bool>() << " oracle=" << d["oracle"].get<std::string>() << "\n";
    emit(o, s.str(), out);
  } else {
    emit(o, dump_canonical(j), out);
  }
  return ok ? 0 : 1;
}

int cmd_group(const Options& o, std::ostream& out) {
  require_format(o, {"json", "text", "dot"});
  if (o.group.empty() == o.cayley.empty()) throw UsageError("exactly one of --name and --cayley is required");
  CayleyTable g = o.group.empty() ? cayley_from_json(Json::parse(read_file(o.cayley))) : load_group(o.group);
  SubgroupLattice sl = subgroup_lattice(g);
  FrattiniResult f = frattini(g);
  auto label = [&](const ElementSet& s) {
    Json a = Json::array();
    for (Elem e : s) a.push_back(g.names.empty() ? std::to_string(e) : g.names[e]);
    return a;
  };
  if (o.format == "dot") {
    emit(o, hasse_dot(sl.lattice), out);
    return f.agree ? 0 : 1;
  }
  Json j;
  j["group"] = o.group.empty() ? o.cayley : o.group;
  j["order"] = g.order;
  Json subs = Json::array(), maxs = Json::array();
  for (const auto& s : sl.subgroups) subs.push_back(label(s));
  for (const auto& s : f.maximal) maxs.push_back(label(s));
  j["subgroups"] = subs;
  j["maximal"] = maxs;
  j["frattini"] = {{"direct", label(f.direct)}, {"via_mu", label(f.via_mu)}, {"agree", f.agree}};
  j["lattice"] = {{"size", sl.lattice.size()}, {"distributive", sl.lattice.distributive()}};
  if (o.format == "text") {
    std::ostringstream s;
    s << j["group"].get<std::string>() << ": order " << g.order << ", " << sl.subgroups.size()
      << " subgroups, " << f.maximal.size() << " maximal\n"
      << "Frattini (intersection of maximal subgroups): " << j["frattini"]["direct"].dump() << "\n"
      << "Frattini (residual derivative of the top):   " << j["frattini"]["via_mu"].dump() << "\n";
    emit(o, s.str(), out);
  } else {
    emit(o, dump_canonical(j), out);
  }
  return f.agree ? 0 : 1;
}

int cmd_ring(const Options& o, std::ostream& out) {
  require_format(o, {"json", "text"});
  if (o.ring == 0) throw UsageError("--n is required");
  FiniteLattice l = ideal_lattice_zn(o.ring);
  JacobsonResult r = jacobson_zn(o.ring);
  Elem top = *l.top();
  auto ideal = [](std::uint64_t d) { return "(" + std::to_string(d) + ")"; };
  Json j;
  j["n"] = o.ring;
  j["ideals"] = l.names();
  j["maximal"] = names_json(l, l.maximal_subelements(top));
  j["jacobson"] = {{"via_mu", ideal(r.via_mu)}, {"via_rad", ideal(r.via_rad)}, {"agree", r.agree}};
  if (o.format == "text") {
    std::ostringstream s;
    s << "Z/" << o.ring << ": " << l.size() << " ideals, maximal " << j["maximal"].dump() << "\n"
      << "Jacobson radical: " << ideal(r.via_mu) << " (residual derivative), " << ideal(r.via_rad)
      << " (radical of n)\n";
    emit(o, s.str(), out);
  } else {
    emit(o, dump_canonical(j), out);
  }
  return r.agree ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  o.jobs = default_jobs();
  CLI::App app{"Residual calculus on effective lattices"};
  app.require_subcommand(1);

  auto source = [&](CLI::App* sub) {
    sub->add_option("--gen", o.gen, "Generator spec, e.g. divisor:12 or random:seed=7,size=50");
    sub->add_option("--input", o.input, "Lattice JSON file");
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--report", o.report, "Write the report to this file");
    sub->add_option("--format", o.format, "json, text or dot");
  };

  auto* analyze = app.add_subcommand("analyze", "Residual profiles of every element");
  source(analyze);
  common(analyze);
  analyze->add_option("--family", o.family, "all, t0, or a comma list of element names");
  analyze->add_option("--element", o.element, "Profile a single element");

  auto* laws = app.add_subcommand("laws", "Run the law suite");
  source(laws);
  common(laws);
  laws->add_option("--laws", o.laws, "all or a comma list of law names");
  laws->add_option("--seed", o.seed, "Seed for sampled quantifiers");
  laws->add_option("--jobs", o.jobs, "Worker threads (default RESIDUA_JOBS or 1)");
  laws->add_option("--dims", o.dims, "Run the bounded checks on the testbed of this dimension");
  laws->add_option("--bound", o.bound, "Testbed coordinate bound");
  laws->add_flag("--shrink", o.shrink, "Attach a shrunk counterexample to each failure");
  laws->add_flag("--strict", o.strict, "Fail instead of sampling past the exhaustive budget");

  auto* topology = app.add_subcommand("topology", "Dual Lawson topology and CB sequence");
  source(topology);
  common(topology);
  topology->add_option("--space", o.space, "Topology JSON file instead of a lattice");
  topology->add_flag("--cb", o.cb, "Include the CB sequence (always on)");

  auto* testbed = app.add_subcommand("testbed", "Ordinal testbed checks");
  common(testbed);
  testbed->add_option("--dims", o.dims, "Number of coordinates, 1..4")->required();
  testbed->add_option("--bound", o.bound, "Coordinate bound B");
  testbed->add_option("--element", o.element, "Vector such as 3,inf");
  testbed->add_flag("--cb", o.cb, "Verify the CB ladder");

  auto* group = app.add_subcommand("group", "Subgroup lattice and Frattini subgroup");
  common(group);
  group->add_option("--name", o.group, "Catalog group (S3, D4, Q8, A4, Z2xZ4, Z2xZ2xZ2) or Z<n>");
  group->add_option("--cayley", o.cayley, "Cayley table JSON file");

  auto* ring = app.add_subcommand("ring", "Ideal lattice and Jacobson radical of Z/n");
  common(ring);
  ring->add_option("--n", o.ring, "Ring order, 2..10^6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(o, out);
    if (laws->parsed()) return cmd_laws(o, out);
    if (topology->parsed()) return cmd_topology(o, out);
    if (testbed->parsed()) return cmd_testbed(o, out);
    if (group->parsed()) return cmd_group(o, out);
    if (ring->parsed()) return cmd_ring(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace residua::cli
