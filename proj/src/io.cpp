#include "residua/io.hpp"

#include <fstream>
#include <sstream>

#include "residua/error.hpp"

namespace residua {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

Json names_of(const FiniteLattice& l, const ElementSet& s) {
  Json a = Json::array();
  for (Elem e : s) a.push_back(l.name(e));
  return a;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FinitePoset poset_from_json(const Json& j) {
  try {
    std::vector<std::string> names;
    for (const auto& e : j.at("elements")) {
      if (e.is_string()) names.push_back(e.get<std::string>());
      else if (e.is_number_integer()) names.push_back(std::to_string(e.get<long long>()));
      else throw Error(ErrorKind::ParseError, "element labels must be strings or integers");
    }
    auto label = [](const Json& v) {
      return v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>());
    };
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& p : j.at("relation")) {
      if (!p.is_array() || p.size() != 2)
        throw Error(ErrorKind::ParseError, "relation entries must be pairs");
      pairs.emplace_back(label(p[0]), label(p[1]));
    }
    std::string mode = j.value("mode", std::string("covers"));
    RelationMode m;
    if (mode == "covers") m = RelationMode::Covers;
    else if (mode == "leq") m = RelationMode::Leq;
    else throw Error(ErrorKind::ParseError, "mode must be 'covers' or 'leq'");
    return build_poset(std::move(names), pairs, m);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

FiniteLattice lattice_from_json(const Json& j) { return as_lattice(poset_from_json(j)); }

FiniteLattice load_lattice(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  return lattice_from_json(j);
}

Json lattice_to_json(const FiniteLattice& l) {
  Json j;
  j["elements"] = l.names();
  Json rel = Json::array();
  for (auto [a, b] : l.poset().covers()) rel.push_back({l.name(a), l.name(b)});
  j["relation"] = rel;
  j["mode"] = "covers";
  return j;
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

std::string hasse_dot(const FiniteLattice& l) {
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n";
  for (Elem e = 0; e < l.size(); ++e) out << "  n" << e << " [label=" << quote(l.name(e)) << "];\n";
  for (auto [a, b] : l.poset().covers()) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

Json rank_to_json(const RankValue& r) {
  if (r.omega) return "omega";
  return Json{{"finite", r.finite}};
}

Json profile_to_json(const FiniteLattice& l, const ResidualProfile& p) {
  Json j;
  j["element"] = l.name(p.element);
  j["maximal"] = names_of(l, p.maximal);
  j["mu"] = l.name(p.mu);
  j["rank"] = rank_to_json(p.rank);
  j["core"] = l.name(p.core);
  Json res = Json::object();
  for (auto [m, r] : p.residues) res[l.name(m)] = l.name(r);
  j["residues"] = res;
  j["boundary"] = l.name(p.boundary);
  Json strata = Json::array();
  for (const auto& s : p.strata) strata.push_back(names_of(l, s));
  j["strata"] = strata;
  Json rho = Json::object();
  for (auto [s, a] : p.rho) rho[l.name(s)] = a;
  j["rho"] = rho;
  j["t_class"] = p.t_class;
  j["checks"] = {{"core_residue_identity", std::string(to_string(p.core_residue_identity))},
                 {"core_fixpoint", std::string(to_string(p.core_fixpoint))},
                 {"delta_plus_identity", std::string(to_string(p.delta_plus_identity))}};
  return j;
}

std::string boundary_dot(const FiniteLattice& l, const ResidualProfile& p) {
  std::ostringstream out;
  out << "digraph boundary {\n  rankdir=BT;\n";
  for (std::size_t a = 0; a < p.strata.size(); ++a) {
    out << "  subgraph cluster_" << a << " {\n    label=" << quote("stratum " + std::to_string(a))
        << ";\n";
    for (Elem s : p.strata[a])
      if (p.rho.at(s) == a) out << "    n" << s << " [label=" << quote(l.name(s)) << "];\n";
    out << "  }\n";
  }
  // Covering pairs of delta(x) under the induced order.
  for (Elem s : p.delta) {
    for (Elem t : p.delta) {
      if (!l.lt(s, t)) continue;
      bool cover = true;
      for (Elem u : p.delta)
        if (l.lt(s, u) && l.lt(u, t)) cover = false;
      if (cover) out << "  n" << s << " -> n" << t << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace residua
