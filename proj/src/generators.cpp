#include "residua/generators.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "residua/effective.hpp"
#include "residua/error.hpp"

namespace residua {

namespace {

void check_cap(std::size_t size, const std::string& what) {
  if (size > kGeneratorCap)
    throw Error(ErrorKind::TooLarge, what + " has " + std::to_string(size) + " elements, cap is " +
                                         std::to_string(kGeneratorCap));
}

std::uint64_t parse_uint(std::string_view s, const std::string& what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorKind::ParseError, "bad " + what + " '" + std::string(s) + "'");
  return v;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

std::string set_name(const ElementSet& s, const std::vector<std::string>& labels) {
  std::string out = "{";
  bool first = true;
  for (Elem e : s) {
    if (!first) out += ",";
    out += labels.empty() ? std::to_string(e) : labels[e];
    first = false;
  }
  return out + "}";
}

/// Lattice of sets ordered by inclusion, listed by size then canonically.
FiniteLattice inclusion_lattice(std::vector<ElementSet>& sets, const std::vector<std::string>& labels) {
  std::sort(sets.begin(), sets.end(), [](const ElementSet& a, const ElementSet& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a < b;
  });
  std::vector<std::string> names;
  std::vector<std::pair<Elem, Elem>> rel;
  for (Elem i = 0; i < sets.size(); ++i) {
    names.push_back(set_name(sets[i], labels));
    for (Elem j = i + 1; j < sets.size(); ++j)
      if (sets[i].is_subset_of(sets[j])) rel.emplace_back(i, j);
  }
  return as_lattice(build_poset_indexed(std::move(names), rel));
}

std::vector<Elem> topological_order(const FinitePoset& p) {
  std::vector<Elem> order(p.size());
  for (Elem i = 0; i < p.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](Elem a, Elem b) {
    return p.down_set(a).count() < p.down_set(b).count();
  });
  return order;
}

/// Calls `visit` on every down-set; stops early when it returns false.
void for_each_downset(const FinitePoset& p, const std::function<bool(const ElementSet&)>& visit) {
  const auto order = topological_order(p);
  ElementSet cur(p.size());
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == order.size()) {
      if (!visit(cur)) stop = true;
      return;
    }
    rec(i + 1);
    Elem e = order[i];
    ElementSet below = p.down_set(e);
    below.erase(e);
    if (below.is_subset_of(cur)) {
      cur.insert(e);
      rec(i + 1);
      cur.erase(e);
    }
  };
  rec(0);
}

}  // namespace

void validate_group(const CayleyTable& g) {
  const std::size_t n = g.order;
  if (n < 1 || n > 64) throw Error(ErrorKind::InvalidGroup, "order must be 1..64");
  if (g.table.size() != n) throw Error(ErrorKind::InvalidGroup, "table must have order rows");
  for (const auto& row : g.table) {
    if (row.size() != n) throw Error(ErrorKind::InvalidGroup, "table must be square");
    for (Elem v : row)
      if (v >= n) throw Error(ErrorKind::InvalidGroup, "entry out of range");
  }
  if (g.identity >= n) throw Error(ErrorKind::InvalidGroup, "identity out of range");
  for (Elem a = 0; a < n; ++a)
    if (g.table[g.identity][a] != a || g.table[a][g.identity] != a)
      throw Error(ErrorKind::InvalidGroup, "identity fails at " + std::to_string(a));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (g.table[g.table[a][b]][c] != g.table[a][g.table[b][c]])
          throw Error(ErrorKind::InvalidGroup, "not associative at (" + std::to_string(a) + ", " +
                                                   std::to_string(b) + ", " + std::to_string(c) + ")");
  for (Elem a = 0; a < n; ++a) {
    bool inverse = false;
    for (Elem b = 0; b < n && !inverse; ++b)
      inverse = g.table[a][b] == g.identity && g.table[b][a] == g.identity;
    if (!inverse) throw Error(ErrorKind::InvalidGroup, "no inverse for " + std::to_string(a));
  }
  if (!g.names.empty() && g.names.size() != n)
    throw Error(ErrorKind::InvalidGroup, "names must match the order");
}

CayleyTable cayley_from_json(const Json& j) {
  CayleyTable g;
  try {
    g.order = j.at("order").get<std::size_t>();
    g.identity = j.value("identity", Elem{0});
    g.table = j.at("table").get<std::vector<std::vector<Elem>>>();
    if (j.contains("names")) g.names = j.at("names").get<std::vector<std::string>>();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  validate_group(g);
  return g;
}

Json cayley_to_json(const CayleyTable& g) {
  Json j{{"order", g.order}, {"identity", g.identity}, {"table", g.table}};
  if (!g.names.empty()) j["names"] = g.names;
  return j;
}

CayleyTable cyclic_group(std::size_t n) {
  if (n < 1 || n > 64) throw Error(ErrorKind::InvalidGroup, "order must be 1..64");
  CayleyTable g;
  g.order = n;
  g.table.assign(n, std::vector<Elem>(n));
  for (Elem a = 0; a < n; ++a) {
    g.names.push_back(std::to_string(a));
    for (Elem b = 0; b < n; ++b) g.table[a][b] = static_cast<Elem>((a + b) % n);
  }
  return g;
}

std::string data_dir() {
  if (const char* env = std::getenv("RESIDUA_DATA_DIR"); env && *env) return env;
  return RESIDUA_DATA_DIR;
}

std::vector<std::string> catalog_names() { return {"S3", "D4", "Q8", "A4", "Z2xZ4", "Z2xZ2xZ2"}; }

CayleyTable load_group(const std::string& name) {
  if (name.size() > 1 && name[0] == 'Z' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return cyclic_group(parse_uint(std::string_view(name).substr(1), "group order"));
  auto names = catalog_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw Error(ErrorKind::InvalidGroup, "unknown catalog group '" + name + "'");
  Json j;
  try {
    j = Json::parse(read_file(data_dir() + "/groups/" + name + ".json"));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, name + ": " + e.what());
  }
  return cayley_from_json(j);
}

FiniteLattice chain_lattice(std::size_t k) {
  if (k < 1) throw Error(ErrorKind::PreconditionFailed, "chain needs at least one element");
  check_cap(k, "chain");
  std::vector<std::string> names;
  std::vector<std::pair<Elem, Elem>> rel;
  for (Elem i = 0; i < k; ++i) {
    names.push_back(std::to_string(i));
    if (i) rel.emplace_back(i - 1, i);
  }
  return as_lattice(build_poset_indexed(std::move(names), rel));
}

FiniteLattice boolean_lattice(std::size_t k) {
  if (k >= 13) throw Error(ErrorKind::TooLarge, "boolean lattice 2^" + std::to_string(k) + " exceeds the cap");
  const std::size_t n = std::size_t{1} << k;
  std::vector<Elem> order(n);
  for (Elem i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [](Elem a, Elem b) { return std::popcount(a) < std::popcount(b); });
  std::vector<Elem> pos(n);
  for (Elem i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::string> names;
  std::vector<std::pair<Elem, Elem>> rel;
  for (Elem i = 0; i < n; ++i) {
    Elem mask = order[i];
    ElementSet s(k);
    for (Elem b = 0; b < k; ++b)
      if ((mask >> b) & 1u) s.insert(b);
    names.push_back(set_name(s, {}));
    for (Elem b = 0; b < k; ++b)
      if (!((mask >> b) & 1u)) rel.emplace_back(i, pos[mask | (1u << b)]);
  }
  return as_lattice(build_poset_indexed(std::move(names), rel));
}

FiniteLattice divisor_lattice(std::uint64_t n) {
  if (n < 1) throw Error(ErrorKind::PreconditionFailed, "divisor lattice needs n >= 1");
  auto ds = divisors(n);
  check_cap(ds.size(), "divisor lattice");
  auto ps = prime_factors(n);
  std::map<std::uint64_t, Elem> index;
  std::vector<std::string> names;
  for (Elem i = 0; i < ds.size(); ++i) {
    index[ds[i]] = i;
    names.push_back(std::to_string(ds[i]));
  }
  std::vector<std::pair<Elem, Elem>> rel;
  for (Elem i = 0; i < ds.size(); ++i)
    for (auto p : ps)
      if (n % (ds[i] * p) == 0) rel.emplace_back(i, index.at(ds[i] * p));
  return as_lattice(build_poset_indexed(std::move(names), rel));
}

FiniteLattice product_lattice(const FiniteLattice& a, const FiniteLattice& b) {
  const std::size_t na = a.size(), nb = b.size();
  check_cap(na * nb, "product");
  std::vector<std::string> names;
  for (Elem i = 0; i < na; ++i)
    for (Elem j = 0; j < nb; ++j) names.push_back("(" + a.name(i) + "," + b.name(j) + ")");
  std::vector<std::pair<Elem, Elem>> rel;
  auto at = [nb](Elem i, Elem j) { return static_cast<Elem>(i * nb + j); };
  for (auto [x, y] : a.poset().covers())
    for (Elem j = 0; j < nb; ++j) rel.emplace_back(at(x, j), at(y, j));
  for (auto [x, y] : b.poset().covers())
    for (Elem i = 0; i < na; ++i) rel.emplace_back(at(i, x), at(i, y));
  return as_lattice(build_poset_indexed(std::move(names), rel));
}

std::size_t count_downsets(const FinitePoset& p, std::size_t cap) {
  std::size_t count = 0;
  for_each_downset(p, [&](const ElementSet&) { return ++count <= cap; });
  return count;
}

FiniteLattice downset_lattice(const FinitePoset& p) {
  std::vector<ElementSet> sets;
  for_each_downset(p, [&](const ElementSet& d) {
    sets.push_back(d);
    return sets.size() <= kGeneratorCap;
  });
  check_cap(sets.size(), "down-set lattice");
  // Covering pairs only: D below D plus one minimal element of the complement.
  std::sort(sets.begin(), sets.end(), [](const ElementSet& a, const ElementSet& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a < b;
  });
  std::map<ElementSet, Elem> index;
  std::vector<std::string> names;
  for (Elem i = 0; i < sets.size(); ++i) {
    index[sets[i]] = i;
    names.push_back(set_name(sets[i], p.names()));
  }
  std::vector<std::pair<Elem, Elem>> rel;
  for (Elem i = 0; i < sets.size(); ++i)
    for (Elem e = 0; e < p.size(); ++e) {
      if (sets[i].contains(e)) continue;
      ElementSet next = sets[i];
      next.insert(e);
      if (auto it = index.find(next); it != index.end()) rel.emplace_back(i, it->second);
    }
  return as_lattice(build_poset_indexed(std::move(names), rel));
}

FinitePoset random_poset(std::uint64_t seed, std::size_t target_size) {
  if (target_size < 1) throw Error(ErrorKind::PreconditionFailed, "target size must be positive");
  check_cap(target_size, "random lattice target");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::string> names;
  std::vector<std::pair<Elem, Elem>> rel;
  FinitePoset current = build_poset_indexed({}, {});
  while (true) {
    bool grown = false;
    for (int attempt = 0; attempt < 8 && !grown; ++attempt) {
      const auto n = static_cast<Elem>(names.size());
      std::vector<std::pair<Elem, Elem>> trial = rel;
      double density = 0.15 + 0.5 * coin(rng);
      for (Elem j = 0; j < n; ++j)
        if (coin(rng) < density) trial.emplace_back(j, n);
      auto trial_names = names;
      trial_names.push_back("p" + std::to_string(n));
      FinitePoset candidate = build_poset_indexed(trial_names, trial);
      if (count_downsets(candidate, target_size) <= target_size) {
        names = std::move(trial_names);
        rel = std::move(trial);
        current = std::move(candidate);
        grown = true;
      }
    }
    if (!grown) break;
  }
  return current;
}

FiniteLattice random_distributive(std::uint64_t seed, std::size_t target_size) {
  FiniteLattice l = downset_lattice(random_poset(seed, target_size));
  if (!l.distributive())
    throw Error(ErrorKind::PreconditionFailed, "down-set lattice failed the distributivity check");
  return l;
}

ElementSet subgroup_closure(const CayleyTable& g, const ElementSet& s) {
  ElementSet h(g.order, {g.identity});
  h |= s;
  for (bool grew = true; grew;) {
    grew = false;
    auto members = h.to_vector();
    for (Elem a : members)
      for (Elem b : members) {
        Elem c = g.table[a][b];
        if (!h.contains(c)) {
          h.insert(c);
          grew = true;
        }
      }
  }
  return h;
}

SubgroupLattice subgroup_lattice(const CayleyTable& g) {
  validate_group(g);
  std::set<ElementSet> found;
  std::vector<ElementSet> frontier{subgroup_closure(g, ElementSet(g.order))};
  found.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<ElementSet> next;
    for (const auto& h : frontier)
      for (Elem x = 0; x < g.order; ++x) {
        if (h.contains(x)) continue;
        ElementSet k = h;
        k.insert(x);
        k = subgroup_closure(g, k);
        if (found.insert(k).second) next.push_back(std::move(k));
      }
    frontier = std::move(next);
  }
  check_cap(found.size(), "subgroup lattice");
  SubgroupLattice out;
  out.subgroups.assign(found.begin(), found.end());
  out.lattice = inclusion_lattice(out.subgroups, g.names);
  return out;
}

FrattiniResult frattini(const CayleyTable& g) {
  SubgroupLattice sl = subgroup_lattice(g);
  const auto& subs = sl.subgroups;
  const ElementSet whole = ElementSet::full(g.order);
  FrattiniResult r;
  r.direct = whole;
  for (const auto& h : subs) {
    if (h == whole) continue;
    bool maximal = std::none_of(subs.begin(), subs.end(), [&](const ElementSet& k) {
      return k != h && k != whole && h.is_subset_of(k);
    });
    if (!maximal) continue;
    r.maximal.push_back(h);
    r.direct &= h;
  }
  Elem top = *sl.lattice.top();
  r.via_mu = subs[residual_derivative(sl.lattice, top)];
  r.agree = r.direct == r.via_mu;
  return r;
}

namespace {

struct IdealLattice {
  FiniteLattice lattice;
  std::vector<std::uint64_t> generator;
};

IdealLattice build_ideals(std::uint64_t n) {
  if (n < 2 || n > 1000000) throw Error(ErrorKind::PreconditionFailed, "ring order must be 2..10^6");
  auto ds = divisors(n);
  std::reverse(ds.begin(), ds.end());  // (n) = 0 first, (1) = R last
  auto ps = prime_factors(n);
  std::map<std::uint64_t, Elem> index;
  std::vector<std::string> names;
  for (Elem i = 0; i < ds.size(); ++i) {
    index[ds[i]] = i;
    names.push_back("(" + std::to_string(ds[i]) + ")");
  }
  std::vector<std::pair<Elem, Elem>> rel;
  for (Elem i = 0; i < ds.size(); ++i)
    for (auto p : ps)
      if (ds[i] % p == 0) rel.emplace_back(i, index.at(ds[i] / p));
  return {as_lattice(build_poset_indexed(std::move(names), rel)), ds};
}

}  // namespace

FiniteLattice ideal_lattice_zn(std::uint64_t n) { return build_ideals(n).lattice; }

std::uint64_t radical(std::uint64_t n) {
  std::uint64_t r = 1;
  for (auto p : prime_factors(n)) r *= p;
  return r;
}

JacobsonResult jacobson_zn(std::uint64_t n) {
  IdealLattice il = build_ideals(n);
  JacobsonResult r;
  r.via_mu = il.generator[residual_derivative(il.lattice, *il.lattice.top())];
  r.via_rad = radical(n);
  r.agree = r.via_mu == r.via_rad;
  return r;
}

namespace {

Json load_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

/// Splits "(A)x(B)" into A and B, honouring nested parentheses.
std::pair<std::string, std::string> split_product(const std::string& body) {
  auto group_end = [&](std::size_t open) {
    if (open >= body.size() || body[open] != '(')
      throw Error(ErrorKind::ParseError, "product spec must be (A)x(B)");
    int depth = 0;
    for (std::size_t i = open; i < body.size(); ++i) {
      if (body[i] == '(') ++depth;
      if (body[i] == ')' && --depth == 0) return i;
    }
    throw Error(ErrorKind::ParseError, "unbalanced parentheses in product spec");
  };
  std::size_t a_end = group_end(0);
  if (a_end + 1 >= body.size() || body[a_end + 1] != 'x')
    throw Error(ErrorKind::ParseError, "product spec must be (A)x(B)");
  std::size_t b_end = group_end(a_end + 2);
  if (b_end + 1 != body.size()) throw Error(ErrorKind::ParseError, "trailing text in product spec");
  return {body.substr(1, a_end - 1), body.substr(a_end + 3, b_end - a_end - 3)};
}

}  // namespace

Generated generate(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw Error(ErrorKind::ParseError, "generator spec must be KIND:ARGS, got '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  Generated g;
  g.provenance = spec;
  if (kind == "chain") {
    g.lattice = chain_lattice(parse_uint(body, "chain length"));
  } else if (kind == "boolean") {
    g.lattice = boolean_lattice(parse_uint(body, "boolean rank"));
  } else if (kind == "divisor") {
    g.lattice = divisor_lattice(parse_uint(body, "divisor argument"));
  } else if (kind == "ideals") {
    g.lattice = ideal_lattice_zn(parse_uint(body, "ring order"));
  } else if (kind == "random") {
    std::uint64_t seed = 0, size = 32;
    std::size_t pos = 0;
    while (pos < body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "random spec item '" + item + "'");
      std::string key = item.substr(0, eq), value = item.substr(eq + 1);
      if (key == "seed") seed = parse_uint(value, "seed");
      else if (key == "size") size = parse_uint(value, "size");
      else throw Error(ErrorKind::ParseError, "unknown random spec key '" + key + "'");
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    g.lattice = random_distributive(seed, size);
  } else if (kind == "product") {
    auto [a, b] = split_product(body);
    g.lattice = product_lattice(generate(a).lattice, generate(b).lattice);
  } else if (kind == "downset") {
    g.lattice = downset_lattice(poset_from_json(load_json_file(body)));
  } else if (kind == "subgroup") {
    bool file = body.size() > 5 && body.substr(body.size() - 5) == ".json";
    g.lattice = subgroup_lattice(file ? cayley_from_json(load_json_file(body)) : load_group(body)).lattice;
  } else if (kind == "closed") {
    g.lattice = closed_set_lattice(topology_from_json(load_json_file(body)));
  } else {
    throw Error(ErrorKind::ParseError, "unknown generator kind '" + kind + "'");
  }
  return g;
}

}  // namespace residua
