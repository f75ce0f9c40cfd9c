#include "residua/topology.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "residua/effective.hpp"
#include "residua/error.hpp"
#include "residua/residual.hpp"

namespace residua {

namespace {

std::string set_label(const ElementSet& s) {
  std::string out = "{";
  bool first = true;
  for (Elem e : s) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

std::string names_label(const FiniteLattice& l, const ElementSet& s) {
  std::string out = "{";
  bool first = true;
  for (Elem e : s) {
    if (!first) out += ",";
    out += l.name(e);
    first = false;
  }
  return out + "}";
}

}  // namespace

FiniteTopology FiniteTopology::from_subbase(std::size_t n, std::vector<ElementSet> subbase) {
  for (const auto& b : subbase)
    if (b.universe() != n)
      throw Error(ErrorKind::PreconditionFailed, "subbase set over the wrong point count");
  FiniteTopology t;
  t.n_ = n;
  t.nbhd_.assign(n, ElementSet::full(n));
  for (const auto& b : subbase)
    for (Elem p : b) t.nbhd_[p] &= b;
  t.subbase_ = std::move(subbase);
  return t;
}

FiniteTopology FiniteTopology::discrete(std::size_t n) {
  std::vector<ElementSet> sb;
  for (Elem p = 0; p < n; ++p) sb.push_back(ElementSet(n, {p}));
  return from_subbase(n, std::move(sb));
}

FiniteTopology FiniteTopology::indiscrete(std::size_t n) { return from_subbase(n, {}); }

bool FiniteTopology::is_open(const ElementSet& s) const {
  for (Elem p : s)
    if (!nbhd_[p].is_subset_of(s)) return false;
  return true;
}

bool FiniteTopology::is_discrete() const {
  for (const auto& u : nbhd_)
    if (u.count() != 1) return false;
  return true;
}

bool FiniteTopology::is_t1() const {
  for (Elem p = 0; p < n_; ++p) {
    ElementSet single(n_, {p});
    if (!is_closed(single)) return false;
  }
  return true;
}

std::vector<ElementSet> FiniteTopology::opens(std::size_t max_points) const {
  if (n_ > max_points)
    throw Error(ErrorKind::TooLarge, "open enumeration capped at " + std::to_string(max_points) +
                                         " points");
  std::set<ElementSet> seen{ElementSet(n_)};
  std::vector<ElementSet> frontier{ElementSet(n_)};
  while (!frontier.empty()) {
    std::vector<ElementSet> next;
    for (const auto& o : frontier) {
      for (Elem p = 0; p < n_; ++p) {
        if (o.contains(p)) continue;
        ElementSet u = o | nbhd_[p];
        if (seen.insert(u).second) next.push_back(std::move(u));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::size_t FiniteTopology::open_count() const {
  if (is_discrete() && n_ < 64) return std::size_t{1} << n_;
  return opens().size();
}

ElementSet FiniteTopology::isolated_points(const ElementSet& s) const {
  ElementSet out(n_);
  for (Elem p : s)
    if ((nbhd_[p] & s).count() == 1) out.insert(p);
  return out;
}

std::vector<ElementSet> brute_force_opens(std::size_t n, const std::vector<ElementSet>& subbase) {
  // Base: all finite intersections, including the empty one (the whole space).
  std::set<ElementSet> base{ElementSet::full(n)};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<ElementSet> cur(base.begin(), base.end());
    for (const auto& a : cur)
      for (const auto& b : subbase)
        if (base.insert(a & b).second) grew = true;
  }
  std::set<ElementSet> opens{ElementSet(n)};
  grew = true;
  while (grew) {
    grew = false;
    std::vector<ElementSet> cur(opens.begin(), opens.end());
    for (const auto& a : cur)
      for (const auto& b : base)
        if (opens.insert(a | b).second) grew = true;
  }
  return {opens.begin(), opens.end()};
}

CBSequence cb_sequence(const FiniteTopology& t, const ElementSet& s0) {
  CBSequence cb;
  cb.levels.push_back(s0);
  while (true) {
    const ElementSet& cur = cb.levels.back();
    ElementSet next = cur - t.isolated_points(cur);
    if (next == cur) break;
    cb.levels.push_back(std::move(next));
  }
  cb.rank = cb.levels.size() - 1;
  return cb;
}

std::size_t cb_level(const CBSequence& cb, Elem p) {
  std::size_t level = 0;
  for (std::size_t a = 0; a < cb.levels.size(); ++a)
    if (cb.levels[a].contains(p)) level = a;
  return level;
}

FiniteTopology topology_from_json(const Json& j) {
  try {
    auto n = j.at("points").get<std::size_t>();
    std::vector<ElementSet> sb;
    for (const auto& set : j.at("subbase")) {
      ElementSet s(n);
      for (const auto& e : set) {
        auto p = e.get<std::size_t>();
        if (p >= n) throw Error(ErrorKind::ParseError, "subbase point " + std::to_string(p) + " out of range");
        s.insert(static_cast<Elem>(p));
      }
      sb.push_back(std::move(s));
    }
    return FiniteTopology::from_subbase(n, std::move(sb));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

Json topology_to_json(const FiniteTopology& t) {
  Json sb = Json::array();
  for (const auto& s : t.subbase()) sb.push_back(s.to_vector());
  return Json{{"points", t.size()}, {"subbase", sb}};
}

Json cb_to_json(const CBSequence& cb) {
  Json levels = Json::array();
  for (const auto& s : cb.levels) levels.push_back(s.to_vector());
  return Json{{"levels", levels}, {"rank", cb.rank}};
}

FiniteTopology dual_lawson(const FiniteLattice& l) {
  std::vector<ElementSet> sb;
  sb.reserve(2 * l.size());
  for (Elem x = 0; x < l.size(); ++x) {
    sb.push_back(l.down_set(x));
    sb.push_back(l.down_set(x).complement());
  }
  return FiniteTopology::from_subbase(l.size(), std::move(sb));
}

bool ConditionReport::all_pass() const {
  for (const auto& c : clauses)
    if (!c.pass) return false;
  return true;
}

const Clause* ConditionReport::find(const std::string& name) const {
  for (const auto& c : clauses)
    if (c.name == name) return &c;
  return nullptr;
}

Json condition_report_to_json(const ConditionReport& r) {
  Json j;
  j["vacuous"] = r.vacuous;
  j["note"] = r.note;
  Json cs = Json::array();
  for (const auto& c : r.clauses)
    cs.push_back({{"clause", c.name}, {"verdict", c.pass ? "pass" : "fail"}, {"detail", c.detail}});
  j["clauses"] = cs;
  j["all_pass"] = r.all_pass();
  return j;
}

ConditionReport check_order_compatible(const FiniteLattice& l, const FiniteTopology& t) {
  if (t.size() != l.size())
    throw Error(ErrorKind::PreconditionFailed, "topology and lattice differ in size");
  const auto n = static_cast<Elem>(l.size());
  ConditionReport r;

  // A monotone net on a finite poset is eventually constant, so it converges
  // to its eventual value in every topology; that value must be the join
  // (increasing) or meet (decreasing) of the net. Two-step nets a, b, b, ...
  // cover every case.
  Clause nets{"i", true, ""};
  for (Elem a = 0; a < n && nets.pass; ++a)
    for (Elem b = 0; b < n && nets.pass; ++b) {
      if (!l.leq(a, b)) continue;
      if (l.join(a, b) != b) {
        nets.pass = false;
        nets.detail = "increasing net " + l.name(a) + ", " + l.name(b) + " has join " +
                      l.name(l.join(a, b));
      } else if (l.meet(b, a) != a) {
        nets.pass = false;
        nets.detail = "decreasing net " + l.name(b) + ", " + l.name(a) + " has meet " +
                      l.name(l.meet(b, a));
      }
    }
  r.clauses.push_back(nets);

  Clause cont{"ii", true, ""};
  for (Elem a = 0; a < n && cont.pass; ++a)
    for (Elem b = 0; b < n && cont.pass; ++b) {
      const ElementSet& target = t.neighborhood(l.join(a, b));
      for (Elem a2 : t.neighborhood(a)) {
        for (Elem b2 : t.neighborhood(b)) {
          if (!target.contains(l.join(a2, b2))) {
            cont.pass = false;
            cont.detail = "join not continuous at (" + l.name(a) + ", " + l.name(b) + "): (" +
                          l.name(a2) + ", " + l.name(b2) + ") leaves the neighbourhood";
            break;
          }
        }
        if (!cont.pass) break;
      }
    }
  r.clauses.push_back(cont);

  Clause closed{"iii", true, ""};
  for (Elem a = 0; a < n && closed.pass; ++a)
    for (Elem b = 0; b < n && closed.pass; ++b) {
      if (l.leq(a, b)) continue;
      for (Elem a2 : t.neighborhood(a)) {
        for (Elem b2 : t.neighborhood(b)) {
          if (l.leq(a2, b2)) {
            closed.pass = false;
            closed.detail = "(" + l.name(a) + ", " + l.name(b) + ") not interior to the complement: " +
                            l.name(a2) + " <= " + l.name(b2);
            break;
          }
        }
        if (!closed.pass) break;
      }
    }
  r.clauses.push_back(closed);
  return r;
}

FiniteLattice closed_set_lattice(const FiniteTopology& t, std::vector<ElementSet>* sets) {
  std::vector<ElementSet> closed;
  for (const auto& o : t.opens(12)) closed.push_back(o.complement());
  std::sort(closed.begin(), closed.end(), [](const ElementSet& a, const ElementSet& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a < b;
  });
  std::vector<std::string> names;
  std::vector<std::pair<Elem, Elem>> rel;
  for (Elem i = 0; i < closed.size(); ++i) {
    names.push_back(set_label(closed[i]));
    for (Elem j = 0; j < closed.size(); ++j)
      if (i != j && closed[i].is_subset_of(closed[j])) rel.emplace_back(i, j);
  }
  FiniteLattice l = as_lattice(build_poset_indexed(std::move(names), rel));
  if (sets) *sets = std::move(closed);
  return l;
}

CBResidualReport residual_equals_cb_closedsets(const FiniteTopology& t) {
  if (!t.is_t1()) throw Error(ErrorKind::NotT1, "some singleton is not closed");
  std::vector<ElementSet> sets;
  FiniteLattice l = closed_set_lattice(t, &sets);
  CBResidualReport rep;
  for (Elem s = 0; s < l.size(); ++s) {
    ClosedSetComparison row;
    row.set = sets[s];
    row.mu = sets[residual_derivative(l, s)];
    row.derived = sets[s] - t.isolated_points(sets[s]);
    if (row.mu != row.derived) rep.all_equal = false;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

bool is_convex(const FiniteLattice& l, const ElementSet& s) {
  for (Elem a : s)
    for (Elem b : s) {
      if (!l.lt(a, b)) continue;
      ElementSet between = l.up_set(a) & l.down_set(b);
      if (!between.is_subset_of(s)) return false;
    }
  return true;
}

std::optional<ElementSet> convexity_scan(const FiniteLattice& l) {
  for (Elem x = 0; x < l.size(); ++x) {
    if (!is_convex(l, l.down_set(x))) return l.down_set(x);
    ElementSet c = l.down_set(x).complement();
    if (!is_convex(l, c)) return c;
  }
  return std::nullopt;
}

std::optional<std::vector<std::size_t>> finite_subcover(const ElementSet& target,
                                                        const std::vector<ElementSet>& cover) {
  ElementSet left = target;
  std::vector<std::size_t> picked;
  while (!left.empty()) {
    std::size_t best = cover.size(), gain = 0;
    for (std::size_t i = 0; i < cover.size(); ++i) {
      std::size_t g = (cover[i] & left).count();
      if (g > gain) {
        gain = g;
        best = i;
      }
    }
    if (best == cover.size()) return std::nullopt;
    picked.push_back(best);
    left -= cover[best];
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

ConditionReport check_locally_constant_core(const FiniteLattice& l, const FiniteTopology& t, Elem x) {
  ConditionReport r;
  const ElementSet& o = t.neighborhood(x);
  Elem cx = core_of(l, x);
  Clause c{"locally_constant_core", true, "neighbourhood " + names_label(l, o)};
  for (Elem z : o - l.down_set(x)) {
    if (core_of(l, z) != cx) {
      c.pass = false;
      c.detail = "c(" + l.name(z) + ") = " + l.name(core_of(l, z)) + " differs from c(" +
                 l.name(x) + ") = " + l.name(cx);
      break;
    }
  }
  r.clauses.push_back(c);
  return r;
}

ConditionReport check_isolated_below_conditions(const FiniteLattice& l, const FiniteTopology& t,
                                                Elem x, const ElementSet& p_star,
                                                std::vector<ElementSet> samples) {
  if (t.size() != l.size())
    throw Error(ErrorKind::PreconditionFailed, "topology and lattice differ in size");
  CBSequence cb = cb_sequence(t, l.all());
  if (cb_level(cb, x) != 1 || cb.levels.size() < 2)
    throw Error(ErrorKind::PreconditionFailed, l.name(x) + " is not in S_1 minus S_2");

  const ElementSet t0 = t_class_members(l, 0);
  const bool in_t0 = t0.contains(x);
  const ElementSet out_x = outcasts(l, x);
  if (!in_t0 && out_x.empty())
    throw Error(ErrorKind::PreconditionFailed, l.name(x) + " is neither in T_0 nor has an outcast");

  ConditionReport r;
  r.note = in_t0 ? "x in T_0" : "x has an outcast";
  const Elem bd = in_t0 ? l.bottom() : boundary(l, x);
  const Elem y = in_t0 ? x : l.co_heyting_sub(x, bd);

  ElementSet mt = l.maximal_subelements(y, t0);
  r.clauses.push_back({"unique_maximal_t0", mt.count() == 1,
                       "M_T0 = " + names_label(l, mt)});
  ElementSet out_t0 = outcasts(l, x, t0);
  r.clauses.push_back({"no_t0_outcast", out_t0.empty(), "T_0-outcasts " + names_label(l, out_t0)});
  const Elem mu_t = mt.empty() ? y : l.meet_of_set(mt);
  if (!in_t0) {
    Elem j = l.join(mu_t, bd);
    bool ok = l.lt(j, x) && !l.leq(mu_t, bd);
    r.clauses.push_back({"mu_t0_below", ok,
                         "mu_T0 v boundary = " + l.name(j) + ", mu_T0 = " + l.name(mu_t)});
  }

  const Elem floor = in_t0 ? mu_t : l.join(mu_t, bd);
  const ElementSet delta = (l.down_set(x) & completely_coirreducibles(l)) - l.down_set(floor);
  if (!p_star.is_subset_of(delta))
    throw Error(ErrorKind::PreconditionFailed, "P* is not a subset of the candidate set");

  if (samples.empty()) {
    std::vector<Elem> d = delta.to_vector();
    if (d.size() > 16) throw Error(ErrorKind::BudgetExceeded, "candidate set too large to enumerate");
    for (std::size_t mask = 0; mask < (std::size_t{1} << d.size()); ++mask) {
      ElementSet p(l.size());
      for (std::size_t i = 0; i < d.size(); ++i)
        if ((mask >> i) & 1u) p.insert(d[i]);
      samples.push_back(std::move(p));
    }
  }
  for (const auto& p : samples)
    if (!p.is_subset_of(delta))
      throw Error(ErrorKind::PreconditionFailed, "sample not inside the candidate set");

  auto h = [&](const ElementSet& p) { return l.join(l.join_of_set(p), bd); };
  const Elem h_star = h(p_star);
  auto above_star = [&](const ElementSet& p) { return p_star.is_subset_of(p); };

  {
    Clause c{"i", true, ""};
    Elem all = l.bottom();
    for (const auto& p : samples) {
      Elem hp = h(p);
      all = l.join(all, hp);
      if (!l.lt(hp, x) && c.pass) {
        c.pass = false;
        c.detail = "h(" + names_label(l, p) + ") = " + l.name(hp) + " is not below x";
      }
    }
    if (c.pass && all != x) {
      c.pass = false;
      c.detail = "join of the h(P) is " + l.name(all);
    }
    r.clauses.push_back(c);
  }
  {
    Clause c{"ii", true, ""};
    for (Elem z : l.down_set(x)) {
      if (z == x) continue;
      bool hit = std::any_of(samples.begin(), samples.end(),
                             [&](const ElementSet& p) { return l.leq(z, h(p)); });
      if (!hit) {
        c.pass = false;
        c.detail = l.name(z) + " lies below no h(P)";
        break;
      }
    }
    r.clauses.push_back(c);
  }
  {
    Elem want = in_t0 ? mu_t : l.join(mu_t, core_of(l, bd));
    bool isolated = t.neighborhood(h_star).count() == 1;
    bool core_ok = core_of(l, h_star) == want;
    r.clauses.push_back({"iii", isolated && core_ok,
                         "h(P*) = " + l.name(h_star) + (isolated ? " isolated" : " not isolated") +
                             ", core " + l.name(core_of(l, h_star)) + " vs " + l.name(want)});
  }
  {
    Clause c{"iv", true, ""};
    for (const auto& p : samples)
      if (above_star(p) && !dually_compact_finite(l, h(p))) {
        c.pass = false;
        c.detail = "h(" + names_label(l, p) + ") not dually compact";
        break;
      }
    r.clauses.push_back(c);
  }
  {
    // Relative strata of a finite lattice are finite; record the largest one.
    std::size_t widest = 0;
    for (const auto& p : samples)
      if (above_star(p)) {
        Elem hp = h(p);
        if (l.leq(h_star, hp)) widest = std::max(widest, relative_strata(l, h_star, hp).delta.count());
      }
    r.clauses.push_back({"v", true, "largest relative boundary " + std::to_string(widest)});
  }
  {
    const ElementSet& o = t.neighborhood(in_t0 ? x : y);
    bool found = std::any_of(samples.begin(), samples.end(), [&](const ElementSet& p) {
      return above_star(p) && (delta - p).is_subset_of(o);
    });
    r.clauses.push_back({"vi", found, "neighbourhood " + names_label(l, o)});
  }
  {
    Clause c{"vii", true, ""};
    for (Elem s : delta - p_star) {
      Elem lo = in_t0 ? s : l.join(s, bd);
      if (!l.leq(mu_t, lo)) {
        c.pass = false;
        c.detail = "mu_T0 = " + l.name(mu_t) + " not below " + l.name(lo);
        break;
      }
    }
    r.clauses.push_back(c);
  }
  return r;
}

}  // namespace residua
