#include "residua/testbed.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <functional>
#include <set>

#include "residua/effective.hpp"
#include "residua/error.hpp"
#include "residua/laws.hpp"

namespace residua {

namespace {

Coord add(Coord c, std::size_t k) { return c == kInf ? kInf : static_cast<Coord>(c + k); }

OrdinalVector unit(std::size_t dims, std::size_t j, Coord v) {
  OrdinalVector e{std::vector<Coord>(dims, kInf)};
  e.coords[j] = v;
  return e;
}

std::string join_names(const std::vector<OrdinalVector>& vs) {
  std::string out = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "; " : "") + to_string(vs[i]);
  return out + "}";
}

Coord clamp_to(Coord c, Coord bound) { return c == kInf ? bound : std::min(c, bound); }

}  // namespace

std::size_t OrdinalVector::inf_count() const {
  return static_cast<std::size_t>(std::count(coords.begin(), coords.end(), kInf));
}

Coord OrdinalVector::max_finite() const {
  Coord m = 0;
  for (Coord c : coords)
    if (c != kInf) m = std::max(m, c);
  return m;
}

std::string to_string(const OrdinalVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.coords.size(); ++i) {
    if (i) out += ",";
    out += v.coords[i] == kInf ? "inf" : std::to_string(v.coords[i]);
  }
  return out;
}

OrdinalVector parse_vector(std::string_view text, std::optional<std::size_t> dims) {
  OrdinalVector v;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string_view part = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    if (part == "inf" || part == "Inf" || part == "INF") {
      v.coords.push_back(kInf);
    } else {
      Coord c = 0;
      auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), c);
      if (part.empty() || ec != std::errc() || ptr != part.data() + part.size() || c == kInf)
        throw Error(ErrorKind::ParseError, "bad coordinate '" + std::string(part) + "'");
      v.coords.push_back(c);
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (dims && v.dims() != *dims)
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(*dims) +
                                                  " coordinates, got " + std::to_string(v.dims()));
  return v;
}

std::string_view to_string(VecOrder o) {
  switch (o) {
    case VecOrder::Below: return "below";
    case VecOrder::Above: return "above";
    case VecOrder::Equal: return "equal";
    case VecOrder::Incomparable: return "incomparable";
  }
  return "unknown";
}

static void same_dims(const OrdinalVector& x, const OrdinalVector& y) {
  if (x.dims() != y.dims())
    throw Error(ErrorKind::DimensionMismatch, to_string(x) + " vs " + to_string(y));
}

VecOrder vec_order(const OrdinalVector& x, const OrdinalVector& y) {
  same_dims(x, y);
  bool below = true, above = true;
  for (std::size_t i = 0; i < x.dims(); ++i) {
    if (x.coords[i] < y.coords[i]) below = false;
    if (x.coords[i] > y.coords[i]) above = false;
  }
  if (below && above) return VecOrder::Equal;
  if (below) return VecOrder::Below;
  if (above) return VecOrder::Above;
  return VecOrder::Incomparable;
}

OrdinalVector vec_meet(const OrdinalVector& x, const OrdinalVector& y) {
  same_dims(x, y);
  OrdinalVector r = x;
  for (std::size_t i = 0; i < x.dims(); ++i) r.coords[i] = std::max(x.coords[i], y.coords[i]);
  return r;
}

OrdinalVector vec_join(const OrdinalVector& x, const OrdinalVector& y) {
  same_dims(x, y);
  OrdinalVector r = x;
  for (std::size_t i = 0; i < x.dims(); ++i) r.coords[i] = std::min(x.coords[i], y.coords[i]);
  return r;
}

Testbed::Testbed(std::size_t dims) : dims_(dims) {
  if (dims < 1 || dims > 4)
    throw Error(ErrorKind::PreconditionFailed, "testbed dimension must be 1..4");
}

void Testbed::check_dims(const OrdinalVector& x) const {
  if (x.dims() != dims_)
    throw Error(ErrorKind::DimensionMismatch,
                to_string(x) + " has " + std::to_string(x.dims()) + " coordinates, testbed has " +
                    std::to_string(dims_));
}

bool Testbed::leq(const OrdinalVector& x, const OrdinalVector& y) const {
  VecOrder o = vec_order(x, y);
  return o == VecOrder::Below || o == VecOrder::Equal;
}

OrdinalVector Testbed::bottom() const { return OrdinalVector{std::vector<Coord>(dims_, kInf)}; }
OrdinalVector Testbed::top() const { return OrdinalVector{std::vector<Coord>(dims_, 0)}; }

std::vector<OrdinalVector> Testbed::lower_covers(const OrdinalVector& x) const {
  check_dims(x);
  std::vector<OrdinalVector> out;
  for (std::size_t j = 0; j < dims_; ++j) {
    if (x.is_inf(j)) continue;
    OrdinalVector m = x;
    ++m.coords[j];
    out.push_back(std::move(m));
  }
  return out;
}

OrdinalVector Testbed::co_heyting_sub(const OrdinalVector& x, const OrdinalVector& z) const {
  if (!leq(z, x)) throw Error(ErrorKind::NotBelow, to_string(z) + " is not below " + to_string(x));
  OrdinalVector r = x;
  for (std::size_t j = 0; j < dims_; ++j)
    if (z.coords[j] == x.coords[j]) r.coords[j] = kInf;
  return r;
}

bool Testbed::dually_compact(const OrdinalVector& x) const {
  check_dims(x);
  return x.inf_count() == 0;
}

OrdinalVector Testbed::mu(const OrdinalVector& x) const { return iterate(x, 1); }

OrdinalVector Testbed::iterate(const OrdinalVector& x, std::size_t k) const {
  check_dims(x);
  OrdinalVector r = x;
  for (auto& c : r.coords) c = add(c, k);
  return r;
}

RankValue Testbed::rank(const OrdinalVector& x) const {
  check_dims(x);
  return x.inf_count() < dims_ ? RankValue::limit() : RankValue::of(0);
}

OrdinalVector Testbed::core(const OrdinalVector& x) const {
  check_dims(x);
  return bottom();
}

OrdinalVector Testbed::boundary(const OrdinalVector& x) const { return residua::boundary(*this, x); }

std::vector<OrdinalVector> Testbed::stratum(const OrdinalVector& x, std::size_t k) const {
  check_dims(x);
  std::vector<OrdinalVector> out;
  for (std::size_t j = 0; j < dims_; ++j)
    if (!x.is_inf(j)) out.push_back(unit(dims_, j, add(x.coords[j], k)));
  return out;
}

std::optional<std::size_t> Testbed::rho(const OrdinalVector& x, const OrdinalVector& s) const {
  check_dims(x);
  check_dims(s);
  if (s.inf_count() + 1 != dims_) return std::nullopt;
  for (std::size_t j = 0; j < dims_; ++j)
    if (!s.is_inf(j))
      return (!x.is_inf(j) && s.coords[j] >= x.coords[j])
                 ? std::optional<std::size_t>(s.coords[j] - x.coords[j])
                 : std::nullopt;
  return std::nullopt;
}

bool Testbed::completely_coirreducible(const OrdinalVector& s) const {
  check_dims(s);
  return s.inf_count() + 1 == dims_;
}

std::vector<OrdinalVector> Testbed::relative_stratum(const OrdinalVector& x, const OrdinalVector& z,
                                                     std::size_t k) const {
  if (!leq(x, z)) throw Error(ErrorKind::NotBelow, to_string(x) + " is not below " + to_string(z));
  std::vector<OrdinalVector> out;
  for (const auto& [m, r] : residues(*this, iterate(z, k)))
    if (!leq(r, x)) out.push_back(r);
  return out;
}

std::vector<OrdinalVector> Testbed::box(Coord bound) const {
  std::vector<Coord> values;
  for (Coord c = 0; c <= bound; ++c) values.push_back(c);
  values.push_back(kInf);
  std::vector<OrdinalVector> out;
  std::vector<std::size_t> idx(dims_, 0);
  while (true) {
    OrdinalVector v{std::vector<Coord>(dims_)};
    for (std::size_t i = 0; i < dims_; ++i) v.coords[i] = values[idx[i]];
    out.push_back(std::move(v));
    std::size_t i = dims_;
    while (i > 0 && ++idx[i - 1] == values.size()) idx[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

std::vector<OrdinalVector> bounded_outcasts(const Testbed& t, const OrdinalVector& x, Coord bound) {
  auto covers = t.lower_covers(x);
  std::vector<OrdinalVector> out;
  for (const auto& z : t.box(bound)) {
    if (!t.lt(z, x)) continue;
    bool under = std::any_of(covers.begin(), covers.end(),
                             [&](const OrdinalVector& m) { return t.leq(z, m); });
    if (!under) out.push_back(z);
  }
  return out;
}

bool dually_compact_oracle(const Testbed& t, const OrdinalVector& x, Coord bound) {
  t.check_dims(x);
  // Truncations x_k (Inf replaced by k) form a filtered family with meet x
  // once k passes every finite coordinate; x is refuted when no x_k is below x.
  for (Coord k = 0; k <= bound; ++k) {
    OrdinalVector xk = x;
    for (auto& c : xk.coords)
      if (c == kInf) c = k;
    if (t.leq(xk, x)) return true;
  }
  return false;
}

bool CoordConstraint::contains(Coord c) const {
  switch (kind) {
    case Kind::IsInf: return c == kInf;
    case Kind::Eq: return c == k;
    case Kind::FinAtLeast: return c != kInf && c >= k;
    case Kind::AnyFin: return c != kInf;
    case Kind::Any: return true;
  }
  return false;
}

bool DefinablePattern::contains(const OrdinalVector& v) const {
  if (v.dims() != coords.size()) return false;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].contains(v.coords[i])) return false;
  return true;
}

bool PatternUnion::contains(const OrdinalVector& v) const {
  return std::any_of(parts.begin(), parts.end(), [&](const DefinablePattern& p) { return p.contains(v); });
}

std::string to_string(const CoordConstraint& c) {
  switch (c.kind) {
    case CoordConstraint::Kind::IsInf: return "inf";
    case CoordConstraint::Kind::Eq: return "=" + std::to_string(c.k);
    case CoordConstraint::Kind::FinAtLeast: return ">=" + std::to_string(c.k);
    case CoordConstraint::Kind::AnyFin: return "fin";
    case CoordConstraint::Kind::Any: return "any";
  }
  return "?";
}

std::string to_string(const DefinablePattern& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.coords.size(); ++i) out += (i ? "," : "") + to_string(p.coords[i]);
  return out + ")";
}

std::string to_string(const PatternUnion& u) {
  if (u.parts.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < u.parts.size(); ++i) out += (i ? " | " : "") + to_string(u.parts[i]);
  return out;
}

TestbedProfile testbed_profile(const Testbed& t, const OrdinalVector& x, std::size_t bound) {
  t.check_dims(x);
  TestbedProfile p;
  p.element = x;
  p.maximal = t.lower_covers(x);
  p.mu = t.mu(x);
  p.rank = t.rank(x);
  p.core = t.core(x);
  p.residues = residues(t, x);
  p.boundary = t.boundary(x);
  auto engine = mu_iterates(t, x, bound);
  for (std::size_t k = 0; k <= bound; ++k) {
    p.iterates.push_back(t.iterate(x, k));
    if (engine[k] != p.iterates[k]) p.engine_agrees = false;
    p.strata.push_back(t.stratum(x, k));
    std::vector<OrdinalVector> generic;
    for (const auto& [m, r] : residues(t, p.iterates[k])) generic.push_back(r);
    if (generic != p.strata.back()) p.engine_agrees = false;
  }
  for (std::size_t j = 0; j < t.dims(); ++j) {
    if (x.is_inf(j)) continue;
    DefinablePattern d{std::vector<CoordConstraint>(t.dims(), {CoordConstraint::Kind::IsInf, 0})};
    d.coords[j] = {CoordConstraint::Kind::FinAtLeast, x.coords[j]};
    p.delta.parts.push_back(d);
  }
  return p;
}

Json testbed_profile_to_json(const TestbedProfile& p) {
  auto vec_list = [](const std::vector<OrdinalVector>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back(to_string(v));
    return a;
  };
  Json j;
  j["element"] = to_string(p.element);
  j["maximal"] = vec_list(p.maximal);
  j["mu"] = to_string(p.mu);
  j["rank"] = rank_to_json(p.rank);
  j["core"] = to_string(p.core);
  Json res = Json::object();
  for (const auto& [m, r] : p.residues) res[to_string(m)] = to_string(r);
  j["residues"] = res;
  j["boundary"] = to_string(p.boundary);
  j["iterates"] = vec_list(p.iterates);
  Json strata = Json::array();
  for (const auto& s : p.strata) strata.push_back(vec_list(s));
  j["strata"] = strata;
  j["delta"] = to_string(p.delta);
  j["engine_agrees"] = p.engine_agrees;
  return j;
}

std::string_view to_string(Isolation i) {
  switch (i) {
    case Isolation::Isolated: return "isolated";
    case Isolation::NotIsolated: return "not_isolated";
    case Isolation::Unstable: return "unstable";
  }
  return "unknown";
}

IsolationSearch isolation_search(const Testbed& t, const OrdinalVector& x, Coord bound,
                                 const PatternUnion* within) {
  t.check_dims(x);
  if (bound < x.max_finite() + 2)
    throw Error(ErrorKind::BoundTooSmall, "bound " + std::to_string(bound) + " below " +
                                              std::to_string(x.max_finite() + 2) + " for " +
                                              to_string(x));
  IsolationSearch s;
  // down(k) with k as low as the bound allows is the smallest subbasic down-set around x.
  s.k = x;
  for (auto& c : s.k.coords) c = clamp_to(c, bound);
  for (const auto& kp : t.box(bound)) {
    bool finite = kp.inf_count() == 0;
    if (finite && !t.leq(x, kp)) ++s.excluded;
  }
  // Coordinates above bound + 1 compare like bound + 1 against every
  // parameter, so the box {0..bound+1, Inf} meets each class of the open.
  for (const auto& y : t.box(bound + 1)) {
    if (y == x || (within && !within->contains(y))) continue;
    if (!t.leq(y, s.k)) continue;
    // The binding excluded down-set for y is down(clamp(y)).
    OrdinalVector c = y;
    for (auto& v : c.coords) v = clamp_to(v, bound);
    if (t.leq(x, c)) {
      s.other = y;
      break;
    }
  }
  s.isolated = !s.other.has_value();
  return s;
}

Isolation isolated_oracle(const Testbed& t, const OrdinalVector& x, Coord bound,
                          const PatternUnion* within) {
  bool first = isolation_search(t, x, bound, within).isolated;
  for (Coord b = bound + 1; b <= bound + 3; ++b)
    if (isolation_search(t, x, b, within).isolated != first) return Isolation::Unstable;
  return first ? Isolation::Isolated : Isolation::NotIsolated;
}

Characterization characterization_predicates(const Testbed& t, const OrdinalVector& x) {
  t.check_dims(x);
  // No vector of L_I has an outcast and M(x) has at most |I| elements.
  Characterization c;
  c.literal = true;
  c.corrected = t.dually_compact(x);
  return c;
}

std::size_t cb_level(const Testbed& t, const OrdinalVector& x) {
  t.check_dims(x);
  return x.inf_count();
}

PatternUnion cb_level_pattern(const Testbed& t, std::size_t alpha) {
  PatternUnion u;
  const std::size_t n = t.dims();
  if (alpha > n) return u;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != alpha) continue;
    DefinablePattern p{std::vector<CoordConstraint>(n)};
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u) p.coords[i] = {CoordConstraint::Kind::IsInf, 0};
    u.parts.push_back(p);
  }
  return u;
}

std::vector<CBLadderRow> verify_cb_ladder(const Testbed& t, Coord bound) {
  if (bound < 2) throw Error(ErrorKind::BoundTooSmall, "ladder bound must be at least 2");
  std::vector<CBLadderRow> rows;
  const auto points = t.box(bound - 2);
  for (std::size_t a = 0; a <= t.dims() + 1; ++a) {
    CBLadderRow row;
    row.alpha = a;
    row.pattern = cb_level_pattern(t, a);
    PatternUnion next = cb_level_pattern(t, a + 1);
    for (const auto& x : points) {
      if (!row.pattern.contains(x)) continue;
      ++row.points;
      Isolation iso = isolated_oracle(t, x, bound, &row.pattern);
      if (iso == Isolation::Isolated) ++row.isolated;
      bool expect_isolated = !next.contains(x);
      bool ok = iso != Isolation::Unstable && (iso == Isolation::Isolated) == expect_isolated;
      if (!ok && row.matches) {
        row.matches = false;
        row.mismatch = to_string(x) + " is " + std::string(to_string(iso)) + " within S_" +
                       std::to_string(a);
      }
    }
    if (a == t.dims() + 1 && !row.pattern.parts.empty()) {
      row.matches = false;
      row.mismatch = "perfect kernel is not empty";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ConditionReport check_s1s2_above(const Testbed& t, const OrdinalVector& x, const OrdinalVector& z,
                                 Coord bound) {
  t.check_dims(x);
  t.check_dims(z);
  if (cb_level(t, x) != 1)
    throw Error(ErrorKind::PreconditionFailed, to_string(x) + " is not in S_1 minus S_2");
  if (!t.dually_compact(z))
    throw Error(ErrorKind::PreconditionFailed, to_string(z) + " is not dually compact");
  if (!t.lt(x, z))
    throw Error(ErrorKind::PreconditionFailed, to_string(x) + " is not strictly below " + to_string(z));

  const std::size_t horizon = bound;
  std::vector<std::vector<OrdinalVector>> rel;
  for (std::size_t k = 0; k <= 2 * horizon + 1; ++k) rel.push_back(t.relative_stratum(x, z, k));

  ConditionReport r;
  {
    std::size_t widest = 0;
    for (std::size_t k = 0; k <= horizon; ++k) widest = std::max(widest, rel[k].size());
    r.clauses.push_back({"i", true,
                         "|M(z)| = " + std::to_string(t.lower_covers(z).size()) +
                             ", largest s_k(x,z) for k <= " + std::to_string(horizon) + " has " +
                             std::to_string(widest) + " elements"});
  }
  r.clauses.push_back({"ii", t.core(x) == t.core(z),
                       "c(x) = " + to_string(t.core(x)) + ", c(z) = " + to_string(t.core(z))});
  {
    // A coordinate where x is Inf and z is finite contributes to every
    // relative stratum, so none is empty.
    bool forever = false;
    for (std::size_t j = 0; j < t.dims(); ++j)
      if (x.is_inf(j) && !z.is_inf(j)) forever = true;
    std::optional<std::size_t> empty_at;
    for (std::size_t k = 0; k <= horizon && !empty_at; ++k)
      if (rel[k].empty()) empty_at = k;
    bool pass = forever && !empty_at;
    r.clauses.push_back({"iii", pass,
                         pass ? "r(x,z) = omega"
                              : "r(x,z) = " + std::to_string(empty_at.value_or(horizon + 1))});
  }
  {
    Clause c{"iv", true, ""};
    for (std::size_t k = 0; k <= horizon && c.pass; ++k) {
      bool found = false;
      for (std::size_t l = k + 1; l <= k + horizon + 1 && !found; ++l) {
        bool all = true;
        for (const auto& s : rel[k])
          for (const auto& u : rel[l])
            if (!t.leq(u, s)) all = false;
        found = all;
      }
      if (!found) {
        c.pass = false;
        c.detail = "no later stratum below s_" + std::to_string(k) + "(x,z) = " + join_names(rel[k]);
      }
    }
    r.clauses.push_back(c);
  }
  {
    auto out = bounded_outcasts(t, x, bound);
    Clause c{"v", true, out.empty() ? "x has no outcast" : ""};
    if (!out.empty()) {
      OrdinalVector bd = t.boundary(x);
      for (std::size_t k = 0; k <= horizon && c.pass; ++k)
        for (const auto& s : rel[k])
          if (!t.leq(t.core(x), t.join(s, bd))) {
            c.pass = false;
            c.detail = "c(x) not below " + to_string(s) + " v boundary";
          }
    }
    r.clauses.push_back(c);
  }
  {
    bool none_above = true, all_above = true;
    for (std::size_t k = 0; k <= horizon; ++k)
      for (const auto& s : rel[k]) {
        if (t.leq(x, s)) none_above = false;
        else all_above = false;
      }
    r.clauses.push_back({"vi", none_above || all_above,
                         none_above ? "x is below no s in delta(x,z)"
                                    : (all_above ? "x is below every s in delta(x,z)"
                                                 : "mixed")});
  }
  {
    Clause c{"converse", true, ""};
    std::size_t sampled = 0;
    for (const auto& y : t.box(bound)) {
      if (!t.lt(x, y) || !t.leq(y, z)) continue;
      ++sampled;
      Coord b = std::max<Coord>(bound, y.max_finite() + 2);
      Isolation iso = isolated_oracle(t, y, b);
      if (iso != Isolation::Isolated && c.pass) {
        c.pass = false;
        c.detail = to_string(y) + " is " + std::string(to_string(iso));
      }
    }
    if (c.pass) c.detail = std::to_string(sampled) + " sampled points isolated";
    r.clauses.push_back(c);
  }
  return r;
}

ConditionReport check_locally_constant_core(const Testbed& t, const OrdinalVector& x, Coord bound) {
  t.check_dims(x);
  if (cb_level(t, x) != 1)
    throw Error(ErrorKind::PreconditionFailed, to_string(x) + " is not in S_1 minus S_2");
  Coord b = std::max<Coord>(bound, x.max_finite() + 2);
  IsolationSearch o = isolation_search(t, x, b);
  ConditionReport r;
  Clause c{"locally_constant_core", true, ""};
  std::size_t sampled = 0;
  for (const auto& y : t.box(bound)) {
    if (!t.leq(y, o.k) || t.leq(y, x)) continue;
    OrdinalVector cy = y;
    for (auto& v : cy.coords) v = clamp_to(v, b);
    if (!t.leq(x, cy)) continue;
    ++sampled;
    if (t.core(y) != t.core(x)) {
      c.pass = false;
      c.detail = "c(" + to_string(y) + ") differs from c(x)";
      break;
    }
  }
  if (c.pass) c.detail = std::to_string(sampled) + " sampled points share the core " + to_string(t.core(x));
  r.clauses.push_back(c);
  return r;
}

ConditionReport check_isolated_below_conditions(const Testbed& t, const OrdinalVector& x,
                                                const std::vector<OrdinalVector>& p_star,
                                                Coord bound) {
  t.check_dims(x);
  if (x != t.bottom())
    throw Error(ErrorKind::PreconditionFailed, to_string(x) + " is not in T_0 = {epsilon}");
  ConditionReport r;
  if (t.dims() >= 2) {
    r.vacuous = true;
    r.note = "epsilon has " + std::to_string(t.dims()) + " Inf coordinates, so it is not in S_1 minus S_2";
    return r;
  }
  // |I| = 1: epsilon = (Inf) is the only point of S_1 and the only T_0 element.
  r.note = "x in T_0";
  if (!p_star.empty())
    throw Error(ErrorKind::PreconditionFailed, "P* is not a subset of the candidate set");
  std::vector<OrdinalVector> below_t0;
  for (const auto& z : t.box(bound))
    if (t.lt(z, x) && t.lower_covers(z).empty()) below_t0.push_back(z);
  r.clauses.push_back({"unique_maximal_t0", below_t0.size() == 1,
                       "M_T0 = " + join_names(below_t0)});
  r.clauses.push_back({"no_t0_outcast", true, "no T_0 element below x"});
  // The candidate set is down(x) cap I minus down(mu_T0(x)) = empty.
  const OrdinalVector h = t.bottom();
  r.clauses.push_back({"i", t.lt(h, x), "h(empty) = " + to_string(h) + " is not below x"});
  r.clauses.push_back({"ii", true, "nothing lies strictly below x"});
  Isolation iso = isolated_oracle(t, h, std::max<Coord>(bound, 2));
  r.clauses.push_back({"iii", iso == Isolation::Isolated && t.core(h) == x,
                       "h(P*) = " + to_string(h) + " is " + std::string(to_string(iso))});
  r.clauses.push_back({"iv", t.dually_compact(h),
                       to_string(h) + (t.dually_compact(h) ? " dually compact" : " not dually compact")});
  r.clauses.push_back({"v", true, "relative boundary empty"});
  r.clauses.push_back({"vi", true, "candidate set empty"});
  r.clauses.push_back({"vii", true, "candidate set empty"});
  return r;
}

// Bounded law checks on the testbed box {0..B, Inf}^I.

namespace {

struct TbCheck {
  std::size_t checked = 0;
  bool failed = false;
  std::string detail;

  void fail(std::string d) {
    if (failed) return;
    failed = true;
    detail = std::move(d);
  }
};

using TbChecker = std::function<void(const Testbed&, const std::vector<OrdinalVector>&, Coord, TbCheck&)>;

OrdinalVector join_of(const Testbed& t, const std::vector<OrdinalVector>& vs) {
  OrdinalVector acc = t.bottom();
  for (const auto& v : vs) acc = t.join(acc, v);
  return acc;
}

std::vector<OrdinalVector> residue_list(const Testbed& t, const OrdinalVector& x) {
  std::vector<OrdinalVector> out;
  for (const auto& [m, r] : residues(t, x)) out.push_back(r);
  return out;
}

bool has_bounded_outcast(const Testbed& t, const OrdinalVector& x, Coord bound) {
  return !bounded_outcasts(t, x, bound).empty();
}

std::optional<TbChecker> testbed_checker(LawId law) {
  using V = std::vector<OrdinalVector>;
  switch (law) {
    case LawId::LATTICE_TABLES:
      return [](const Testbed& t, const V& box, Coord, TbCheck& k) {
        for (const auto& a : box)
          for (const auto& b : box) {
            ++k.checked;
            OrdinalVector m = t.meet(a, b), j = t.join(a, b);
            if (!t.leq(m, a) || !t.leq(m, b) || !t.leq(a, j) || !t.leq(b, j))
              return k.fail("bounds fail at " + to_string(a) + " / " + to_string(b));
            for (const auto& c : box) {
              if (t.leq(c, a) && t.leq(c, b) && !t.leq(c, m))
                return k.fail("meet not greatest at " + to_string(a) + " / " + to_string(b));
              if (t.leq(a, c) && t.leq(b, c) && !t.leq(j, c))
                return k.fail("join not least at " + to_string(a) + " / " + to_string(b));
            }
          }
      };
    case LawId::COHEYTING_JOIN:
      return [](const Testbed& t, const V& box, Coord, TbCheck& k) {
        for (const auto& x : box)
          for (const auto& z : box) {
            if (!t.leq(z, x)) continue;
            ++k.checked;
            OrdinalVector d = t.co_heyting_sub(x, z);
            if (t.join(z, d) != x) return k.fail("z v (x - z) != x at " + to_string(x) + ", " + to_string(z));
            for (const auto& y : box)
              if (t.leq(y, x) && t.join(z, y) == x && !t.leq(d, y))
                return k.fail("x - z not least at " + to_string(x) + ", " + to_string(z));
          }
      };
    case LawId::MU_RESIDUE_DECOMP:
      return [](const Testbed& t, const V& box, Coord, TbCheck& k) {
        for (const auto& x : box) {
          ++k.checked;
          if (t.join(t.mu(x), join_of(t, residue_list(t, x))) != x)
            return k.fail("decomposition fails at " + to_string(x));
        }
      };
    case LawId::CORE_RESIDUE_DECOMP:
      return [](const Testbed& t, const V& box, Coord, TbCheck& k) {
        for (const auto& x : box) {
          ++k.checked;
          if (t.join(t.core(x), join_of(t, residue_list(t, x))) != x)
            return k.fail("decomposition fails at " + to_string(x));
        }
      };
    case LawId::MAXIMALS_JOIN:
    case LawId::MAXIMALS_MEET_MAXIMAL:
      return [law](const Testbed& t, const V& box, Coord, TbCheck& k) {
        for (const auto& x : box) {
          auto ms = t.lower_covers(x);
          for (std::size_t i = 0; i < ms.size(); ++i)
            for (std::size_t j = i + 1; j < ms.size(); ++j) {
              ++k.checked;
              if (law == LawId::MAXIMALS_JOIN) {
                if (t.join(ms[i], ms[j]) != x) return k.fail("y v z != x at " + to_string(x));
              } else {
                OrdinalVector w = t.meet(ms[i], ms[j]);
                auto a = t.lower_covers(ms[i]), b = t.lower_covers(ms[j]);
                if (std::find(a.begin(), a.end(), w) == a.end() || std::find(b.begin(), b.end(), w) == b.end())
                  return k.fail("y ^ z not maximal at " + to_string(x));
              }
            }
        }
      };
    case LawId::RESIDUE_UNIQUE_MAXIMAL:
    case LawId::RESIDUE_MU_BELOW_MAXIMAL:
    case LawId::RESIDUE_NO_OUTCAST:
    case LawId::RESIDUE_NOT_DOMINATED:
    case LawId::MAXIMAL_FORMULA:
      return [law](const Testbed& t, const V& box, Coord bound, TbCheck& k) {
        for (const auto& x : box) {
          auto ms = t.lower_covers(x);
          for (std::size_t i = 0; i < ms.size(); ++i) {
            ++k.checked;
            OrdinalVector r = t.co_heyting_sub(x, ms[i]);
            std::string at = " at " + to_string(x) + ", m = " + to_string(ms[i]);
            switch (law) {
              case LawId::RESIDUE_UNIQUE_MAXIMAL:
                if (t.lower_covers(r).size() != 1) return k.fail("|M(x - m)| != 1" + at);
                break;
              case LawId::RESIDUE_MU_BELOW_MAXIMAL:
                if (!t.leq(t.mu(r), ms[i])) return k.fail("mu(x - m) not below m" + at);
                break;
              case LawId::RESIDUE_NO_OUTCAST:
                if (has_bounded_outcast(t, r, bound + 1)) return k.fail("x - m has an outcast" + at);
                break;
              case LawId::RESIDUE_NOT_DOMINATED:
              case LawId::MAXIMAL_FORMULA: {
                OrdinalVector others = t.bottom();
                for (std::size_t j = 0; j < ms.size(); ++j)
                  if (j != i) others = t.join(others, t.co_heyting_sub(x, ms[j]));
                if (law == LawId::RESIDUE_NOT_DOMINATED && t.leq(r, others))
                  return k.fail("x - m below the other residues" + at);
                if (law == LawId::MAXIMAL_FORMULA && t.join(t.mu(x), others) != ms[i])
                  return k.fail("m != mu(x) v other residues" + at);
                break;
              }
              default: break;
            }
          }
        }
      };
    case LawId::SURFACE_TREE:
      return [](const Testbed& t, const V& box, Coord, TbCheck& k) {
        for (const auto& x : box) {
          OrdinalVector mx = t.mu(x), bd = t.boundary(x);
          auto rs = residue_list(t, x);
          for (const auto& m : t.lower_covers(mx)) {
            ++k.checked;
            OrdinalVector s = t.co_heyting_sub(mx, m);
            if (!t.leq(s, bd)) return k.fail("mu(x) - m not below the boundary at " + to_string(x));
            if (std::none_of(rs.begin(), rs.end(), [&](const OrdinalVector& r) { return t.leq(s, r); }))
              return k.fail("mu(x) - m below no residue at " + to_string(x));
          }
        }
      };
    case LawId::OUTCAST_TRICHOTOMY:
      return [](const Testbed& t, const V& box, Coord bound, TbCheck& k) {
        for (const auto& x : box) {
          ++k.checked;
          auto out = bounded_outcasts(t, x, bound + 1);
          OrdinalVector bd = t.boundary(x);
          bool a = !out.empty(), b = !t.leq(t.core(x), bd), c = t.lt(bd, x);
          if (a != b || b != c) return k.fail("trichotomy fails at " + to_string(x));
          for (const auto& z : out)
            if (!t.leq(bd, z)) return k.fail("outcast " + to_string(z) + " not above the boundary");
          for (const auto& z : t.box(bound + 1))
            if (t.lt(z, x) && t.leq(bd, z) && std::find(out.begin(), out.end(), z) == out.end())
              return k.fail(to_string(z) + " above the boundary but not an outcast");
        }
      };
    case LawId::STRATA_RANKED:
    case LawId::STRATUM_ANTICHAIN:
    case LawId::STRATA_PARTITION:
      return [law](const Testbed& t, const V& box, Coord bound, TbCheck& k) {
        for (const auto& x : box) {
          ++k.checked;
          std::vector<std::pair<OrdinalVector, std::size_t>> delta;
          std::set<OrdinalVector> seen;
          for (std::size_t a = 0; a <= bound; ++a) {
            auto s = t.stratum(x, a);
            if (law == LawId::STRATA_PARTITION && join_of(t, s) != t.boundary(t.iterate(x, a)))
              return k.fail("stratum " + std::to_string(a) + " does not join to the boundary at " + to_string(x));
            for (const auto& v : s) {
              if (!seen.insert(v).second && law == LawId::STRATA_PARTITION)
                return k.fail("strata overlap at " + to_string(x));
              if (t.rho(x, v) != a) return k.fail("rho disagrees with the stratum index at " + to_string(x));
              delta.emplace_back(v, a);
            }
            if (law == LawId::STRATUM_ANTICHAIN)
              for (const auto& u : s)
                for (const auto& v : s)
                  if (u != v && t.leq(u, v)) return k.fail("comparable stratum members at " + to_string(x));
          }
          if (law == LawId::STRATA_RANKED)
            for (const auto& [s, rs] : delta)
              for (const auto& [u, ru] : delta)
                if (t.lt(s, u) && rs <= ru) return k.fail("rank not decreasing at " + to_string(x));
        }
      };
    case LawId::DELTA_EQUALS_DELTA_PLUS:
      return [](const Testbed& t, const V& box, Coord, TbCheck& k) {
        for (const auto& x : box) {
          for (const auto& s : box) {
            ++k.checked;
            bool in_delta = t.rho(x, s).has_value();
            // Definition of I(L) checked on the box rather than by closed form.
            auto ms = t.lower_covers(s);
            bool coirr = ms.size() == 1;
            if (coirr) {
              OrdinalVector ms0 = t.mu(s);
              for (const auto& z : box)
                if (t.lt(z, s) && !t.leq(z, ms0)) coirr = false;
            }
            bool in_plus = coirr && t.leq(s, x) && !t.leq(s, t.core(x));
            if (in_delta != in_plus) return k.fail("delta and delta+ differ at " + to_string(x) + ", " + to_string(s));
          }
        }
      };
    case LawId::MAXIMALS_SUBADDITIVE:
    case LawId::MU_JOIN_HOM:
    case LawId::CORE_JOIN_HOM:
    case LawId::K_LOWER_SEMILATTICE:
      return [law](const Testbed& t, const V& box, Coord, TbCheck& k) {
        for (const auto& x : box)
          for (const auto& z : box) {
            ++k.checked;
            OrdinalVector j = t.join(x, z);
            std::string at = " at " + to_string(x) + ", " + to_string(z);
            if (law == LawId::MAXIMALS_SUBADDITIVE &&
                t.lower_covers(j).size() > t.lower_covers(x).size() + t.lower_covers(z).size())
              return k.fail("|M(x v z)| too large" + at);
            if (law == LawId::MU_JOIN_HOM && t.mu(j) != t.join(t.mu(x), t.mu(z)))
              return k.fail("mu(x v z) != mu(x) v mu(z)" + at);
            if (law == LawId::CORE_JOIN_HOM && t.core(j) != t.join(t.core(x), t.core(z)))
              return k.fail("c(x v z) != c(x) v c(z)" + at);
            if (law == LawId::K_LOWER_SEMILATTICE && t.dually_compact(x) && t.dually_compact(z) &&
                !t.dually_compact(t.meet(x, z)))
              return k.fail("meet of dually compact elements not dually compact" + at);
          }
      };
    case LawId::SUBELEMENT_DECOMP:
      return [](const Testbed& t, const V& box, Coord bound, TbCheck& k) {
        for (const auto& x : box)
          for (const auto& z : box) {
            if (!t.leq(z, x)) continue;
            ++k.checked;
            OrdinalVector acc = t.meet(z, t.core(x));
            for (std::size_t a = 0; a <= bound; ++a)
              for (const auto& s : t.stratum(x, a))
                if (t.leq(s, z)) acc = t.join(acc, s);
            if (acc != z) return k.fail("decomposition fails at " + to_string(x) + ", " + to_string(z));
          }
      };
    case LawId::MU_MONOTONE:
      return [](const Testbed& t, const V& box, Coord, TbCheck& k) {
        for (const auto& x : box)
          for (const auto& z : box) {
            if (!t.leq(z, x)) continue;
            ++k.checked;
            if (!t.leq(t.mu(z), t.mu(x))) return k.fail("mu not monotone at " + to_string(x) + ", " + to_string(z));
          }
      };
    case LawId::CORE_UNION:
      return [](const Testbed& t, const V& box, Coord, TbCheck& k) {
        for (const auto& x : box) {
          ++k.checked;
          OrdinalVector acc = t.bottom();
          for (const auto& y : box)
            if (t.leq(y, x) && t.lower_covers(y).empty()) acc = t.join(acc, y);
          if (acc != t.core(x)) return k.fail("core is not the join of T_0 below " + to_string(x));
        }
      };
    case LawId::CORE_DECOMP:
      return [](const Testbed& t, const V& box, Coord, TbCheck& k) {
        std::vector<OrdinalVector> t0;
        for (const auto& y : box)
          if (t.lower_covers(y).empty()) t0.push_back(y);
        for (const auto& x : box)
          for (const auto& z : box)
            for (const auto& y : t0) {
              if (!t.leq(y, t.join(x, z))) continue;
              ++k.checked;
              if (t.join(t.core(t.meet(x, y)), t.core(t.meet(z, y))) != y)
                return k.fail("decomposition fails at " + to_string(x) + ", " + to_string(z));
            }
      };
    case LawId::X_MINUS_BOUNDARY_T0:
      return [](const Testbed& t, const V& box, Coord, TbCheck& k) {
        for (const auto& x : box) {
          ++k.checked;
          OrdinalVector d = t.co_heyting_sub(x, t.boundary(x));
          if (!t.lower_covers(d).empty() || !t.leq(d, t.core(x)))
            return k.fail("x - boundary(x) fails at " + to_string(x));
        }
      };
    case LawId::MAXIMALS_DUALLY_COMPACT:
      return [](const Testbed& t, const V& box, Coord bound, TbCheck& k) {
        for (const auto& x : box) {
          if (!dually_compact_oracle(t, x, bound)) continue;
          for (const auto& m : t.lower_covers(x)) {
            ++k.checked;
            if (!dually_compact_oracle(t, m, bound + 1))
              return k.fail("maximal subelement " + to_string(m) + " of " + to_string(x) + " not dually compact");
          }
        }
      };
    default:
      return std::nullopt;
  }
}

}  // namespace

LawReport run_law(const Testbed& t, LawId law, std::size_t bound) {
  LawReport r;
  r.law = law;
  r.instance = "testbed:I=" + std::to_string(t.dims()) + ",B=" + std::to_string(bound);
  auto checker = testbed_checker(law);
  if (!checker) {
    r.verdict = Verdict::Skipped;
    r.detail = "no bounded checker on the testbed";
    return r;
  }
  auto start = std::chrono::steady_clock::now();
  TbCheck k;
  const Coord b = static_cast<Coord>(bound);
  try {
    (*checker)(t, t.box(b), b, k);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BudgetExceeded) throw;
    k.fail(std::string("operation raised ") + e.what());
  }
  r.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
  r.checked = k.checked;
  r.exhaustive = false;
  r.coverage = "box {0.." + std::to_string(bound) + ", inf}^" + std::to_string(t.dims());
  if (k.failed) {
    r.verdict = Verdict::Fail;
    r.detail = std::move(k.detail);
  }
  return r;
}

}  // namespace residua
