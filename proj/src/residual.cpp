#include "residua/residual.hpp"

#include "residua/error.hpp"

namespace residua {

std::string to_string(const RankValue& r) {
  return r.omega ? std::string("omega") : std::to_string(r.finite);
}

std::string_view to_string(Verification v) {
  switch (v) {
    case Verification::Verified: return "verified";
    case Verification::Violated: return "violated";
    case Verification::NotApplicable: return "not_applicable";
  }
  return "unknown";
}

bool is_join_closed_with_bottom(const FiniteLattice& l, const ElementSet& h) {
  if (!h.contains(l.bottom())) return false;
  for (Elem a : h)
    for (Elem b : h)
      if (b > a && !h.contains(l.join(a, b))) return false;
  return true;
}

Elem residual_derivative(const FiniteLattice& l, Elem x, const ElementSet& h) {
  ElementSet m = l.maximal_subelements(x, h);
  return m.empty() ? x : l.meet_of_set(m);
}

Elem residual_derivative(const FiniteLattice& l, Elem x) {
  return residual_derivative(l, x, l.all());
}

ResidualProfile residual_profile(const FiniteLattice& l, Elem x, const ElementSet& h) {
  ResidualProfile p;
  p.element = x;
  p.family_is_all = h == l.all();
  p.maximal = l.maximal_subelements(x, h);
  p.mu = p.maximal.empty() ? x : l.meet_of_set(p.maximal);
  p.t_class = classify_T(l, x);
  p.delta = l.empty_set();

  Elem cur = x;
  p.iterates.push_back(cur);
  for (;;) {
    ElementSet m = l.maximal_subelements(cur, h);
    if (m.empty()) break;
    ElementSet stratum = l.empty_set();
    for (Elem e : m) stratum.insert(l.co_heyting_sub(cur, e));
    for (Elem s : stratum)
      if (!p.delta.contains(s)) p.rho.emplace(s, p.strata.size());
    p.delta |= stratum;
    p.strata.push_back(std::move(stratum));
    cur = l.meet_of_set(m);
    p.iterates.push_back(cur);
  }
  p.rank = RankValue::of(p.strata.size());
  p.core = cur;

  p.boundary = l.bottom();
  for (Elem m : p.maximal) {
    Elem r = l.co_heyting_sub(x, m);
    p.residues.emplace_back(m, r);
    p.boundary = l.join(p.boundary, r);
  }

  p.core_fixpoint = residual_derivative(l, p.core, h) == p.core ? Verification::Verified
                                                                : Verification::Violated;
  if (l.coframe()) {
    auto verdict = [](bool ok) { return ok ? Verification::Verified : Verification::Violated; };
    if (p.family_is_all) {
      p.core_residue_identity = verdict(l.join(p.core, p.boundary) == x);
      p.delta_plus_identity = verdict(p.delta == delta_plus(l, x));
    } else if (is_join_closed_with_bottom(l, h)) {
      p.core_residue_identity = verdict(l.join(p.mu, p.boundary) == x);
    }
  }
  return p;
}

ResidualProfile residual_profile(const FiniteLattice& l, Elem x) {
  return residual_profile(l, x, l.all());
}

std::vector<ResidualProfile> all_profiles(const FiniteLattice& l) {
  std::vector<ResidualProfile> out;
  out.reserve(l.size());
  for (Elem x = 0; x < l.size(); ++x) out.push_back(residual_profile(l, x));
  return out;
}

Elem core_of(const FiniteLattice& l, Elem x) {
  Elem cur = x;
  for (;;) {
    Elem next = residual_derivative(l, cur);
    if (next == cur) return cur;
    cur = next;
  }
}

ElementSet outcasts(const FiniteLattice& l, Elem x, const ElementSet& h) {
  ElementSet m = l.maximal_subelements(x, h);
  ElementSet cand = l.down_set(x) & h;
  cand.erase(x);
  ElementSet out = l.empty_set();
  for (Elem z : cand)
    if (!l.up_set(z).intersects(m)) out.insert(z);
  return out;
}

ElementSet outcasts(const FiniteLattice& l, Elem x) { return outcasts(l, x, l.all()); }

std::size_t classify_T(const FiniteLattice& l, Elem x) { return l.maximal_subelements(x).count(); }

ElementSet t_class_members(const FiniteLattice& l, std::size_t n) {
  ElementSet out = l.empty_set();
  for (Elem x = 0; x < l.size(); ++x)
    if (classify_T(l, x) == n) out.insert(x);
  return out;
}

ElementSet completely_coirreducibles(const FiniteLattice& l) {
  ElementSet out = l.empty_set();
  for (Elem x = 0; x < l.size(); ++x) {
    ElementSet m = l.maximal_subelements(x);
    if (m.count() != 1) continue;
    ElementSet below = l.down_set(x);
    below.erase(x);
    if (below.is_subset_of(l.down_set(m.first()))) out.insert(x);
  }
  return out;
}

ElementSet delta_plus(const FiniteLattice& l, Elem x) {
  Elem c = core_of(l, x);
  return (completely_coirreducibles(l) & l.down_set(x)) - l.down_set(c);
}

RelativeStrata relative_strata(const FiniteLattice& l, Elem x, Elem z) {
  if (!l.leq(x, z))
    throw Error(ErrorKind::NotBelow, "'" + l.name(x) + "' is not below '" + l.name(z) + "'");
  ResidualProfile pz = residual_profile(l, z);
  RelativeStrata r;
  r.delta = l.empty_set();
  r.rank = pz.rank;
  bool found = false;
  for (std::size_t a = 0; a < pz.strata.size(); ++a) {
    ElementSet s = pz.strata[a] - l.down_set(x);
    if (s.empty() && !found) {
      r.rank = RankValue::of(a);
      found = true;
    }
    r.delta |= s;
    r.strata.push_back(std::move(s));
  }
  return r;
}

}  // namespace residua
