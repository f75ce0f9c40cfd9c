#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "residua/element_set.hpp"
#include "residua/io.hpp"
#include "residua/lattice.hpp"

namespace residua {

/// Topology on {0, ..., n-1} generated by a subbase.
///
/// A finite topology is determined by the smallest open neighbourhood U_p of
/// each point (the intersection of the subbasic sets containing p): a set is
/// open iff it contains U_p for each of its points. Open families are only
/// enumerated on request, since a discrete space on n points has 2^n opens.
class FiniteTopology {
 public:
  FiniteTopology() = default;

  static FiniteTopology from_subbase(std::size_t n, std::vector<ElementSet> subbase);
  static FiniteTopology discrete(std::size_t n);
  static FiniteTopology indiscrete(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  const std::vector<ElementSet>& subbase() const noexcept { return subbase_; }
  const ElementSet& neighborhood(Elem p) const { return nbhd_.at(p); }

  bool is_open(const ElementSet& s) const;
  bool is_closed(const ElementSet& s) const { return is_open(s.complement()); }
  bool is_discrete() const;
  /// Singletons closed. On a finite space this coincides with discreteness.
  bool is_t1() const;

  /// Every open set, canonically sorted. Throws Error(TooLarge) past `max_points`.
  std::vector<ElementSet> opens(std::size_t max_points = 20) const;
  /// 2^n for discrete spaces, enumeration otherwise.
  std::size_t open_count() const;

  /// {x in s : some open meets s exactly in {x}}.
  ElementSet isolated_points(const ElementSet& s) const;

 private:
  std::size_t n_ = 0;
  std::vector<ElementSet> subbase_;
  std::vector<ElementSet> nbhd_;
};

/// Open family generated from the subbase by finite intersections and
/// unions, computed naively. Independent reference for small spaces.
std::vector<ElementSet> brute_force_opens(std::size_t n, const std::vector<ElementSet>& subbase);

struct CBSequence {
  /// S_0, S_1, ..., S_rank with S_rank = S_{rank+1}.
  std::vector<ElementSet> levels;
  std::size_t rank = 0;
};

CBSequence cb_sequence(const FiniteTopology& t, const ElementSet& s0);
/// Greatest a with p in S_a.
std::size_t cb_level(const CBSequence& cb, Elem p);

/// {"points": n, "subbase": [[indices], ...]}. Throws Error(ParseError).
FiniteTopology topology_from_json(const Json& j);
Json topology_to_json(const FiniteTopology& t);
/// {"levels": [[indices], ...], "rank": k}.
Json cb_to_json(const CBSequence& cb);

/// Subbase {down(x)} and their complements for every x (all elements of a
/// finite lattice are dually compact).
FiniteTopology dual_lawson(const FiniteLattice& l);

struct Clause {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct ConditionReport {
  bool vacuous = false;
  std::string note;
  std::vector<Clause> clauses;

  bool all_pass() const;
  const Clause* find(const std::string& name) const;
};

Json condition_report_to_json(const ConditionReport& r);

/// (i) monotone nets converge to their joins/meets (finite nets are
/// eventually constant, so this reduces to pairs), (ii) join is continuous,
/// (iii) the order is closed in the product.
ConditionReport check_order_compatible(const FiniteLattice& l, const FiniteTopology& t);

struct ClosedSetComparison {
  ElementSet set;
  ElementSet mu;
  ElementSet derived;
};

struct CBResidualReport {
  std::vector<ClosedSetComparison> rows;
  bool all_equal = true;
};

/// Lattice of closed sets ordered by inclusion.
FiniteLattice closed_set_lattice(const FiniteTopology& t, std::vector<ElementSet>* sets = nullptr);

/// Compares mu(S) in the closed-set lattice with the CB derivative S' for
/// every closed S. Throws Error(NotT1).
CBResidualReport residual_equals_cb_closedsets(const FiniteTopology& t);

bool is_convex(const FiniteLattice& l, const ElementSet& s);
/// First subbasic set of the dual Lawson topology that is not order-convex.
std::optional<ElementSet> convexity_scan(const FiniteLattice& l);

/// Indices of a subfamily of `cover` covering `target`, or nullopt.
std::optional<std::vector<std::size_t>> finite_subcover(const ElementSet& target,
                                                        const std::vector<ElementSet>& cover);

/// The smallest open set o around x has c(z) = c(x) for z in o outside down(x).
ConditionReport check_locally_constant_core(const FiniteLattice& l, const FiniteTopology& t, Elem x);

/// Clauses of the isolation-from-below propositions on a finite carrier.
/// `samples` lists the subsets P of the candidate set to test; when empty,
/// all subsets are used. Throws Error(PreconditionFailed) unless x is in
/// S_1 minus S_2 and either lies in T_0 or has an outcast.
ConditionReport check_isolated_below_conditions(const FiniteLattice& l, const FiniteTopology& t,
                                                Elem x, const ElementSet& p_star,
                                                std::vector<ElementSet> samples = {});

}  // namespace residua
