#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "residua/io.hpp"
#include "residua/lattice.hpp"

namespace residua {

class Testbed;

enum class LawId {
  LATTICE_TABLES,
  COHEYTING_JOIN,
  MU_RESIDUE_DECOMP,
  CORE_RESIDUE_DECOMP,
  MAXIMALS_JOIN,
  MAXIMALS_MEET_MAXIMAL,
  RESIDUE_UNIQUE_MAXIMAL,
  RESIDUE_MU_BELOW_MAXIMAL,
  RESIDUE_NO_OUTCAST,
  MAXIMAL_FORMULA,
  SURFACE_TREE,
  OUTCAST_TRICHOTOMY,
  STRATA_RANKED,
  STRATUM_ANTICHAIN,
  RESIDUE_NOT_DOMINATED,
  STRATA_PARTITION,
  DELTA_EQUALS_DELTA_PLUS,
  S0_COMPLETENESS,
  MAXIMALS_SUBADDITIVE,
  SUBELEMENT_DECOMP,
  MU_MONOTONE,
  MU_JOIN_HOM,
  MINMAX_BOUND,
  FINITE_DESCENT,
  CORE_UNION,
  CORE_DECOMP,
  CORE_JOIN_HOM,
  T0_UPPER_SEMILATTICE,
  X_MINUS_BOUNDARY_T0,
  DOWNSET_UPPER_COMPLETE,
  K_LOWER_SEMILATTICE,
  MAXIMALS_DUALLY_COMPACT,
};

inline constexpr std::size_t kLawCount = static_cast<std::size_t>(LawId::MAXIMALS_DUALLY_COMPACT) + 1;

struct LawInfo {
  LawId id;
  std::string_view name;
  std::string_view statement;
  /// Needs a coframe (finite case: a distributive lattice).
  bool needs_coframe;
};

/// One entry per LawId, in enum order.
const std::vector<LawInfo>& law_registry();
std::string_view to_string(LawId id);
std::optional<LawId> law_from_string(std::string_view name);

enum class Verdict { Pass, Fail, Skipped };
std::string_view to_string(Verdict v);

struct Budget {
  /// Subset quantifiers are exhaustive up to this many candidates.
  std::size_t exhaustive_subsets = 24;
  /// Number of random draws once a quantifier is sampled.
  std::size_t samples = 256;
  std::uint64_t seed = 0;
  /// Throw Error(BudgetExceeded) instead of sampling.
  bool strict = false;
};

/// Test hooks that make a checker observe a deliberately wrong operation.
struct Faults {
  /// Receives (lattice, x, z, correct x - z) and returns the value to use.
  std::function<Elem(const FiniteLattice&, Elem, Elem, Elem)> co_heyting;
};

struct LawReport {
  LawId law = LawId::LATTICE_TABLES;
  std::string instance;
  Verdict verdict = Verdict::Pass;
  /// Element tuple replayable through the public operations; Fail only.
  std::vector<Elem> witness;
  std::string detail;
  std::size_t checked = 0;
  bool exhaustive = true;
  std::string coverage;
  std::chrono::microseconds elapsed{0};
};

/// Per-lattice data shared by every checker: M, mu, residues, strata, cores.
/// Built once, then read concurrently.
class LawContext {
 public:
  LawContext(const FiniteLattice& l, Faults faults = {});

  const FiniteLattice& lattice() const { return l_; }
  Elem sub(Elem x, Elem z) const;
  const ElementSet& maximal(Elem x) const { return maximal_[x]; }
  Elem mu(Elem x) const { return mu_[x]; }
  Elem core(Elem x) const { return core_[x]; }
  Elem boundary(Elem x) const { return boundary_[x]; }
  const std::vector<ElementSet>& strata(Elem x) const { return strata_[x]; }
  const std::vector<Elem>& iterates(Elem x) const { return iterates_[x]; }
  const ElementSet& delta(Elem x) const { return delta_[x]; }
  /// First stratum containing s, or strata(x).size() when s is not in delta(x).
  std::size_t rho(Elem x, Elem s) const;
  const ElementSet& t0() const { return t0_; }
  const ElementSet& coirreducible() const { return coirreducible_; }
  const ElementSet& dually_compact() const { return compact_; }
  ElementSet delta_plus(Elem x) const;

 private:
  const FiniteLattice& l_;
  Faults faults_;
  std::vector<ElementSet> maximal_;
  std::vector<Elem> mu_;
  std::vector<Elem> core_;
  std::vector<Elem> boundary_;
  std::vector<std::vector<ElementSet>> strata_;
  std::vector<std::vector<Elem>> iterates_;
  std::vector<ElementSet> delta_;
  ElementSet t0_;
  ElementSet coirreducible_;
  ElementSet compact_;
};

LawReport run_law(const LawContext& ctx, LawId law, const Budget& budget,
                  const std::string& instance = "");
LawReport run_law(const FiniteLattice& l, LawId law, const Budget& budget = {},
                  const Faults& faults = {}, const std::string& instance = "");

/// Runs `laws` (all registry laws when empty) on up to `jobs` threads.
/// Reports come back in registry order whatever the scheduling.
std::vector<LawReport> run_all(const FiniteLattice& l, const Budget& budget = {},
                               std::size_t jobs = 1, const Faults& faults = {},
                               const std::vector<LawId>& laws = {},
                               const std::string& instance = "");

/// Bounded checks on the ordinal testbed of the given dimension. Laws with
/// no testbed checker report Skipped.
LawReport run_law(const Testbed& t, LawId law, std::size_t bound);

struct ShrinkResult {
  FiniteLattice lattice;
  LawReport report;
  std::size_t removed = 0;
};

/// Repeatedly moves to the smallest failing candidate among single deletions
/// and principal ideals and filters. Candidates must still be lattices.
/// Passing laws come back unchanged.
ShrinkResult shrink(const FiniteLattice& l, LawId law, const Budget& budget = {},
                    const Faults& faults = {});

bool any_failure(const std::vector<LawReport>& reports);
Json report_to_json(const FiniteLattice& l, const LawReport& r, bool with_elapsed = true);

}  // namespace residua
