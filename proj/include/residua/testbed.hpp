#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "residua/io.hpp"
#include "residua/residual.hpp"
#include "residua/topology.hpp"

namespace residua {

/// Coordinate of a testbed vector: a natural number or the Inf sentinel.
using Coord = std::uint32_t;
inline constexpr Coord kInf = std::numeric_limits<Coord>::max();

/// Point of C^I where C is the naturals plus Inf in reversed numeric order:
/// x <= y iff x_i >= y_i for every i. Inf is the bottom of each factor.
struct OrdinalVector {
  std::vector<Coord> coords;

  std::size_t dims() const noexcept { return coords.size(); }
  bool is_inf(std::size_t i) const { return coords.at(i) == kInf; }
  std::size_t inf_count() const;
  /// Largest finite coordinate, 0 when there is none.
  Coord max_finite() const;

  friend bool operator==(const OrdinalVector&, const OrdinalVector&) = default;
  friend auto operator<=>(const OrdinalVector&, const OrdinalVector&) = default;
};

/// "3,inf" style.
std::string to_string(const OrdinalVector& v);
/// Throws Error(ParseError), or Error(DimensionMismatch) when `dims` is given
/// and differs.
OrdinalVector parse_vector(std::string_view text, std::optional<std::size_t> dims = std::nullopt);

enum class VecOrder { Below, Above, Equal, Incomparable };
std::string_view to_string(VecOrder o);

/// Throw Error(DimensionMismatch) on vectors of different lengths.
VecOrder vec_order(const OrdinalVector& x, const OrdinalVector& y);
OrdinalVector vec_meet(const OrdinalVector& x, const OrdinalVector& y);
OrdinalVector vec_join(const OrdinalVector& x, const OrdinalVector& y);

/// The lattice L_I = C^I for 1 <= |I| <= 4. Models EffectiveLattice.
class Testbed {
 public:
  using element_type = OrdinalVector;

  /// Throws Error(PreconditionFailed) outside 1..4.
  explicit Testbed(std::size_t dims);

  std::size_t dims() const noexcept { return dims_; }

  bool leq(const OrdinalVector& x, const OrdinalVector& y) const;
  bool lt(const OrdinalVector& x, const OrdinalVector& y) const { return x != y && leq(x, y); }
  OrdinalVector meet(const OrdinalVector& x, const OrdinalVector& y) const { return vec_meet(x, y); }
  OrdinalVector join(const OrdinalVector& x, const OrdinalVector& y) const { return vec_join(x, y); }
  /// epsilon: every coordinate Inf.
  OrdinalVector bottom() const;
  /// Every coordinate 0.
  OrdinalVector top() const;

  /// One finite coordinate incremented; empty exactly at epsilon.
  std::vector<OrdinalVector> lower_covers(const OrdinalVector& x) const;
  /// Inf where z and x agree, x elsewhere. Throws Error(NotBelow) unless z <= x.
  OrdinalVector co_heyting_sub(const OrdinalVector& x, const OrdinalVector& z) const;

  /// Every coordinate finite.
  bool dually_compact(const OrdinalVector& x) const;
  /// Every finite coordinate incremented.
  OrdinalVector mu(const OrdinalVector& x) const;
  /// x^(k): k added to every finite coordinate.
  OrdinalVector iterate(const OrdinalVector& x, std::size_t k) const;
  /// Omega when some coordinate is finite, else 0.
  RankValue rank(const OrdinalVector& x) const;
  /// Always epsilon: the omega-th iterate of any vector.
  OrdinalVector core(const OrdinalVector& x) const;
  /// Join of the residues; x itself, epsilon at epsilon.
  OrdinalVector boundary(const OrdinalVector& x) const;
  /// s_k(x) = {e_j(x_j + k) : x_j finite}, where e_j(v) is v at j and Inf elsewhere.
  std::vector<OrdinalVector> stratum(const OrdinalVector& x, std::size_t k) const;
  /// rho_x(s) for s in delta(x), nullopt otherwise.
  std::optional<std::size_t> rho(const OrdinalVector& x, const OrdinalVector& s) const;
  /// |M(s)| = 1 and every z < s lies below mu(s): exactly the vectors with
  /// one finite coordinate.
  bool completely_coirreducible(const OrdinalVector& s) const;

  /// Relative strata s_k(x, z) = {s in s_k(z) : s not <= x}. Throws
  /// Error(NotBelow) unless x <= z.
  std::vector<OrdinalVector> relative_stratum(const OrdinalVector& x, const OrdinalVector& z,
                                              std::size_t k) const;

  /// All vectors with coordinates in {0..bound, Inf}, in lexicographic order.
  std::vector<OrdinalVector> box(Coord bound) const;

  void check_dims(const OrdinalVector& x) const;

 private:
  std::size_t dims_;
};

/// Outcasts of x found among vectors with coordinates in {0..bound, Inf}.
std::vector<OrdinalVector> bounded_outcasts(const Testbed& t, const OrdinalVector& x, Coord bound);

/// Checks the definition of dual compactness on the filtered families of
/// truncations {x with Inf coordinates replaced by k}, k <= bound: a witness
/// family exists iff some coordinate is Inf. Returns true when no family
/// in the bound refutes compactness.
bool dually_compact_oracle(const Testbed& t, const OrdinalVector& x, Coord bound);

struct CoordConstraint {
  enum class Kind { IsInf, Eq, FinAtLeast, AnyFin, Any };
  Kind kind = Kind::Any;
  Coord k = 0;

  bool contains(Coord c) const;
};

/// Product of per-coordinate constraints.
struct DefinablePattern {
  std::vector<CoordConstraint> coords;

  bool contains(const OrdinalVector& v) const;
};

/// Finite union of patterns; the empty union is the empty set.
struct PatternUnion {
  std::vector<DefinablePattern> parts;

  bool contains(const OrdinalVector& v) const;
};

std::string to_string(const CoordConstraint& c);
std::string to_string(const DefinablePattern& p);
std::string to_string(const PatternUnion& u);

struct TestbedProfile {
  OrdinalVector element;
  std::vector<OrdinalVector> maximal;
  OrdinalVector mu;
  RankValue rank;
  OrdinalVector core;
  std::vector<std::pair<OrdinalVector, OrdinalVector>> residues;
  OrdinalVector boundary;
  /// x^(0), ..., x^(B) checked against the generic engine.
  std::vector<OrdinalVector> iterates;
  /// s_0, ..., s_B.
  std::vector<std::vector<OrdinalVector>> strata;
  /// delta(x) as a union of patterns; rho(s) = s_j - x_j.
  PatternUnion delta;
  bool engine_agrees = true;
};

TestbedProfile testbed_profile(const Testbed& t, const OrdinalVector& x, std::size_t bound);
Json testbed_profile_to_json(const TestbedProfile& p);

enum class Isolation { Isolated, NotIsolated, Unstable };
std::string_view to_string(Isolation i);

struct IsolationSearch {
  bool isolated = false;
  /// Parameters of the smallest basic open around x: down(k) minus the
  /// down-sets of every k' <= bound not above x.
  OrdinalVector k;
  std::size_t excluded = 0;
  /// A second point of that open, when one exists.
  std::optional<OrdinalVector> other;
};

/// Exhaustive search at one bound for a basic open of the dual Lawson
/// topology (parameters coordinatewise <= bound) isolating x within `within`
/// (the whole lattice when null). Throws Error(BoundTooSmall) when
/// bound < max finite coordinate + 2.
IsolationSearch isolation_search(const Testbed& t, const OrdinalVector& x, Coord bound,
                                 const PatternUnion* within = nullptr);

/// isolation_search at B, B+1, B+2, B+3; Unstable when the verdicts differ.
Isolation isolated_oracle(const Testbed& t, const OrdinalVector& x, Coord bound,
                          const PatternUnion* within = nullptr);

struct Characterization {
  /// No outcast and M(x) finite.
  bool literal = false;
  /// Dually compact, no outcast, M(x) finite.
  bool corrected = false;
};

Characterization characterization_predicates(const Testbed& t, const OrdinalVector& x);

/// Number of Inf coordinates.
std::size_t cb_level(const Testbed& t, const OrdinalVector& x);
/// S_a = {#Inf >= a} as a union of patterns; empty past |I|.
PatternUnion cb_level_pattern(const Testbed& t, std::size_t alpha);

struct CBLadderRow {
  std::size_t alpha = 0;
  PatternUnion pattern;
  std::size_t points = 0;
  std::size_t isolated = 0;
  bool matches = true;
  std::string mismatch;
};

/// For each a <= |I|, checks over the box that the points of S_a isolated
/// within S_a (by the subspace oracle) are exactly S_a minus S_{a+1}.
std::vector<CBLadderRow> verify_cb_ladder(const Testbed& t, Coord bound);

/// Clauses (i)-(vi) for x in S_1 minus S_2 and dually compact z above x,
/// plus the converse: every y with x < y <= z and coordinates <= bound is
/// isolated. Throws Error(PreconditionFailed).
ConditionReport check_s1s2_above(const Testbed& t, const OrdinalVector& x, const OrdinalVector& z,
                                 Coord bound);

/// Core constant on the smallest basic open around x, outside down(x),
/// over vectors with coordinates <= bound. Throws Error(PreconditionFailed)
/// unless x is in S_1 minus S_2.
ConditionReport check_locally_constant_core(const Testbed& t, const OrdinalVector& x, Coord bound);

/// On the testbed T_0 = {epsilon}. Vacuous for |I| >= 2, where epsilon is
/// not in S_1 minus S_2; for |I| = 1 the clauses are evaluated. Throws
/// Error(PreconditionFailed) for x other than epsilon.
ConditionReport check_isolated_below_conditions(const Testbed& t, const OrdinalVector& x,
                                                const std::vector<OrdinalVector>& p_star,
                                                Coord bound);

}  // namespace residua
