#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "residua/io.hpp"
#include "residua/lattice.hpp"
#include "residua/topology.hpp"

namespace residua {

/// Largest lattice any generator will build.
inline constexpr std::size_t kGeneratorCap = 4096;

/// Finite group given by its multiplication table.
struct CayleyTable {
  std::size_t order = 0;
  Elem identity = 0;
  /// table[a][b] = a * b.
  std::vector<std::vector<Elem>> table;
  std::vector<std::string> names;
};

/// Throws Error(InvalidGroup) unless the table is a group of order 1..64.
void validate_group(const CayleyTable& g);

/// {"order": n, "identity": e, "table": [[...]], "names": [...]}; names optional.
CayleyTable cayley_from_json(const Json& j);
Json cayley_to_json(const CayleyTable& g);

/// Z/n under addition.
CayleyTable cyclic_group(std::size_t n);

/// Directory holding the group catalog. RESIDUA_DATA_DIR in the environment
/// overrides the build-time location.
std::string data_dir();
/// Non-cyclic catalog groups stored as data files.
std::vector<std::string> catalog_names();
/// "Z<n>" or a catalog name. Throws Error(InvalidGroup) for unknown names.
CayleyTable load_group(const std::string& name);

FiniteLattice chain_lattice(std::size_t k);
FiniteLattice boolean_lattice(std::size_t k);
FiniteLattice divisor_lattice(std::uint64_t n);
FiniteLattice product_lattice(const FiniteLattice& a, const FiniteLattice& b);
/// Down-sets of `p` ordered by inclusion.
FiniteLattice downset_lattice(const FinitePoset& p);
/// Number of down-sets, counted without building the lattice. Stops at `cap` + 1.
std::size_t count_downsets(const FinitePoset& p, std::size_t cap = kGeneratorCap);

/// Seeded random poset, grown while its down-set lattice stays within
/// `target_size`. Deterministic per seed.
FinitePoset random_poset(std::uint64_t seed, std::size_t target_size);
FiniteLattice random_distributive(std::uint64_t seed, std::size_t target_size);

struct SubgroupLattice {
  FiniteLattice lattice;
  /// Subgroup of each lattice element.
  std::vector<ElementSet> subgroups;
};

SubgroupLattice subgroup_lattice(const CayleyTable& g);
/// Subgroup generated by `s`.
ElementSet subgroup_closure(const CayleyTable& g, const ElementSet& s);

struct FrattiniResult {
  /// Intersection of the maximal subgroups found by inclusion scan.
  ElementSet direct;
  /// mu(top) in the subgroup lattice.
  ElementSet via_mu;
  std::vector<ElementSet> maximal;
  bool agree = false;
};

FrattiniResult frattini(const CayleyTable& g);

/// Ideals dZ/n for d | n, ordered by inclusion. Element names are "(d)".
FiniteLattice ideal_lattice_zn(std::uint64_t n);

struct JacobsonResult {
  /// Generator d of mu(R) = dZ/n.
  std::uint64_t via_mu = 0;
  /// rad(n).
  std::uint64_t via_rad = 0;
  bool agree = false;
};

/// Throws Error(PreconditionFailed) outside 2..10^6.
JacobsonResult jacobson_zn(std::uint64_t n);

/// Product of the distinct primes dividing n.
std::uint64_t radical(std::uint64_t n);

struct Generated {
  FiniteLattice lattice;
  std::string provenance;
};

/// Builds a lattice from a spec string:
///   chain:K  boolean:K  divisor:N  ideals:N  random:seed=S,size=N
///   product:(SPEC)x(SPEC)  downset:POSET.json  subgroup:NAME|CAYLEY.json
///   closed:TOPOLOGY.json
/// Throws Error(ParseError), Error(TooLarge) past kGeneratorCap, Error(InvalidGroup).
Generated generate(const std::string& spec);

}  // namespace residua
