#pragma once

#include <string>

#include <json.hpp>

#include "residua/lattice.hpp"
#include "residua/residual.hpp"

namespace residua {

using Json = nlohmann::json;

/// {"elements": [...], "relation": [[a, b], ...], "mode": "covers" | "leq"}.
/// Throws Error(ParseError) on malformed documents.
FinitePoset poset_from_json(const Json& j);
FiniteLattice lattice_from_json(const Json& j);
FiniteLattice load_lattice(const std::string& path);

/// Canonical form: elements in index order, Hasse edges sorted, mode "covers".
Json lattice_to_json(const FiniteLattice& l);
std::string dump_canonical(const Json& j);

std::string hasse_dot(const FiniteLattice& l);

Json rank_to_json(const RankValue& r);
Json profile_to_json(const FiniteLattice& l, const ResidualProfile& p);
/// Boundary poset of the profile's element, one cluster per stratum.
std::string boundary_dot(const FiniteLattice& l, const ResidualProfile& p);

std::string read_file(const std::string& path);

}  // namespace residua
