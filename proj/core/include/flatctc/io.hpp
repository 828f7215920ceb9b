#pragma once

// Text file formats. An isometry is a JSON object
//   {"name": "g1", "linear": [[..],[..],[..]], "translation": [x, y, z]}
// with "name" optional; a group is a JSON array of such objects.

#include <iosfwd>
#include <string>

#include "flatctc/groups.hpp"
#include "flatctc/isometry.hpp"

namespace flatctc {

/// Throws ParseError on malformed text and NotLorentzError when the linear
/// part is not in G.
NamedIsometry parse_isometry(const std::string& text, Admit admit = Admit::IdentityComponent);
/// Accepts an array of isometry objects, or a single object (a cyclic group).
GroupPresentation parse_group(const std::string& text, Admit admit = Admit::IdentityComponent);

NamedIsometry load_isometry(const std::string& path, Admit admit = Admit::IdentityComponent);
GroupPresentation load_group(const std::string& path, Admit admit = Admit::IdentityComponent);

std::string serialize_isometry(const NamedIsometry& g);
std::string serialize_group(const GroupPresentation& group);

/// {"word": [signed one-based indices], "power": n, "displacement": [..], "b": B}
std::string serialize_witness(const CtcWitness& w);

}  // namespace flatctc
