#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "k3acm/lattice.hpp"

namespace k3acm {

using Json = nlohmann::json;

// Integers become JSON numbers when they fit in 64 bits, decimal strings otherwise.
Json to_json(const Int& x);
Json to_json(const DivisorClass& d);
Json to_json(const IntMatrix& m);
// Accepts a JSON integer or a decimal string; `where` names the entry in diagnostics.
Int int_from_json(const Json& j, const std::string& where);

// Lattice file: {"name", "basis", "gram", "ample_ref", "k3"}.
// Throws InputError with a diagnostic naming the offending entry.
LatticeSpec lattice_from_json(const Json& j);
LatticeSpec lattice_from_json_text(std::string_view text);
LatticeSpec load_lattice_file(const std::string& path);
Json lattice_to_json(const LatticeSpec& lat);

}  // namespace k3acm
