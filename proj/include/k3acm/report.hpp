#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "k3acm/lattice.hpp"
#include "k3acm/lattice_io.hpp"

namespace k3acm {

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const Json& j);

// FNV-1a 64 of the compact Gram JSON, as 16 hex digits.
std::string gram_hash(const LatticeSpec& lat);

// {"name", "rho", "a", "delta", "gram_hash"}; a and delta are null when the
// lattice is not 2-elementary.
Json lattice_fingerprint(const LatticeSpec& lat);

// True when the lattice is dp9 in its standard basis with the standard ample_ref.
bool is_dp9(const LatticeSpec& lat);

// Loads "builtin:NAME" or a lattice file path.
LatticeSpec load_lattice(const std::string& path);

// Coordinates, a basis label, "ample_ref", or on dp9 one of X, H, D1..D4.
DivisorClass resolve_class(const LatticeSpec& lat, const std::string& text);

Json lattice_info(const LatticeSpec& lat);

struct EnumerateRequest {
  DivisorClass degree_class;
  Int degree;
  std::optional<Int> square_min;
  std::optional<Int> square_max;
};
Json enumerate_payload(const LatticeSpec& lat, const EnumerateRequest& req);

// theorem: "1.1", "3.1", "3.2" or "5.2"; H defaults to 3 ample_ref on dp9, else ample_ref.
// "5.2" adds the dp9 structural case next to the genus-2 verdict and always uses H = 3 ample_ref.
Json classify_payload(const LatticeSpec& lat, const DivisorClass& D, const std::string& theorem,
                      const std::optional<DivisorClass>& H);

struct SuiteOptions {
  Int max_hd = 24;  // prop52: largest H.D scanned
  int n_max = 21;   // thm12: largest rank
};

struct SuiteOutcome {
  bool pass = false;
  Json payload;
};

std::vector<std::string> suite_names();
// Throws InputError for an unknown suite or a lattice the suite cannot run on.
SuiteOutcome run_suite(const LatticeSpec& lat, const std::string& suite, const SuiteOptions& opts);

// Wraps a payload with the command echo, lattice fingerprint and version.
// Timing is included only when given.
Json make_report(const std::string& command, const Json& args, const std::optional<LatticeSpec>& lat,
                 const Json& results, std::optional<int64_t> elapsed_ms);

// Flat "key: value" rendering of a report for terminals.
std::string render_table(const Json& report);

}  // namespace k3acm
