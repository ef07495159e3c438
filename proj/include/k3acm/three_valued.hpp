#pragma once

#include <optional>
#include <string>

#include "k3acm/bigint.hpp"

namespace k3acm {

enum class Truth { Yes, No, Unknown };

std::string to_string(Truth t);

// Answer of a partially decidable predicate. An Unknown may carry the
// search bound that would have been needed to settle it.
struct ThreeValued {
  Truth value = Truth::Unknown;
  std::string reason;
  std::optional<Int> bound;

  static ThreeValued yes(std::string reason = {});
  static ThreeValued no(std::string reason = {});
  static ThreeValued unknown(std::string reason, std::optional<Int> bound = std::nullopt);

  bool is_yes() const { return value == Truth::Yes; }
  bool is_no() const { return value == Truth::No; }
  bool is_unknown() const { return value == Truth::Unknown; }
};

}  // namespace k3acm
