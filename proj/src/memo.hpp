#pragma once

#include <optional>
#include <string>

#include "lattice_cache.hpp"

namespace k3acm::detail {

inline std::optional<ThreeValued> memo_get(const LatticeSpec& lat, const std::string& key) {
  auto& cache = lat.cache();
  std::lock_guard<std::mutex> lock(cache.mu);
  auto it = cache.predicate_memo.find(key);
  if (it == cache.predicate_memo.end()) return std::nullopt;
  return it->second;
}

inline void memo_put(const LatticeSpec& lat, const std::string& key, const ThreeValued& v) {
  auto& cache = lat.cache();
  std::lock_guard<std::mutex> lock(cache.mu);
  cache.predicate_memo.emplace(key, v);
}

}  // namespace k3acm::detail
