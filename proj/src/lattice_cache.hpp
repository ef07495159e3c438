#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "k3acm/lattice.hpp"
#include "k3acm/three_valued.hpp"

namespace k3acm::detail {

// Irreducible (-2)-classes, ordered by degree against the ample reference,
// complete for every degree up to `complete_through`.
struct CurveCatalogue {
  bool initialized = false;
  Int complete_through = 0;
  Int min_degree = 1;  // smallest positive degree against ample_ref
  std::vector<DivisorClass> curves;
  std::vector<Int> degrees;
  // 64-bit mirrors, valid when `small` holds.
  bool small = false;
  std::vector<int64_t> ref_row;                  // G * ample_ref
  std::vector<std::vector<int64_t>> coords;      // curve coordinates
  std::vector<std::vector<int64_t>> rows;        // G * curve
  std::vector<int64_t> small_degrees;
};

struct LatticeCache {
  std::mutex mu;
  std::shared_ptr<const CurveCatalogue> curves = std::make_shared<CurveCatalogue>();
  std::map<std::string, ThreeValued> predicate_memo;
};

}  // namespace k3acm::detail
