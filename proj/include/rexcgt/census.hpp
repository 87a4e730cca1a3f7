#pragma once

// Classification of the premotive, *-antimonotone game forms over a poset.
//
// Both properties are hereditary, so every qualifying form of depth d has
// qualifying options of depth < d. Up to `exhaustive_depth` the census
// builds composites from every qualifying form found so far, which is
// exact. Above it, options are drawn from one representative per
// equivalence class.

#include <cstddef>
#include <vector>

#include "rexcgt/gameform.hpp"

namespace rexcgt {

// Premotive and *-antimonotone.
bool qualifies(Game g);

struct CensusClass {
  Game representative;  // first member found
  Game canonical;
  std::size_t members = 0;
};

struct CensusResult {
  std::vector<CensusClass> classes;  // sorted by canonical serialization
  std::vector<Game> qualifying;      // every qualifying form visited
  std::size_t candidates = 0;
};

// Throws BudgetExceeded if an option pool has more than 20 forms of one parity.
CensusResult distinct_games(const PosetRef& over, int max_depth, int exhaustive_depth = 2);

}  // namespace rexcgt
