#pragma once

// Generators of game forms for exhaustive and randomized testing.

#include <cstddef>
#include <random>
#include <vector>

#include "rexcgt/gameform.hpp"

namespace rexcgt {

// Every game form over `over` of depth <= max_depth whose option sets have
// between 1 and max_width elements. Atoms come first, then games in order
// of increasing depth; each structure appears once.
std::vector<Game> enumerate_forms(const PosetRef& over, int max_depth, int max_width);

// All nonempty subsets of `items` with at most `max_width` elements, in a
// fixed order (by size, then lexicographically by index).
std::vector<std::vector<Game>> option_subsets(const std::vector<Game>& items, int max_width);

// A random game form of depth <= max_depth with 1..max_width options per
// side. Atoms are drawn uniformly; composites are chosen with probability
// `composite_bias` while depth remains.
Game random_form(const PosetRef& over, std::mt19937_64& rng, int max_depth, int max_width,
                 double composite_bias = 0.7);

}  // namespace rexcgt
