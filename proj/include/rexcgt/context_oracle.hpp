#pragma once

// Bounded check of the contextual order: G <=_c H iff o(G +_eps X) <=
// o(H +_eps X) for every context X over F(A) = hom(A, bool). Only contexts
// up to the given depth and option-set width are tried, so a "true" verdict
// is evidence, not proof. This is a test oracle; the library decides the
// order intrinsically.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rexcgt/gameform.hpp"

namespace rexcgt {

struct OracleVerdict {
  bool leq = true;
  std::optional<std::string> witness;  // serialized context over F(A), names f0, f1, ...
};

enum class Exec { Serial, Parallel };

class ContextOracle {
 public:
  ContextOracle(PosetRef over, int max_depth, int max_width);

  // Computes outcome profiles of `games` (and their followers) against every
  // context in the universe. Throws BudgetExceeded if contexts x games
  // exceeds the installed budget.
  void evaluate(const std::vector<Game>& games, Exec exec = Exec::Serial);

  // Both games must have been evaluated.
  OracleVerdict leq(Game g, Game h) const;

  std::size_t context_count() const { return total_contexts_; }
  std::size_t distinct_rows() const { return row_context_.size(); }
  std::size_t distinct_profiles() const { return profiles_.size(); }
  const PosetRef& hom_poset() const { return hom_poset_; }

  // Rebuilds context number `index` as a game over F(A).
  Game context_game(std::size_t index) const;

 private:
  struct Layer {
    std::size_t first_index = 0;          // global index of the layer's first context
    std::size_t subset_count = 0;         // option subsets available to this layer
    std::size_t previous_subsets = 0;     // subset_count of the layer below
  };

  PosetRef over_;
  PosetRef hom_poset_;
  std::vector<std::vector<Element>> map_tables_;  // by hom element: A -> bool (0/1)
  int max_depth_;
  int max_width_;
  std::vector<Layer> layers_;
  std::vector<std::vector<std::uint32_t>> subsets_;  // over contexts of layers < max_depth
  std::size_t total_contexts_ = 0;

  std::vector<std::uint32_t> row_context_;        // distinct row -> first context index
  std::unordered_map<std::uint32_t, std::size_t> profile_of_game_;
  std::vector<std::vector<std::uint64_t>> profiles_;  // F bits then S bits over distinct rows

  friend struct OracleKernel;
};

OracleVerdict leq_contextual_oracle(Game g, Game h, int max_depth = 2, int max_width = 2);

}  // namespace rexcgt
