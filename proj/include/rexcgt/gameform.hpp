#pragma once

// Game forms over a poset: atoms [a] and composites {L | R} with nonempty
// option sets. Nodes are hash-consed and never freed, so a Game is a cheap
// handle and handle equality is structural equality.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "rexcgt/poset.hpp"

namespace rexcgt {

enum class Parity { Even, Odd, None };
const char* to_string(Parity p);

struct GameNode;

class Game {
 public:
  Game() = default;

  static Game atom(const PosetRef& over, Element value);
  static Game atom(const PosetRef& over, std::string_view name);
  // Options are deduplicated and stored in a canonical order. Throws
  // InputError if a side is empty or the options live over different posets.
  static Game composite(std::vector<Game> left, std::vector<Game> right);

  bool is_atomic() const;
  Element value() const;  // atoms only
  const PosetRef& over() const;
  const std::vector<Game>& left() const;
  const std::vector<Game>& right() const;

  std::uint32_t id() const;
  std::uint64_t fingerprint() const;
  Parity parity() const;
  std::uint32_t depth() const;

  explicit operator bool() const { return node_ != nullptr; }
  friend bool operator==(Game a, Game b) { return a.node_ == b.node_; }
  friend bool operator!=(Game a, Game b) { return a.node_ != b.node_; }

 private:
  explicit Game(const GameNode* n) : node_(n) {}
  friend struct GameNode;
  friend class GameTable;
  const GameNode* node_ = nullptr;
};

// Deterministic total order on structures (independent of construction
// order and thread interleaving). Used for option storage.
bool structural_less(Game a, Game b);

// The unique atom over the unit poset, and * = {0|0}.
Game zero();
Game star();
// {{bot|x} | {x|top}}
Game atomize(const PosetRef& over, Element x);
// {bot|k} and {k|top}, the shapes a bypass leaves behind for atomic k.
Game lower_simple(const PosetRef& over, Element k);
Game upper_simple(const PosetRef& over, Element k);

Game sum(Game g, Game h);
Game map_game(const MonotoneMap& phi, Game g);
Game dual(Game g);

// Reflexive-transitive closure of the option relation, each game once.
// Pre-order puts g first; post-order lists every game after its options.
std::vector<Game> followers(Game g, bool postorder = false);
std::size_t follower_count(Game g);

// Options are printed sorted by their own serialization.
std::string serialize(Game g);
Game parse_game(std::string_view text, const PosetRef& over);

// Number of interned nodes so far (diagnostics).
std::size_t interned_game_count();

}  // namespace rexcgt

template <>
struct std::hash<rexcgt::Game> {
  std::size_t operator()(rexcgt::Game g) const noexcept { return g.id(); }
};
