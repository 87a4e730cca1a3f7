#pragma once

// The intrinsic order on game forms, comparison games, and winning
// strategies for games over the boolean poset.

#include <string>

#include "rexcgt/gameform.hpp"

namespace rexcgt {

enum class Player { Left, Right };

// G <= H and G <| H, decided by their mutual recursion. Results are
// memoized per thread on node identity. Throws InputError if the games
// live over different posets.
bool leq_intrinsic(Game g, Game h);
bool tri(Game g, Game h);
bool equivalent(Game g, Game h);

// map(lambda, dual(G) + H), a game over bool.
Game comparison_game(Game g, Game h);

// Whether Left wins `g` (over bool) when `mover` plays first. With
// `lastmove_required`, Left loses whenever it is her turn at an atom.
bool left_wins(Game g, Player mover, bool lastmove_required = false);

enum class OutcomeClass { L, N, P, R };
const char* to_string(OutcomeClass c);

struct Outcome {
  bool left_first = false;   // o_L: Left wins moving first
  bool right_first = false;  // o_R: Left wins when Right moves first
  OutcomeClass cls() const;
};

Outcome outcome(Game g);
Outcome make_outcome(OutcomeClass c);

// Componentwise order, R < N, P < L.
bool outcome_leq(Outcome a, Outcome b);
PosetRef outcome_poset();

// Drops this thread's memo tables.
void clear_order_memos();

}  // namespace rexcgt
