#pragma once

#include <optional>
#include <string>

#include "rexcgt/gameform.hpp"

namespace rexcgt {

// Left wins moving first in map(lambda, dual(G) + G). Decided by direct
// recursion on follower pairs; no comparison game is built.
bool is_locally_premotive(Game g);
// Every follower is locally premotive.
bool is_premotive(Game g);

// G^L + * <= G <= G^R + * at g only, and at every follower.
bool is_locally_star_antimonotone(Game g);
bool is_star_antimonotone(Game g);

// False only for an even game over bool with outcome P.
bool lookahead_holds(Game g);

struct PropertyReport {
  Parity parity = Parity::Even;
  bool premotive = true;
  bool star_antimonotone = true;
  std::optional<Game> failing_follower;
};

PropertyReport analyze(Game g);
std::string format_report(const PropertyReport& r);

void clear_property_memos();

}  // namespace rexcgt
