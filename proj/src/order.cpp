#include "rexcgt/order.hpp"

#include <unordered_map>

#include "rexcgt/errors.hpp"

namespace rexcgt {

namespace {

std::uint64_t pair_key(Game a, Game b) { return (std::uint64_t{a.id()} << 32) | b.id(); }

struct OrderMemo {
  std::unordered_map<std::uint64_t, bool> leq;
  std::unordered_map<std::uint64_t, bool> tri;
  std::unordered_map<std::uint32_t, std::uint8_t> wins;  // bit 2k: known, bit 2k+1: value
};

OrderMemo& memo() {
  thread_local OrderMemo m;
  return m;
}

bool leq_rec(Game g, Game h);

bool tri_rec(Game g, Game h) {
  auto& table = memo().tri;
  auto key = pair_key(g, h);
  if (auto it = table.find(key); it != table.end()) return it->second;
  charge();
  bool r = false;
  if (!g.is_atomic())
    for (Game x : g.right())
      if (leq_rec(x, h)) {
        r = true;
        break;
      }
  if (!r && !h.is_atomic())
    for (Game y : h.left())
      if (leq_rec(g, y)) {
        r = true;
        break;
      }
  memo().tri.emplace(key, r);
  return r;
}

bool leq_rec(Game g, Game h) {
  auto& table = memo().leq;
  auto key = pair_key(g, h);
  if (auto it = table.find(key); it != table.end()) return it->second;
  charge();
  bool r = true;
  if (g.is_atomic() && h.is_atomic()) r = g.over()->leq(g.value(), h.value());
  if (r && !g.is_atomic())
    for (Game x : g.left())
      if (!tri_rec(x, h)) {
        r = false;
        break;
      }
  if (r && !h.is_atomic())
    for (Game y : h.right())
      if (!tri_rec(g, y)) {
        r = false;
        break;
      }
  memo().leq.emplace(key, r);
  return r;
}

void check_same_poset(Game g, Game h) {
  if (g.over() != h.over())
    throw InputError("cannot compare games over '" + g.over()->name() + "' and '" + h.over()->name() +
                     "'");
}

void check_boolean(Game g) {
  if (g.over() != Poset::boolean())
    throw InputError("expected a game over bool, got one over '" + g.over()->name() + "'");
}

// Flag layout in OrderMemo::wins: index = (mover == Right) * 2 + lastmove.
bool wins_rec(Game g, bool left_moves, bool lastmove) {
  const int slot = (left_moves ? 0 : 2) + (lastmove ? 1 : 0);
  auto& table = memo().wins;
  auto it = table.find(g.id());
  if (it != table.end() && (it->second >> (2 * slot) & 1)) return (it->second >> (2 * slot + 1)) & 1;
  charge();
  bool r;
  if (g.is_atomic()) {
    bool top = g.value() == g.over()->top();
    r = left_moves ? (!lastmove && top) : top;
  } else if (left_moves) {
    r = false;
    for (Game x : g.left())
      if (wins_rec(x, false, lastmove)) {
        r = true;
        break;
      }
  } else {
    r = true;
    for (Game x : g.right())
      if (!wins_rec(x, true, lastmove)) {
        r = false;
        break;
      }
  }
  auto& bits = memo().wins[g.id()];
  bits |= static_cast<std::uint8_t>((1u | (r ? 2u : 0u)) << (2 * slot));
  return r;
}

}  // namespace

bool leq_intrinsic(Game g, Game h) {
  check_same_poset(g, h);
  return leq_rec(g, h);
}

bool tri(Game g, Game h) {
  check_same_poset(g, h);
  return tri_rec(g, h);
}

bool equivalent(Game g, Game h) { return leq_intrinsic(g, h) && leq_intrinsic(h, g); }

Game comparison_game(Game g, Game h) {
  check_same_poset(g, h);
  return map_game(lambda_map(g.over()), sum(dual(g), h));
}

bool left_wins(Game g, Player mover, bool lastmove_required) {
  check_boolean(g);
  return wins_rec(g, mover == Player::Left, lastmove_required);
}

const char* to_string(OutcomeClass c) {
  switch (c) {
    case OutcomeClass::L: return "L";
    case OutcomeClass::N: return "N";
    case OutcomeClass::P: return "P";
    case OutcomeClass::R: return "R";
  }
  return "?";
}

OutcomeClass Outcome::cls() const {
  if (left_first) return right_first ? OutcomeClass::L : OutcomeClass::N;
  return right_first ? OutcomeClass::P : OutcomeClass::R;
}

Outcome outcome(Game g) {
  return Outcome{left_wins(g, Player::Left), left_wins(g, Player::Right)};
}

Outcome make_outcome(OutcomeClass c) {
  return Outcome{c == OutcomeClass::L || c == OutcomeClass::N,
                 c == OutcomeClass::L || c == OutcomeClass::P};
}

bool outcome_leq(Outcome a, Outcome b) {
  return (!a.left_first || b.left_first) && (!a.right_first || b.right_first);
}

PosetRef outcome_poset() {
  static const PosetRef p = Poset::make("outcomes", {"L", "N", "P", "R"},
                                        {{"R", "N"}, {"R", "P"}, {"N", "L"}, {"P", "L"}});
  return p;
}

void clear_order_memos() {
  auto& m = memo();
  m.leq.clear();
  m.tri.clear();
  m.wins.clear();
}

}  // namespace rexcgt
