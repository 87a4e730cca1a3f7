#include "rexcgt/gameprops.hpp"

#include <unordered_map>

#include "rexcgt/errors.hpp"
#include "rexcgt/order.hpp"

namespace rexcgt {

namespace {

std::uint64_t pair_key(Game a, Game b) { return (std::uint64_t{a.id()} << 32) | b.id(); }

struct PropMemo {
  std::unordered_map<std::uint64_t, bool> first;   // Left to move in dual(G) + H
  std::unordered_map<std::uint64_t, bool> second;  // Right to move
  std::unordered_map<std::uint32_t, bool> local_premotive;
  std::unordered_map<std::uint32_t, bool> local_sam;
};

PropMemo& memo() {
  thread_local PropMemo m;
  return m;
}

bool cmp_second(Game g, Game h);

bool cmp_first(Game g, Game h) {
  auto key = pair_key(g, h);
  if (auto it = memo().first.find(key); it != memo().first.end()) return it->second;
  charge();
  bool r = false;
  if (g.is_atomic() && h.is_atomic()) {
    r = g.over()->leq(g.value(), h.value());
  } else {
    if (!g.is_atomic())
      for (Game x : g.right())
        if (cmp_second(x, h)) {
          r = true;
          break;
        }
    if (!r && !h.is_atomic())
      for (Game y : h.left())
        if (cmp_second(g, y)) {
          r = true;
          break;
        }
  }
  memo().first.emplace(key, r);
  return r;
}

bool cmp_second(Game g, Game h) {
  auto key = pair_key(g, h);
  if (auto it = memo().second.find(key); it != memo().second.end()) return it->second;
  charge();
  bool r = true;
  if (g.is_atomic() && h.is_atomic()) {
    r = g.over()->leq(g.value(), h.value());
  } else {
    if (!g.is_atomic())
      for (Game x : g.left())
        if (!cmp_first(x, h)) {
          r = false;
          break;
        }
    if (r && !h.is_atomic())
      for (Game y : h.right())
        if (!cmp_first(g, y)) {
          r = false;
          break;
        }
  }
  memo().second.emplace(key, r);
  return r;
}

template <class Pred>
std::optional<Game> first_failure(Game g, Pred local) {
  for (Game f : followers(g, true))
    if (!local(f)) return f;
  return std::nullopt;
}

}  // namespace

bool is_locally_premotive(Game g) {
  auto& table = memo().local_premotive;
  if (auto it = table.find(g.id()); it != table.end()) return it->second;
  bool r = cmp_first(g, g);
  memo().local_premotive.emplace(g.id(), r);
  return r;
}

bool is_premotive(Game g) { return !first_failure(g, is_locally_premotive); }

bool is_locally_star_antimonotone(Game g) {
  if (g.is_atomic()) return true;
  auto& table = memo().local_sam;
  if (auto it = table.find(g.id()); it != table.end()) return it->second;
  bool r = true;
  for (Game x : g.left())
    if (!leq_intrinsic(sum(x, star()), g)) {
      r = false;
      break;
    }
  if (r)
    for (Game x : g.right())
      if (!leq_intrinsic(g, sum(x, star()))) {
        r = false;
        break;
      }
  memo().local_sam.emplace(g.id(), r);
  return r;
}

bool is_star_antimonotone(Game g) { return !first_failure(g, is_locally_star_antimonotone); }

bool lookahead_holds(Game g) {
  if (g.parity() != Parity::Even) return true;
  return outcome(g).cls() != OutcomeClass::P;
}

PropertyReport analyze(Game g) {
  PropertyReport r;
  r.parity = g.parity();
  auto premotive_fail = first_failure(g, is_locally_premotive);
  auto sam_fail = first_failure(g, is_locally_star_antimonotone);
  r.premotive = !premotive_fail;
  r.star_antimonotone = !sam_fail;
  r.failing_follower = premotive_fail ? premotive_fail : sam_fail;
  return r;
}

std::string format_report(const PropertyReport& r) {
  std::string s;
  s += "parity: " + std::string(to_string(r.parity)) + "\n";
  s += "premotive: " + std::string(r.premotive ? "true" : "false") + "\n";
  s += "star_antimonotone: " + std::string(r.star_antimonotone ? "true" : "false") + "\n";
  s += "failing_follower: " + (r.failing_follower ? serialize(*r.failing_follower) : "none") + "\n";
  return s;
}

void clear_property_memos() {
  auto& m = memo();
  m.first.clear();
  m.second.clear();
  m.local_premotive.clear();
  m.local_sam.clear();
}

}  // namespace rexcgt
