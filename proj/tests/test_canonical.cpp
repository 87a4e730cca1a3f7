#include <doctest.h>

#include <algorithm>
#include <random>

#include "rexcgt/canonical.hpp"
#include "rexcgt/enumerate.hpp"
#include "rexcgt/errors.hpp"
#include "rexcgt/gameprops.hpp"
#include "rexcgt/order.hpp"

using namespace rexcgt;

namespace {

PosetRef B() { return Poset::boolean(); }
Game g_of(const char* s) { return parse_game(s, B()); }

std::vector<Game> premotive_parity_forms() {
  std::vector<Game> out;
  for (Game g : enumerate_forms(B(), 2, 2))
    if (g.parity() != Parity::None && is_premotive(g)) out.push_back(g);
  return out;
}

}  // namespace

TEST_CASE("dominated options") {
  CHECK(remove_dominated(g_of("{bot,top|top}")) == g_of("{top|top}"));
  CHECK(remove_dominated(g_of("{bot|bot,top}")) == g_of("{bot|bot}"));
  // equivalent left options {bot|top} and {bot|top}+*+* style duplicates keep one
  Game x = g_of("{bot|top}");
  Game padded = Game::composite({x, g_of("{{bot|top}|{bot|top}}")}, {g_of("top")});
  CHECK(padded.parity() == Parity::None);
  CHECK_THROWS_AS(remove_dominated(padded), PreconditionError);
  CHECK_THROWS_AS(remove_dominated(g_of("{{bot|bot}|{top|top}}")), PreconditionError);
}

TEST_CASE("gift horses are removed") {
  for (Game g : premotive_parity_forms()) {
    if (g.is_atomic()) continue;
    Game c = canonical_form(g).form;
    if (c.is_atomic()) continue;
    for (Game h : {g_of("bot"), g_of("top")}) {
      if (h.parity() != c.left()[0].parity()) continue;
      bool below = std::any_of(c.left().begin(), c.left().end(), [&](Game l) { return leq_intrinsic(h, l); });
      if (!below) continue;
      std::vector<Game> left = c.left();
      left.push_back(h);
      Game padded = Game::composite(left, c.right());
      if (!is_premotive(padded)) continue;
      CHECK(remove_dominated(padded) == c);
    }
  }
}

TEST_CASE("reversible options") {
  Game a = atomize(B(), B()->top());
  CHECK(bypass_reversible(a) == a);
  auto c = Poset::chain("chain3", {"bot", "mid", "top"});
  auto p = product(c, c);
  (void)p;
  auto diamond = Poset::make("d", {"bot", "a", "b", "top"}, {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}});
  Game g = parse_game("{{bot|a},{bot|b}|{a,b|top}}", diamond);
  REQUIRE(is_premotive(g));
  CHECK(bypass_reversible(g) == g);
  CHECK(canonical_form(g).form == g);
}

TEST_CASE("a non-simple reversible option is bypassed soundly") {
  int bypassed = 0;
  for (Game g : premotive_parity_forms()) {
    Game s = sum(g, star());
    if (s.is_atomic() || s.depth() < 3 || !is_premotive(s)) continue;
    Game b = bypass_reversible(s);
    if (b == s) continue;
    ++bypassed;
    CHECK(equivalent(b, s));
    CHECK(is_premotive(b));
    CHECK(b.parity() == s.parity());
    if (is_star_antimonotone(s)) CHECK(is_star_antimonotone(b));
    if (bypassed > 200) break;
  }
  CHECK(bypassed > 0);
}

TEST_CASE("atomize collapse") {
  CHECK(collapse_atomize(atomize(B(), B()->top())) == g_of("top"));
  Game x = g_of("{{bot|top}|top}");
  CHECK(collapse_atomize(x) == x);
  Game nested = Game::composite({atomize(B(), B()->bottom())}, {g_of("top")});
  CHECK(collapse_atomize(nested) == g_of("{bot|top}"));
}

TEST_CASE("canonical forms") {
  CHECK(canonical_form(sum(star(), star())).form == zero());
  CHECK(canonical_form(g_of("{bot,top|top}")).form == g_of("{top|top}"));
  CHECK_THROWS_AS(canonical_form(g_of("{{bot|bot}|{top|top}}")), PreconditionError);
  CHECK_THROWS_AS(canonical_form(g_of("{bot|{top|top}}")), PreconditionError);
  CHECK(is_canonical(g_of("top")));
  CHECK(is_canonical(g_of("{top|top}")));
  CHECK_FALSE(is_canonical(atomize(B(), B()->bottom())));
  CHECK_FALSE(is_canonical(g_of("{bot,top|top}")));
}

TEST_CASE("canonical form properties over the enumeration") {
  for (Game g : premotive_parity_forms()) {
    auto r = canonical_form(g);
    CHECK(is_canonical(r.form));
    CHECK(equivalent(r.form, g));
    CHECK(canonical_form(r.form).form == r.form);
    CHECK(canonical_form(g, {RewriteOrder::ReversibleFirst, false}).form == r.form);
    CHECK(canonical_form(sum(sum(g, star()), star())).form == r.form);
    CHECK(replay(g, r.trace) == r.form);
    if (is_star_antimonotone(g)) CHECK(is_star_antimonotone(r.form));
  }
}

TEST_CASE("equivalent canonical forms coincide") {
  auto forms = premotive_parity_forms();
  std::vector<Game> canon;
  for (Game g : forms) canon.push_back(canonical_form(g).form);
  std::sort(canon.begin(), canon.end(), structural_less);
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  for (std::size_t i = 0; i < canon.size(); ++i)
    for (std::size_t j = i + 1; j < canon.size(); ++j) CHECK_FALSE(equivalent(canon[i], canon[j]));
}

TEST_CASE("traces") {
  auto r = canonical_form(g_of("{bot,top|top}"));
  REQUIRE(r.trace.steps.size() == 1);
  CHECK(r.trace.steps[0].kind == StepKind::DominatedRemoval);
  CHECK(r.trace.steps[0].path == ".");
  CHECK(r.trace.format() == "dominated-removal . {bot,top|top} -> {top|top}\n");
  auto nested = canonical_form(g_of("{{bot,top|top}|{top|top}}"));
  REQUIRE_FALSE(nested.trace.steps.empty());
  CHECK(nested.trace.steps[0].path == "L0");
}

// Tree size where a simple option ({bot|x} on the left, {x|top} on the
// right) weighs 2. Every rewrite lowers it: removal drops an option, a bypass
// replaces a non-simple option by options of one of its followers or by a
// simple game, and atomization yields a single atom.
enum class Side { Root, Left, Right };

std::size_t weight(Game g, Side side = Side::Root) {
  if (g.is_atomic()) return 1;
  if ((side == Side::Left && is_simple_lower(g)) || (side == Side::Right && is_simple_upper(g))) return 2;
  std::size_t w = 1;
  for (Game o : g.left()) w += weight(o, Side::Left);
  for (Game o : g.right()) w += weight(o, Side::Right);
  return w;
}

TEST_CASE("every rewrite step shrinks its subgame") {
  for (Game g : premotive_parity_forms())
    for (const auto& step : canonical_form(g).trace.steps) {
      INFO(std::string(to_string(step.kind)) << " " << serialize(step.before) << " -> " << serialize(step.after));
      CHECK(weight(step.after) < weight(step.before));
    }
}

TEST_CASE("distinct follower count need not drop strictly") {
  auto r = canonical_form(g_of("{top|bot,top}"));
  REQUIRE(r.trace.steps.size() == 1);
  CHECK(serialize(r.form) == "{top|bot}");
  CHECK(follower_count(r.trace.steps[0].before) == 3);
  CHECK(follower_count(r.trace.steps[0].after) == 3);
}
