#include <doctest.h>

#include <random>
#include <thread>

#include "rexcgt/enumerate.hpp"
#include "rexcgt/errors.hpp"
#include "rexcgt/gameform.hpp"
#include "support.hpp"

using namespace rexcgt;

namespace {

PosetRef B() { return Poset::boolean(); }
Game g_of(const char* s) { return parse_game(s, B()); }

}  // namespace

TEST_CASE("constants") {
  CHECK(serialize(zero()) == "0");
  CHECK(serialize(star()) == "{0|0}");
  CHECK(zero().over() == Poset::unit());
  CHECK(serialize(atomize(B(), B()->top())) == "{{bot|top}|{top|top}}");
  CHECK(serialize(lower_simple(B(), B()->top())) == "{bot|top}");
  CHECK(serialize(upper_simple(B(), B()->bottom())) == "{bot|top}");
}

TEST_CASE("composites are hash-consed and deduplicated") {
  Game a = g_of("{bot,top,bot|top}");
  CHECK(a == g_of("{top,bot|top,top}"));
  CHECK(a.left().size() == 2);
  CHECK_THROWS_AS(Game::composite({}, {Game::atom(B(), "top")}), InputError);
  CHECK_THROWS_AS(Game::composite({zero()}, {Game::atom(B(), "top")}), InputError);
}

TEST_CASE("sum follows the four cases") {
  CHECK(serialize(sum(Game::atom(B(), "bot"), Game::atom(B(), "top"))) == "(bot,top)");
  CHECK(serialize(sum(star(), star())) == "{{0|0}|{0|0}}");

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Game g = random_form(B(), rng, 3, 2), h = random_form(B(), rng, 2, 2);
    CHECK(sum(g, zero()) == g);
    CHECK(sum(zero(), g) == g);
    auto expect = ref::print(ref::sum(ref::parse(serialize(g)), ref::parse(serialize(h)), false, false));
    CHECK(serialize(sum(g, h)) == expect);
    auto with_star = ref::print(ref::sum(ref::parse(serialize(g)), ref::parse("{0|0}"), false, true));
    CHECK(serialize(sum(g, star())) == with_star);
  }
}

TEST_CASE("sum is associative up to the product bracketing") {
  std::mt19937_64 rng(11);
  auto b = B();
  auto left_nested = product(product(b, b), b);
  auto right_nested = product(b, product(b, b));
  std::vector<Element> table(left_nested->size());
  for (Element e = 0; e < left_nested->size(); ++e) {
    auto [xy, z] = left_nested->split(e);
    auto [x, y] = product(b, b)->split(xy);
    table[e] = right_nested->pair(x, product(b, b)->pair(y, z));
  }
  MonotoneMap reassoc(left_nested, right_nested, table);
  for (int i = 0; i < 100; ++i) {
    Game g = random_form(b, rng, 2, 2), h = random_form(b, rng, 2, 2), k = random_form(b, rng, 1, 2);
    CHECK(map_game(reassoc, sum(sum(g, h), k)) == sum(g, sum(h, k)));
  }
}

TEST_CASE("map") {
  auto b = B();
  Game x = g_of("{bot|top}");
  CHECK(serialize(map_game(constant_map(b, b, b->top()), x)) == "{top|top}");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    Game g = random_form(b, rng, 3, 2);
    CHECK(map_game(identity_map(b), g) == g);
    auto c = constant_map(b, b, b->bottom());
    CHECK(map_game(compose(identity_map(b), c), g) == map_game(identity_map(b), map_game(c, g)));
  }
  CHECK_THROWS_AS(map_game(identity_map(b), star()), InputError);

  // the copycat comparison game, expanded independently
  Game cmp = map_game(lambda_map(b), sum(dual(x), x));
  auto lam = [&](const std::string& name) {
    // name is "(a^op,c)": top iff a <= c
    auto comma = name.find(',');
    std::string a = name.substr(1, comma - 4), c = name.substr(comma + 1, name.size() - comma - 2);
    return b->leq(a, c) ? std::string("top") : std::string("bot");
  };
  auto expect = ref::rename(ref::sum(ref::dual(ref::parse("{bot|top}")), ref::parse("{bot|top}"), false, false), lam);
  CHECK(serialize(cmp) == ref::print(expect));
}

TEST_CASE("dual") {
  CHECK(dual(star()) == star());
  Game t = Game::atom(B(), "top");
  Game dt = dual(t);
  CHECK(dt.over() == dual(B()));
  CHECK(dt.value() == dual(B())->bottom());
  CHECK(serialize(dual(g_of("{bot|top}"))) == "{top^op|bot^op}");
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    Game g = random_form(B(), rng, 3, 2), h = random_form(B(), rng, 2, 2);
    CHECK(dual(dual(g)) == g);
    CHECK(dual(sum(g, h)) == sum(dual(g), dual(h)));
    CHECK(serialize(dual(g)) == ref::print(ref::dual(ref::parse(serialize(g)))));
  }
}

TEST_CASE("parity") {
  CHECK(Game::atom(B(), "bot").parity() == Parity::Even);
  CHECK(star().parity() == Parity::Odd);
  CHECK(g_of("{bot|{top|top}}").parity() == Parity::None);
  for (Game g : enumerate_forms(B(), 2, 2)) {
    if (g.parity() == Parity::None) continue;
    Parity flipped = g.parity() == Parity::Even ? Parity::Odd : Parity::Even;
    CHECK(sum(g, star()).parity() == flipped);
  }
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    Game g = random_form(B(), rng, 3, 2), h = random_form(B(), rng, 3, 2);
    if (g.parity() == Parity::None || h.parity() == Parity::None) continue;
    Parity expect = g.parity() == h.parity() ? Parity::Even : Parity::Odd;
    CHECK(sum(g, h).parity() == expect);
  }
}

TEST_CASE("followers") {
  Game t = Game::atom(B(), "top");
  CHECK(followers(t) == std::vector<Game>{t});
  auto fs = followers(star());
  CHECK(fs.size() == 2);
  CHECK(fs[0] == star());
  auto fx = followers(g_of("{bot|top}"));
  CHECK(fx.size() == 3);
  auto post = followers(g_of("{{bot|top}|top}"), true);
  CHECK(post.back() == g_of("{{bot|top}|top}"));
  CHECK(follower_count(g_of("{{bot|top}|top}")) == 4);
}

TEST_CASE("serialization") {
  CHECK(serialize(Game::atom(B(), "top")) == "top");
  CHECK(serialize(g_of("{ bot | top }")) == "{bot|top}");
  CHECK(serialize(g_of("{{bot|bot}|{top|top}}")) == "{{bot|bot}|{top|top}}");
  auto bb = product(B(), B());
  Game p = parse_game("{(bot,top),(top,top)|(top,bot)}", bb);
  CHECK(serialize(p) == "{(bot,top),(top,top)|(top,bot)}");
  for (Game g : enumerate_forms(B(), 2, 2)) CHECK(parse_game(serialize(g), B()) == g);
  CHECK_THROWS_AS(g_of("{bot|"), InputError);
  CHECK_THROWS_AS(g_of("{bot top}"), InputError);
  CHECK_THROWS_AS(g_of("{|top}"), InputError);
  CHECK_THROWS_AS(g_of("maybe"), InputError);
  CHECK_THROWS_AS(g_of("top top"), InputError);
}

TEST_CASE("enumeration counts") {
  // depth <= 1, width 1 over bool: 2 atoms and 2 x 2 composites
  CHECK(enumerate_forms(B(), 1, 1).size() == 6);
  // depth <= 1, width 2: 3 option sets per side
  CHECK(enumerate_forms(B(), 1, 2).size() == 11);
  CHECK(option_subsets(enumerate_forms(B(), 0, 1), 2).size() == 3);
}

TEST_CASE("concurrent construction agrees") {
  std::vector<std::vector<std::string>> out(4);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      std::mt19937_64 rng(42);
      for (int i = 0; i < 200; ++i) {
        Game g = random_form(B(), rng, 3, 3), h = random_form(B(), rng, 2, 2);
        out[t].push_back(serialize(sum(g, h)) + std::to_string(sum(g, h).id()));
      }
    });
  for (auto& th : threads) th.join();
  for (int t = 1; t < 4; ++t) CHECK(out[t] == out[0]);
}
