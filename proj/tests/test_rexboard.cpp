#include <doctest.h>

#include "rexcgt/canonical.hpp"
#include "rexcgt/errors.hpp"
#include "rexcgt/gameprops.hpp"
#include "rexcgt/kernels.hpp"
#include "rexcgt/order.hpp"
#include "rexcgt/rexboard.hpp"

using namespace rexcgt;

namespace {

std::string data(const char* name) { return std::string(REXCGT_DATA_DIR) + "/" + name; }

// Black connectivity by depth-first search, independent of the kernels.
bool joined(const RegionPosition& r, std::uint32_t t1, std::uint32_t t2, Completion c) {
  auto empty = r.empty_cells();
  std::vector<bool> black(r.cells.size());
  for (std::size_t i = 0; i < r.cells.size(); ++i) black[i] = r.stones[i] == Stone::Black;
  for (std::size_t i = 0; i < empty.size(); ++i) black[empty[i]] = (c >> i) & 1;
  std::vector<bool> seen(r.cells.size());
  std::vector<std::uint32_t> stack;
  for (auto x : r.terminal_cells[t1])
    if (black[x]) stack.push_back(x);
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    if (seen[x]) continue;
    seen[x] = true;
    for (auto y : r.adjacency[x])
      if (black[y]) stack.push_back(y);
  }
  for (auto x : r.terminal_cells[t2])
    if (seen[x]) return true;
  return false;
}

}  // namespace

TEST_CASE("board parsing") {
  auto r = parse_board("board 3 3\n. . .\n. . .\n. . .\n");
  CHECK(r.cells.size() == 9);
  CHECK(r.terminals.size() == 2);
  CHECK(r.empty_cells().size() == 9);
  // hex neighbours of the centre b2
  auto b2 = r.cell("b2");
  std::vector<std::string> names;
  for (auto n : r.adjacency[b2]) names.push_back(r.cells[n]);
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"a2", "a3", "b1", "b3", "c1", "c2"});
  CHECK(parse_board("board 1 3\nB.W\n").stones[0] == Stone::Black);

  auto f = load_position(data("dead_cell.board"));
  auto empty = f.empty_cells();
  REQUIRE(empty.size() == 2);
  CHECK(f.cells[empty[0]] == "a2");
  CHECK(f.cells[empty[1]] == "c2");
  CHECK(load_position(data("decomposed.board")).empty_cells().size() == 10);

  CHECK_THROWS_AS(parse_board("board 2 2\n. .\n.\n"), InputError);
  CHECK_THROWS_AS(parse_board("board 1 2\n. x\n"), InputError);
  CHECK_THROWS_AS(parse_board("board 2 2\n. .\n"), InputError);
}

TEST_CASE("region parsing") {
  auto r = load_position(data("three_terminals.region"));
  CHECK(r.kind == RegionKind::Shannon);
  CHECK(r.terminals == std::vector<std::string>{"1", "2", "3"});
  CHECK_THROWS_AS(parse_region("region shannon\ncells x\nedges x-y\n"), InputError);
  CHECK_THROWS_AS(parse_region("region shannon\ncells x\nterminals 1\ntedges 2-x\n"), InputError);
  CHECK_THROWS_AS(parse_region("region free\ncells x\nterminals 1\n"), InputError);
  CHECK_THROWS_AS(parse_region("region odd\n"), InputError);
  CHECK_THROWS_AS(parse_region("region free\ncells x\nblack x\nwhite x\n"), InputError);
}

TEST_CASE("completion outcomes") {
  auto r = load_position(data("three_terminals.region"));
  CHECK(outcome_of_completion(r, parse_completion(r, "BB")).name == "(1,2,3)");
  CHECK(outcome_of_completion(r, parse_completion(r, "BW")).name == "(1,2)");
  CHECK(outcome_of_completion(r, parse_completion(r, "WB")).partition.is_discrete());
  CHECK(outcome_of_completion(r, parse_completion(r, "WW")).name == "top");
  CHECK_THROWS_AS(parse_completion(r, "B."), InputError);
  CHECK_THROWS_AS(parse_completion(r, "B"), InputError);

  for (const char* file : {"g1.region", "g2.region", "g3.region", "three_terminals.region", "decomposed.board"}) {
    auto x = load_position(data(file));
    auto parts = kernels::completion_partitions(x, Exec::Serial);
    for (Completion c = 0; c < parts.size(); c += (parts.size() > 64 ? 13 : 1))
      for (std::uint32_t a = 0; a < x.terminals.size(); ++a)
        for (std::uint32_t b = a + 1; b < x.terminals.size(); ++b) CHECK(parts[c].same_block(a, b) == joined(x, a, b, c));
    CHECK(parts[0].is_discrete());
  }
}

TEST_CASE("outcome posets") {
  auto d = outcome_poset(load_position(data("two_free.region")));
  CHECK(d.poset->size() == 4);
  CHECK_FALSE(d.poset->leq("WB", "BW"));
  CHECK(d.poset->leq("BB", "WW"));
  CHECK(d.poset->element_name(d.poset->top()) == "WW");

  auto c = outcome_poset(load_position(data("three_terminals.region")));
  REQUIRE(c.poset->size() == 3);
  CHECK(c.poset->leq("(1,2,3)", "(1,2)"));
  CHECK(c.poset->leq("(1,2)", "top"));
  auto r = load_position(data("three_terminals.region"));
  // WB and WW land on the same class
  CHECK(c.element_of_completion[parse_completion(r, "WB")] == c.element_of_completion[parse_completion(r, "WW")]);
  CHECK(c.element_of_completion[parse_completion(r, "BW")] != c.element_of_completion[parse_completion(r, "WW")]);

  auto g2 = outcome_poset(load_position(data("g2.region")));
  CHECK(g2.poset->size() == 5);
  CHECK(g2.poset->element_name(g2.poset->bottom()) == "(2,3,4)");
  for (const char* mid : {"(2,3)", "(2,4)", "(3,4)"}) {
    CHECK(g2.poset->leq("(2,3,4)", mid));
    CHECK(g2.poset->leq(mid, "top"));
  }
  CHECK_FALSE(g2.poset->leq("(2,3)", "(2,4)"));
}

TEST_CASE("partition order matches the completion preorder quotient") {
  auto r = load_position(data("three_terminals.region"));
  std::vector<std::string> names;
  for (Completion c = 0; c < 4; ++c) names.push_back(completion_string(r, c));
  auto q = quotient_preorder("completions", names, [&](std::size_t a, std::size_t b) {
    return partition_leq(outcome_of_completion(r, a).partition, outcome_of_completion(r, b).partition);
  });
  CHECK(q.poset->size() == 3);
  CHECK(q.poset->find("WB=WW"));
}

TEST_CASE("game forms of regions") {
  auto r = load_position(data("three_terminals.region"));
  Game g = game_form(r);
  CHECK(serialize(g) == "{{(1,2,3)|(1,2)},{(1,2,3)|top}|{(1,2)|top},{top|top}}");
  CHECK(game_form(with_stone(with_stone(r, "x", Stone::White), "y", Stone::Black)).is_atomic());

  auto f = load_position(data("dead_cell.board"));
  Game fb = game_form(rex_game(f));
  CHECK(fb.depth() == 2);
  CHECK(fb.over() == Poset::boolean());
  CHECK(outcome(fb).cls() == OutcomeClass::N);

  for (const char* file : {"three_terminals.region", "g1.region", "g2.region", "g3.region", "two_free.region", "dead_cell.board"}) {
    auto x = load_position(data(file));
    Game gx = game_form(x);
    CHECK(is_premotive(gx));
    CHECK(is_star_antimonotone(gx));
    Parity expect = x.empty_cells().size() % 2 ? Parity::Odd : Parity::Even;
    CHECK(gx.parity() == expect);
  }
}

TEST_CASE("minimax oracle") {
  auto f = rex_game(load_position(data("dead_cell.board")));
  CHECK(minimax_oracle(f, Player::Left));
  CHECK_FALSE(minimax_oracle(f, Player::Right));
  CHECK(f.is_antimonotone());
  CHECK(minimax_oracle(rex_game(load_position(data("filled.board"))), Player::Left));
  SetColoringGame constant{{"p", "q", "r"}, std::vector<std::uint8_t>(8, 1)};
  CHECK(minimax_oracle(constant, Player::Left));
  CHECK(minimax_oracle(constant, Player::Right));
  for (const char* file : {"dead_cell.board", "decomposed.board"}) {
    auto g = rex_game(load_position(data(file)));
    CHECK(outcome(game_form(g)).cls() == oracle_outcome(g).cls());
  }
  BudgetScope tiny(10);
  CHECK_THROWS_AS(oracle_outcome(rex_game(load_position(data("decomposed.board")))), BudgetExceeded);
}

TEST_CASE("small boards: game form outcome matches the oracle") {
  for (const char* text : {"board 2 2\n. .\n. .\n", "board 3 3\n. . .\nB . W\n. . .\n", "board 2 3\n. . .\n. . .\n",
                           "board 3 2\n. .\n. .\n. .\n", "board 3 3\nW . .\n. . .\n. . B\n"}) {
    auto r = parse_board(text);
    auto g = rex_game(r);
    Game gf = game_form(g);
    CHECK(outcome(gf).cls() == oracle_outcome(g).cls());
    if (r.empty_cells().size() <= 5) {
      CHECK(is_premotive(gf));
      CHECK(is_star_antimonotone(gf));
    }
  }
}

TEST_CASE("concrete order checks on the 3x2 position") {
  auto rep = concrete_order_checks(load_position(data("dead_cell.board")));
  CHECK(rep.empty.cls() == OutcomeClass::N);
  REQUIRE(rep.single_fills.size() == 2);
  const auto& x = rep.single_fills[0];
  CHECK(x.cell == "a2");
  CHECK(x.black.cls() == OutcomeClass::P);
  CHECK(x.white.cls() == OutcomeClass::P);
  CHECK_FALSE(x.empty_le_white);
  CHECK(rep.dead_cells == std::vector<std::string>{"a2"});
  CHECK(rep.lookahead);
  REQUIRE(rep.pair_fills.size() == 1);
  CHECK(rep.pair_fills[0].black_le_empty);
  CHECK(rep.pair_fills[0].empty_le_white);
}

TEST_CASE("glue maps") {
  auto one = parse_region("region shannon\ncells x\nterminals 1 2\ntedges 1-x 2-x\nblack x\n");
  auto op = outcome_poset(one);
  auto in = glue_input(one, op);
  auto m = build_glue_map({in}, {}, {{0, 0}, {0, 1}});
  CHECK(op.poset->size() == 1);
  CHECK(m(0) == Poset::boolean()->bottom());

  auto spec = load_manifest(data("decomposed.manifest"));
  std::vector<GlueInput> inputs;
  for (const auto& r : spec.regions) inputs.push_back(glue_input(r, outcome_poset(r)));
  auto f = build_glue_map(inputs, spec.identifications, spec.goal);
  CHECK(MonotoneMap::is_monotone(*f.domain(), *f.codomain(), f.table()));
  // f is bot iff 1 or 4 reaches 3 or 5
  const auto& b = Poset::boolean();
  auto p1 = inputs[0].poset, p2 = inputs[1].poset, p3 = inputs[2].poset;
  for (Element a = 0; a < p1->size(); ++a)
    for (Element c = 0; c < p2->size(); ++c)
      for (Element e = 0; e < p3->size(); ++e) {
        bool g1 = p1->element_name(a) == "(1,2)";
        std::string n2 = p2->element_name(c);
        bool g3 = p3->element_name(e) == "(4,5)";
        bool north_south = g3 || n2 == "(3,4)" || n2 == "(2,3,4)" || (g1 && n2 == "(2,3)");
        Element x = pair_elements(product(p1, p2), p3, pair_elements(p1, p2, a, c), e);
        CHECK(f(x) == (north_south ? b->bottom() : b->top()));
      }
  CHECK(f(pair_elements(product(p1, p2), p3, pair_elements(p1, p2, p1->top(), p2->top()), p3->top())) == b->top());
  CHECK_THROWS_AS(parse_manifest("part A nope.region\n", REXCGT_DATA_DIR), InputError);
  CHECK_THROWS_AS(parse_manifest("part A g1.region\ngoal A.1 A.9\n", REXCGT_DATA_DIR), InputError);
  CHECK_THROWS_AS(parse_manifest("part A g1.region\n", REXCGT_DATA_DIR), InputError);
}

TEST_CASE("the decomposed board") {
  auto rep = run_glue(load_manifest(data("decomposed.manifest")));
  CHECK(serialize(rep.part_canonical[0]) == "{(1,2)|top}");
  CHECK(serialize(rep.part_canonical[2]) == "top");
  CHECK(serialize(rep.canonical) == "top");
  CHECK(rep.outcome.cls() == OutcomeClass::L);
  CHECK(rep.full_outcome.cls() == OutcomeClass::L);
  CHECK(oracle_outcome(rex_game(load_position(data("decomposed.board")))).cls() == OutcomeClass::L);
}
