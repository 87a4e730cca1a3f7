#include "rexcgt/rexboard.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "rexcgt/canonical.hpp"
#include "rexcgt/errors.hpp"
#include "rexcgt/kernels.hpp"

namespace rexcgt {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{n, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

[[noreturn]] void fail_at(int line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

std::pair<std::string, std::string> split_once(const std::string& s, char sep, int line) {
  auto pos = s.find(sep);
  if (pos == std::string::npos || pos == 0 || pos + 1 == s.size())
    fail_at(line, "expected '<a>" + std::string(1, sep) + "<b>', got '" + s + "'");
  return {s.substr(0, pos), s.substr(pos + 1)};
}

void link(RegionPosition& r, std::uint32_t a, std::uint32_t b) {
  if (a == b) return;
  auto& na = r.adjacency[a];
  if (std::find(na.begin(), na.end(), b) != na.end()) return;
  na.push_back(b);
  r.adjacency[b].push_back(a);
}

std::vector<std::uint32_t> find_all(const std::vector<std::string>& names, std::string_view name) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < names.size(); ++i)
    if (names[i] == name) out.push_back(i);
  return out;
}

}  // namespace

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("cannot read '" + file.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::uint32_t> RegionPosition::empty_cells() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < cells.size(); ++i)
    if (stones[i] == Stone::Empty) out.push_back(i);
  return out;
}

std::uint32_t RegionPosition::cell(std::string_view name) const {
  auto found = find_all(cells, name);
  if (found.empty()) throw InputError("unknown cell '" + std::string(name) + "'");
  return found.front();
}

std::uint32_t RegionPosition::terminal(std::string_view name) const {
  auto found = find_all(terminals, name);
  if (found.empty()) throw InputError("unknown terminal '" + std::string(name) + "'");
  return found.front();
}

std::string board_cell_name(int row, int col) {
  return std::string(1, static_cast<char>('a' + col - 1)) + std::to_string(row);
}

RegionPosition parse_board(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty() || lines[0].tokens[0] != "board") throw InputError("expected 'board <rows> <cols>'");
  const Line& head = lines[0];
  int rows = 0, cols = 0;
  try {
    if (head.tokens.size() != 3) throw std::invalid_argument("arity");
    rows = std::stoi(head.tokens[1]);
    cols = std::stoi(head.tokens[2]);
  } catch (const std::exception&) {
    fail_at(head.number, "expected 'board <rows> <cols>'");
  }
  if (rows < 1 || cols < 1 || cols > 26) fail_at(head.number, "board size out of range");
  if (static_cast<int>(lines.size()) - 1 != rows)
    throw InputError("expected " + std::to_string(rows) + " rows, found " + std::to_string(lines.size() - 1));

  RegionPosition r;
  r.kind = RegionKind::Shannon;
  r.board_rows = rows;
  r.board_cols = cols;
  for (int i = 1; i <= rows; ++i) {
    const Line& line = lines[i];
    std::string glyphs;
    for (const auto& t : line.tokens) glyphs += t;
    if (static_cast<int>(glyphs.size()) != cols)
      fail_at(line.number, "row has " + std::to_string(glyphs.size()) + " cells, expected " + std::to_string(cols));
    for (int j = 1; j <= cols; ++j) {
      char c = glyphs[j - 1];
      Stone s;
      if (c == '.') s = Stone::Empty;
      else if (c == 'B') s = Stone::Black;
      else if (c == 'W') s = Stone::White;
      else fail_at(line.number, std::string("invalid glyph '") + c + "'");
      r.cells.push_back(board_cell_name(i, j));
      r.stones.push_back(s);
    }
  }
  r.adjacency.resize(r.cells.size());
  auto at = [&](int row, int col) { return static_cast<std::uint32_t>((row - 1) * cols + (col - 1)); };
  const int dr[] = {0, 0, -1, 1, -1, 1};
  const int dc[] = {-1, 1, 0, 0, 1, -1};
  for (int i = 1; i <= rows; ++i)
    for (int j = 1; j <= cols; ++j)
      for (int k = 0; k < 6; ++k) {
        int ni = i + dr[k], nj = j + dc[k];
        if (ni >= 1 && ni <= rows && nj >= 1 && nj <= cols) link(r, at(i, j), at(ni, nj));
      }
  for (auto& adj : r.adjacency) std::sort(adj.begin(), adj.end());
  r.terminals = {"N", "S"};
  r.terminal_cells.resize(2);
  for (int j = 1; j <= cols; ++j) {
    r.terminal_cells[0].push_back(at(1, j));
    r.terminal_cells[1].push_back(at(rows, j));
  }
  return r;
}

RegionPosition parse_region(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty() || lines[0].tokens[0] != "region") throw InputError("expected 'region shannon|free'");
  RegionPosition r;
  const Line& head = lines[0];
  if (head.tokens.size() != 2) fail_at(head.number, "expected 'region shannon|free'");
  if (head.tokens[1] == "shannon") r.kind = RegionKind::Shannon;
  else if (head.tokens[1] == "free") r.kind = RegionKind::Free;
  else fail_at(head.number, "unknown region kind '" + head.tokens[1] + "'");

  std::vector<std::pair<int, std::string>> edges, tedges, blacks, whites;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const std::string& kw = line.tokens[0];
    auto args = std::vector<std::string>(line.tokens.begin() + 1, line.tokens.end());
    if (kw == "cells") {
      for (auto& c : args) {
        if (!find_all(r.cells, c).empty()) fail_at(line.number, "duplicate cell '" + c + "'");
        if (c.find('-') != std::string::npos) fail_at(line.number, "cell names may not contain '-'");
        r.cells.push_back(c);
      }
    } else if (kw == "terminals") {
      for (auto& t : args) {
        if (!find_all(r.terminals, t).empty()) fail_at(line.number, "duplicate terminal '" + t + "'");
        r.terminals.push_back(t);
      }
    } else if (kw == "edges") {
      for (auto& e : args) edges.emplace_back(line.number, e);
    } else if (kw == "tedges") {
      for (auto& e : args) tedges.emplace_back(line.number, e);
    } else if (kw == "black") {
      for (auto& c : args) blacks.emplace_back(line.number, c);
    } else if (kw == "white") {
      for (auto& c : args) whites.emplace_back(line.number, c);
    } else {
      fail_at(line.number, "unknown keyword '" + kw + "'");
    }
  }
  if (r.kind == RegionKind::Free && !r.terminals.empty()) throw InputError("free regions have no terminals");
  r.adjacency.resize(r.cells.size());
  r.terminal_cells.resize(r.terminals.size());
  r.stones.assign(r.cells.size(), Stone::Empty);
  auto cell_at = [&](int line, const std::string& name) {
    auto found = find_all(r.cells, name);
    if (found.empty()) fail_at(line, "unknown cell '" + name + "'");
    return found.front();
  };
  for (auto& [line, e] : edges) {
    auto [a, b] = split_once(e, '-', line);
    link(r, cell_at(line, a), cell_at(line, b));
  }
  for (auto& [line, e] : tedges) {
    auto [t, c] = split_once(e, '-', line);
    auto found = find_all(r.terminals, t);
    if (found.empty()) fail_at(line, "unknown terminal '" + t + "'");
    auto& attached = r.terminal_cells[found.front()];
    std::uint32_t ci = cell_at(line, c);
    if (std::find(attached.begin(), attached.end(), ci) == attached.end()) attached.push_back(ci);
  }
  for (auto& [line, c] : blacks) r.stones[cell_at(line, c)] = Stone::Black;
  for (auto& [line, c] : whites) {
    auto ci = cell_at(line, c);
    if (r.stones[ci] == Stone::Black) fail_at(line, "cell '" + c + "' is both black and white");
    r.stones[ci] = Stone::White;
  }
  for (auto& adj : r.adjacency) std::sort(adj.begin(), adj.end());
  return r;
}

RegionPosition load_position(const std::filesystem::path& file) {
  std::string text = read_file(file);
  auto lines = tokenize(text);
  if (lines.empty()) throw InputError("'" + file.string() + "' is empty");
  const std::string& kw = lines[0].tokens[0];
  if (kw == "board") return parse_board(text);
  if (kw == "region") return parse_region(text);
  throw InputError("'" + file.string() + "' is neither a board nor a region");
}

RegionPosition with_stone(RegionPosition r, std::string_view cell, Stone s) {
  r.stones[r.cell(cell)] = s;
  return r;
}

Completion parse_completion(const RegionPosition& r, std::string_view colors) {
  const auto empty = r.empty_cells();
  if (colors.size() != empty.size())
    throw InputError("completion colors " + std::to_string(colors.size()) + " cells, region has " +
                     std::to_string(empty.size()) + " empty");
  Completion c = 0;
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (colors[i] == 'B') c |= Completion{1} << i;
    else if (colors[i] != 'W') throw InputError("partial or invalid completion '" + std::string(colors) + "'");
  }
  return c;
}

std::string completion_string(const RegionPosition& r, Completion c) {
  std::string s;
  for (std::size_t i = 0; i < r.empty_cells().size(); ++i) s += ((c >> i) & 1) ? 'B' : 'W';
  return s;
}

bool TerminalPartition::is_discrete() const {
  for (std::size_t i = 0; i < block.size(); ++i)
    if (block[i] != i) return false;
  return true;
}

std::string TerminalPartition::name(const std::vector<std::string>& terminals) const {
  if (is_discrete()) return "top";
  std::string out;
  std::uint32_t blocks = block.empty() ? 0 : *std::max_element(block.begin(), block.end()) + 1;
  for (std::uint32_t b = 0; b < blocks; ++b) {
    std::vector<std::string> members;
    for (std::size_t t = 0; t < block.size(); ++t)
      if (block[t] == b) members.push_back(terminals[t]);
    if (members.size() < 2) continue;
    out += "(";
    for (std::size_t i = 0; i < members.size(); ++i) out += (i ? "," : "") + members[i];
    out += ")";
  }
  return out;
}

bool partition_leq(const TerminalPartition& a, const TerminalPartition& b) {
  for (std::size_t t = 0; t < b.block.size(); ++t)
    for (std::size_t u = t + 1; u < b.block.size(); ++u)
      if (b.block[t] == b.block[u] && a.block[t] != a.block[u]) return false;
  return true;
}

CompletionOutcome outcome_of_completion(const RegionPosition& r, Completion c) {
  const auto empty = r.empty_cells();
  if (empty.size() < 64 && (c >> empty.size()) != 0) throw InputError("completion colors cells that are not empty");
  CompletionOutcome o;
  o.kind = r.kind;
  if (r.kind == RegionKind::Shannon) {
    o.partition = kernels::partition_of(r, empty, c);
    o.name = o.partition.name(r.terminals);
  } else {
    o.black = c;
    o.name = completion_string(r, c);
  }
  return o;
}

OutcomePoset outcome_poset(const RegionPosition& r, Exec exec) {
  const auto empty = r.empty_cells();
  const std::size_t count = std::size_t{1} << empty.size();
  OutcomePoset out;
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> gens;
  std::vector<std::size_t> slot(count);
  if (r.kind == RegionKind::Shannon) {
    auto parts = kernels::completion_partitions(r, exec);
    std::map<TerminalPartition, std::size_t> distinct;
    for (std::size_t c = 0; c < count; ++c) {
      auto [it, fresh] = distinct.emplace(parts[c], out.outcome_of_element.size());
      if (fresh) {
        CompletionOutcome o;
        o.partition = parts[c];
        o.name = parts[c].name(r.terminals);
        out.outcome_of_element.push_back(o);
      }
      slot[c] = it->second;
    }
    for (const auto& a : out.outcome_of_element) names.push_back(a.name);
    for (const auto& a : out.outcome_of_element)
      for (const auto& b : out.outcome_of_element)
        if (partition_leq(a.partition, b.partition)) gens.emplace_back(a.name, b.name);
  } else {
    charge(count);
    for (std::size_t c = 0; c < count; ++c) {
      out.outcome_of_element.push_back(outcome_of_completion(r, c));
      names.push_back(out.outcome_of_element.back().name);
      slot[c] = c;
    }
    for (std::size_t a = 0; a < count; ++a)
      for (std::size_t b = 0; b < count; ++b)
        if ((a & b) == b) gens.emplace_back(names[a], names[b]);
  }
  std::string label = r.kind == RegionKind::Shannon ? "partitions(" : "colorings(";
  if (r.kind == RegionKind::Shannon) {
    for (std::size_t i = 0; i < r.terminals.size(); ++i) label += (i ? "," : "") + r.terminals[i];
  } else {
    for (std::size_t i = 0; i < empty.size(); ++i) label += (i ? "," : "") + r.cells[empty[i]];
  }
  label += ")";
  out.poset = Poset::make(label, names, gens);

  // Poset elements are sorted by name; reorder the outcome table to match.
  std::vector<CompletionOutcome> by_element(out.outcome_of_element.size());
  std::vector<Element> element_of_slot(out.outcome_of_element.size());
  for (std::size_t s = 0; s < out.outcome_of_element.size(); ++s) {
    Element e = out.poset->element(out.outcome_of_element[s].name);
    element_of_slot[s] = e;
    by_element[e] = out.outcome_of_element[s];
    by_element[e].kind = r.kind;
  }
  out.outcome_of_element = std::move(by_element);
  out.element_of_completion.resize(count);
  for (std::size_t c = 0; c < count; ++c) out.element_of_completion[c] = element_of_slot[slot[c]];
  return out;
}

namespace {

// Builds the game tree over ternary position codes of `n` cells.
template <class Leaf>
Game position_game(std::size_t n, Leaf leaf) {
  if (n > 20) throw BudgetExceeded("too many empty cells for a game form");
  const auto pow3 = kernels::powers_of_three(n);
  std::vector<Game> memo(pow3[n]);
  std::function<Game(std::uint64_t, std::uint64_t, std::uint32_t)> rec =
      [&](std::uint64_t code, std::uint64_t black, std::uint32_t filled) -> Game {
    if (memo[code]) return memo[code];
    charge();
    Game g;
    if (filled == n) {
      g = leaf(black);
    } else {
      std::vector<Game> left, right;
      std::uint64_t x = code;
      for (std::size_t i = 0; i < n; ++i, x /= 3) {
        if (x % 3) continue;
        left.push_back(rec(code + pow3[i], black | (std::uint64_t{1} << i), filled + 1));
        right.push_back(rec(code + 2 * pow3[i], black, filled + 1));
      }
      g = Game::composite(std::move(left), std::move(right));
    }
    memo[code] = g;
    return g;
  };
  return rec(0, 0, 0);
}

SetColoringGame fix_cell(const SetColoringGame& g, std::size_t cell, bool black) {
  SetColoringGame out;
  const std::size_t n = g.cells.size();
  for (std::size_t i = 0; i < n; ++i)
    if (i != cell) out.cells.push_back(g.cells[i]);
  out.payoff.resize(std::size_t{1} << (n - 1));
  for (std::size_t m = 0; m < out.payoff.size(); ++m) {
    std::size_t low = m & ((std::size_t{1} << cell) - 1);
    std::size_t high = (m >> cell) << (cell + 1);
    std::size_t full = low | high | (black ? std::size_t{1} << cell : 0);
    out.payoff[m] = g.payoff[full];
  }
  return out;
}

}  // namespace

Game game_form(const RegionPosition& r, const OutcomePoset& outcomes) {
  const std::size_t n = r.empty_cells().size();
  return position_game(n, [&](std::uint64_t black) {
    return Game::atom(outcomes.poset, outcomes.element_of_completion[black]);
  });
}

Game game_form(const RegionPosition& r) { return game_form(r, outcome_poset(r)); }

bool SetColoringGame::is_antimonotone() const {
  const std::size_t n = cells.size();
  for (std::size_t m = 0; m < payoff.size(); ++m)
    for (std::size_t i = 0; i < n; ++i)
      if (!(m >> i & 1) && payoff[m | (std::size_t{1} << i)] > payoff[m]) return false;
  return true;
}

SetColoringGame two_terminal_game(const RegionPosition& r, std::string_view t1, std::string_view t2) {
  if (r.kind != RegionKind::Shannon) throw InputError("two-terminal games need a Shannon region");
  const std::uint32_t a = r.terminal(t1), b = r.terminal(t2);
  const auto empty = r.empty_cells();
  auto parts = kernels::completion_partitions(r, Exec::Serial);
  SetColoringGame g;
  for (auto c : empty) g.cells.push_back(r.cells[c]);
  g.payoff.resize(parts.size());
  for (std::size_t m = 0; m < parts.size(); ++m) g.payoff[m] = parts[m].same_block(a, b) ? 0 : 1;
  return g;
}

SetColoringGame rex_game(const RegionPosition& board) { return two_terminal_game(board, "N", "S"); }

Game game_form(const SetColoringGame& g) {
  const PosetRef& b = Poset::boolean();
  return position_game(g.cells.size(), [&](std::uint64_t black) {
    return Game::atom(b, g.payoff[black] ? b->top() : b->bottom());
  });
}

bool minimax_oracle(const SetColoringGame& g, Player mover) {
  const std::size_t n = g.cells.size();
  if (n > 20) throw BudgetExceeded("too many empty cells for the minimax oracle");
  const auto pow3 = kernels::powers_of_three(n);
  std::vector<std::uint8_t> memo(pow3[n], 0);  // bit 0/1 known, bit 2/3 value; index by mover
  std::function<bool(std::uint64_t, std::uint64_t, std::size_t, bool)> play =
      [&](std::uint64_t code, std::uint64_t black, std::size_t filled, bool left_moves) -> bool {
    const int slot = left_moves ? 0 : 1;
    if (memo[code] >> slot & 1) return memo[code] >> (slot + 2) & 1;
    charge();
    bool r;
    if (filled == n) {
      r = g.payoff[black] != 0;
    } else {
      r = !left_moves;
      std::uint64_t x = code;
      for (std::size_t i = 0; i < n; ++i, x /= 3) {
        if (x % 3) continue;
        bool child = left_moves ? play(code + pow3[i], black | (std::uint64_t{1} << i), filled + 1, false)
                                : play(code + 2 * pow3[i], black, filled + 1, true);
        if (left_moves && child) {
          r = true;
          break;
        }
        if (!left_moves && !child) {
          r = false;
          break;
        }
      }
    }
    memo[code] |= static_cast<std::uint8_t>((1 << slot) | (r ? 1 << (slot + 2) : 0));
    return r;
  };
  return play(0, 0, 0, mover == Player::Left);
}

Outcome oracle_outcome(const SetColoringGame& g) {
  return Outcome{minimax_oracle(g, Player::Left), minimax_oracle(g, Player::Right)};
}

std::vector<std::uint32_t> dead_cells(const SetColoringGame& g) {
  std::vector<std::uint32_t> out;
  const std::size_t n = g.cells.size();
  for (std::uint32_t i = 0; i < n; ++i) {
    bool dead = true;
    for (std::size_t m = 0; m < g.payoff.size() && dead; ++m)
      if (!(m >> i & 1)) dead = g.payoff[m] == g.payoff[m | (std::size_t{1} << i)];
    if (dead) out.push_back(i);
  }
  return out;
}

ConcreteOrderReport concrete_order_checks(const RegionPosition& board) {
  const SetColoringGame g = rex_game(board);
  const std::size_t n = g.cells.size();
  ConcreteOrderReport rep;
  rep.empty_cells = g.cells;
  rep.empty = oracle_outcome(g);
  for (std::size_t i = 0; i < n; ++i) {
    ConcreteOrderReport::Fill f;
    f.cell = g.cells[i];
    f.black = oracle_outcome(fix_cell(g, i, true));
    f.white = oracle_outcome(fix_cell(g, i, false));
    f.black_le_empty = outcome_leq(f.black, rep.empty);
    f.empty_le_white = outcome_leq(rep.empty, f.white);
    rep.single_fills.push_back(f);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ConcreteOrderReport::PairFill p;
      p.a = g.cells[i];
      p.b = g.cells[j];
      // Removing cell i shifts later indices down by one.
      p.both_black = oracle_outcome(fix_cell(fix_cell(g, i, true), j - 1, true));
      p.both_white = oracle_outcome(fix_cell(fix_cell(g, i, false), j - 1, false));
      p.black_le_empty = outcome_leq(p.both_black, rep.empty);
      p.empty_le_white = outcome_leq(rep.empty, p.both_white);
      rep.pair_fills.push_back(p);
    }
  const auto dead = dead_cells(g);
  for (auto d : dead) rep.dead_cells.push_back(g.cells[d]);
  for (std::size_t x = 0; x < dead.size(); ++x)
    for (std::size_t y = x + 1; y < dead.size(); ++y)
      for (int colors = 0; colors < 4; ++colors) {
        auto h = fix_cell(fix_cell(g, dead[x], colors & 1), dead[y] - 1, colors & 2);
        auto o = oracle_outcome(h);
        if (o.left_first != rep.empty.left_first || o.right_first != rep.empty.right_first)
          rep.dead_pairs_removable = false;
      }
  const auto values = kernels::retrograde(n, g.payoff, Exec::Serial);
  const auto pow3 = kernels::powers_of_three(n);
  for (std::uint64_t code = 0; code < pow3[n]; ++code) {
    std::size_t empties = 0;
    for (std::uint64_t x = code, i = 0; i < n; ++i, x /= 3) empties += (x % 3 == 0);
    if (empties % 2 == 0 && (values[code] & 2) && !(values[code] & 1)) rep.lookahead = false;
  }
  return rep;
}

std::string ConcreteOrderReport::format() const {
  std::ostringstream out;
  auto cls = [](Outcome o) { return to_string(o.cls()); };
  auto yn = [](bool b) { return b ? "true" : "false"; };
  out << "empty_cells:";
  for (const auto& c : empty_cells) out << ' ' << c;
  out << "\noutcome: " << cls(empty) << '\n';
  for (const auto& f : single_fills)
    out << "fill " << f.cell << ": black " << cls(f.black) << ", white " << cls(f.white)
        << ", black<=empty " << yn(f.black_le_empty) << ", empty<=white " << yn(f.empty_le_white) << '\n';
  for (const auto& p : pair_fills)
    out << "fill " << p.a << ' ' << p.b << ": black " << cls(p.both_black) << ", white " << cls(p.both_white)
        << ", black<=empty " << yn(p.black_le_empty) << ", empty<=white " << yn(p.empty_le_white) << '\n';
  out << "dead_cells:";
  for (const auto& d : dead_cells) out << ' ' << d;
  out << "\ndead_pairs_removable: " << yn(dead_pairs_removable) << "\nlookahead: " << yn(lookahead) << '\n';
  return out.str();
}

GlueInput glue_input(const RegionPosition& r, const OutcomePoset& outcomes) {
  if (r.kind != RegionKind::Shannon) throw InputError("glue parts must be Shannon regions");
  GlueInput in;
  in.poset = outcomes.poset;
  in.terminals = r.terminals;
  for (const auto& o : outcomes.outcome_of_element) in.partition_of_element.push_back(o.partition);
  return in;
}

MonotoneMap build_glue_map(const std::vector<GlueInput>& parts,
                           const std::vector<std::pair<TerminalRef, TerminalRef>>& identifications,
                           std::pair<TerminalRef, TerminalRef> goal) {
  if (parts.empty()) throw InputError("glue needs at least one part");
  std::vector<std::size_t> offset(parts.size() + 1, 0);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (parts[p].partition_of_element.size() != parts[p].poset->size())
      throw InputError("glue part " + std::to_string(p) + " lacks a partition per element");
    offset[p + 1] = offset[p] + parts[p].terminals.size();
  }
  auto node = [&](TerminalRef t) -> std::uint32_t {
    if (t.part >= parts.size() || t.terminal >= parts[t.part].terminals.size())
      throw InputError("unknown terminal reference");
    return static_cast<std::uint32_t>(offset[t.part] + t.terminal);
  };
  for (auto& [a, b] : identifications) node(a), node(b);
  node(goal.first);
  node(goal.second);

  std::vector<PosetRef> prefix{parts[0].poset};
  for (std::size_t p = 1; p < parts.size(); ++p) prefix.push_back(product(prefix.back(), parts[p].poset));
  const PosetRef& domain = prefix.back();
  std::vector<Element> table(domain->size(), 0);
  std::vector<Element> tuple(parts.size(), 0);
  const PosetRef& b = Poset::boolean();
  for (;;) {
    Element e = tuple[0];
    for (std::size_t p = 1; p < parts.size(); ++p) e = pair_elements(prefix[p - 1], parts[p].poset, e, tuple[p]);
    std::vector<std::uint32_t> parent(offset.back());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    auto unite = [&](std::uint32_t x, std::uint32_t y) { parent[find(x)] = find(y); };
    for (std::size_t p = 0; p < parts.size(); ++p) {
      const auto& part = parts[p].partition_of_element[tuple[p]];
      for (std::uint32_t t = 0; t < part.block.size(); ++t)
        for (std::uint32_t u = t + 1; u < part.block.size(); ++u)
          if (part.block[t] == part.block[u]) unite(offset[p] + t, offset[p] + u);
    }
    for (auto& [x, y] : identifications) unite(node(x), node(y));
    table[e] = find(node(goal.first)) != find(node(goal.second)) ? b->top() : b->bottom();

    std::size_t p = parts.size();
    while (p-- > 0) {
      if (++tuple[p] < parts[p].poset->size()) break;
      tuple[p] = 0;
    }
    if (p == static_cast<std::size_t>(-1)) break;
  }
  if (!MonotoneMap::is_monotone(*domain, *b, table))
    throw std::logic_error("glue map is not monotone; the parts' outcome posets do not support this gluing");
  return MonotoneMap(domain, b, std::move(table));
}

GlueSpec parse_manifest(std::string_view text, const std::filesystem::path& base) {
  GlueSpec spec;
  bool have_goal = false;
  for (const Line& line : tokenize(text)) {
    const auto& t = line.tokens;
    auto ref = [&](const std::string& s) {
      auto [part, term] = split_once(s, '.', line.number);
      auto it = std::find(spec.names.begin(), spec.names.end(), part);
      if (it == spec.names.end()) fail_at(line.number, "unknown part '" + part + "'");
      std::size_t p = static_cast<std::size_t>(it - spec.names.begin());
      auto found = find_all(spec.regions[p].terminals, term);
      if (found.empty()) fail_at(line.number, "part '" + part + "' has no terminal '" + term + "'");
      return TerminalRef{p, found.front()};
    };
    if (t[0] == "part") {
      if (t.size() != 3) fail_at(line.number, "expected 'part <name> <regionfile>'");
      if (std::find(spec.names.begin(), spec.names.end(), t[1]) != spec.names.end())
        fail_at(line.number, "duplicate part '" + t[1] + "'");
      spec.names.push_back(t[1]);
      spec.regions.push_back(parse_region(read_file(base / t[2])));
    } else if (t[0] == "identify") {
      if (t.size() != 4 || t[2] != "=") fail_at(line.number, "expected 'identify <part>.<T> = <part>.<T>'");
      spec.identifications.emplace_back(ref(t[1]), ref(t[3]));
    } else if (t[0] == "goal") {
      if (t.size() != 3) fail_at(line.number, "expected 'goal <part>.<T> <part>.<T>'");
      spec.goal = {ref(t[1]), ref(t[2])};
      have_goal = true;
    } else {
      fail_at(line.number, "unknown keyword '" + t[0] + "'");
    }
  }
  if (spec.names.empty()) throw InputError("manifest has no parts");
  if (!have_goal) throw InputError("manifest has no goal");
  return spec;
}

GlueSpec load_manifest(const std::filesystem::path& file) {
  return parse_manifest(read_file(file), file.parent_path());
}

GlueReport run_glue(const GlueSpec& spec) {
  GlueReport rep;
  std::vector<GlueInput> inputs;
  for (const auto& r : spec.regions) {
    OutcomePoset op = outcome_poset(r);
    inputs.push_back(glue_input(r, op));
    rep.part_forms.push_back(game_form(r, op));
    rep.part_canonical.push_back(canonical_form(rep.part_forms.back(), {RewriteOrder::DominatedFirst, false}).form);
  }
  MonotoneMap glue = build_glue_map(inputs, spec.identifications, spec.goal);
  Game canon_sum = rep.part_canonical[0];
  Game full_sum = rep.part_forms[0];
  for (std::size_t p = 1; p < spec.regions.size(); ++p) {
    canon_sum = sum(canon_sum, rep.part_canonical[p]);
    full_sum = sum(full_sum, rep.part_forms[p]);
  }
  rep.composed = map_game(glue, canon_sum);
  rep.canonical = canonical_form(rep.composed, {RewriteOrder::DominatedFirst, false}).form;
  rep.outcome = outcome(rep.canonical);
  rep.full_outcome = outcome(map_game(glue, full_sum));
  return rep;
}

}  // namespace rexcgt
