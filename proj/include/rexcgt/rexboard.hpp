#pragma once

// Rex boards, Shannon-style regions, and set coloring games: completions,
// outcome posets, game forms, glue maps for decompositions, and a
// brute-force minimax oracle.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rexcgt/context_oracle.hpp"
#include "rexcgt/gameform.hpp"
#include "rexcgt/order.hpp"

namespace rexcgt {

enum class Stone : std::uint8_t { Empty, Black, White };
enum class RegionKind { Shannon, Free };

struct RegionPosition {
  RegionKind kind = RegionKind::Shannon;
  std::vector<std::string> cells;
  std::vector<std::vector<std::uint32_t>> adjacency;
  std::vector<std::string> terminals;
  std::vector<std::vector<std::uint32_t>> terminal_cells;
  std::vector<Stone> stones;
  int board_rows = 0;  // nonzero when parsed from a board
  int board_cols = 0;

  std::vector<std::uint32_t> empty_cells() const;
  std::uint32_t cell(std::string_view name) const;  // InputError if unknown
  std::uint32_t terminal(std::string_view name) const;
};

// Cell at 1-based (row, col) of a board is named by column letter and row
// number: (2, 1) is "a2". Terminals are "N" (row 1) and "S" (last row).
std::string board_cell_name(int row, int col);

RegionPosition parse_board(std::string_view text);
RegionPosition parse_region(std::string_view text);
RegionPosition load_position(const std::filesystem::path& file);  // board or region by first keyword
RegionPosition with_stone(RegionPosition r, std::string_view cell, Stone s);

// A completion colors every empty cell: bit i is set when the i-th empty
// cell (in region order) is black.
using Completion = std::uint64_t;
// Reads a string over {B, W}, one letter per empty cell in region order.
Completion parse_completion(const RegionPosition& r, std::string_view colors);
std::string completion_string(const RegionPosition& r, Completion c);

// Block label per terminal, numbered by first occurrence.
struct TerminalPartition {
  std::vector<std::uint32_t> block;

  bool is_discrete() const;
  bool same_block(std::uint32_t a, std::uint32_t b) const { return block[a] == block[b]; }
  // "top" when discrete, otherwise the nontrivial blocks, e.g. "(1,2)".
  std::string name(const std::vector<std::string>& terminals) const;
  friend bool operator==(const TerminalPartition& a, const TerminalPartition& b) { return a.block == b.block; }
  friend bool operator<(const TerminalPartition& a, const TerminalPartition& b) { return a.block < b.block; }
};

// Reverse refinement: a <= b iff every block of b lies inside a block of a.
bool partition_leq(const TerminalPartition& a, const TerminalPartition& b);

struct CompletionOutcome {
  RegionKind kind = RegionKind::Shannon;
  TerminalPartition partition;  // Shannon
  Completion black = 0;         // Free: the black cells
  std::string name;
};

CompletionOutcome outcome_of_completion(const RegionPosition& r, Completion c);

struct OutcomePoset {
  PosetRef poset;
  std::vector<Element> element_of_completion;  // indexed by Completion
  std::vector<CompletionOutcome> outcome_of_element;
};

OutcomePoset outcome_poset(const RegionPosition& r, Exec exec = Exec::Serial);

// Left options place black, right options place white; filled positions
// are atoms of the outcome poset.
Game game_form(const RegionPosition& r);
Game game_form(const RegionPosition& r, const OutcomePoset& outcomes);

// Two players alternately color cells; Left (black) wins iff payoff of the
// final black set is top.
struct SetColoringGame {
  std::vector<std::string> cells;
  std::vector<std::uint8_t> payoff;  // indexed by black mask

  bool is_antimonotone() const;
};

// Left wins iff the two terminals are not joined by black. For a board
// region these are N and S.
SetColoringGame two_terminal_game(const RegionPosition& r, std::string_view t1, std::string_view t2);
SetColoringGame rex_game(const RegionPosition& board);

Game game_form(const SetColoringGame& g);

// Exhaustive alternating play, memoized on positions.
bool minimax_oracle(const SetColoringGame& g, Player mover);
Outcome oracle_outcome(const SetColoringGame& g);

struct ConcreteOrderReport {
  std::vector<std::string> empty_cells;
  Outcome empty;
  struct Fill {
    std::string cell;
    Outcome black, white;
    bool black_le_empty, empty_le_white;
  };
  std::vector<Fill> single_fills;
  struct PairFill {
    std::string a, b;
    Outcome both_black, both_white;
    bool black_le_empty, empty_le_white;
  };
  std::vector<PairFill> pair_fills;
  std::vector<std::string> dead_cells;
  // Every pair of dead cells can be filled in any colors without changing the outcome.
  bool dead_pairs_removable = true;
  // Over every reachable position with an even number of empty cells,
  // a second-player win for Left implies a first-player win.
  bool lookahead = true;

  std::string format() const;
};

ConcreteOrderReport concrete_order_checks(const RegionPosition& board);

// A cell is dead when its color never changes the payoff.
std::vector<std::uint32_t> dead_cells(const SetColoringGame& g);

// Decomposition of a board into regions joined at shared terminals.
struct GlueInput {
  PosetRef poset;
  std::vector<std::string> terminals;
  std::vector<TerminalPartition> partition_of_element;
};

struct TerminalRef {
  std::size_t part;
  std::uint32_t terminal;
};

// Map from the left-nested product of the part posets to bool: top iff the
// goal terminals stay in different blocks after merging identified
// terminals and blocks. Throws std::logic_error if the result is not monotone.
MonotoneMap build_glue_map(const std::vector<GlueInput>& parts,
                           const std::vector<std::pair<TerminalRef, TerminalRef>>& identifications,
                           std::pair<TerminalRef, TerminalRef> goal);

GlueInput glue_input(const RegionPosition& r, const OutcomePoset& outcomes);

struct GlueSpec {
  std::vector<std::string> names;
  std::vector<RegionPosition> regions;
  std::vector<std::pair<TerminalRef, TerminalRef>> identifications;
  std::pair<TerminalRef, TerminalRef> goal{};
};

// Region paths in the manifest are resolved relative to `base`.
GlueSpec parse_manifest(std::string_view text, const std::filesystem::path& base);
GlueSpec load_manifest(const std::filesystem::path& file);

struct GlueReport {
  std::vector<Game> part_forms;
  std::vector<Game> part_canonical;
  Game composed;   // glue map applied to the sum of the canonical parts
  Game canonical;  // canonical form of `composed`
  Outcome outcome;
  Outcome full_outcome;  // glue map applied to the sum of the raw parts
};

GlueReport run_glue(const GlueSpec& spec);

std::string read_file(const std::filesystem::path& file);

}  // namespace rexcgt
