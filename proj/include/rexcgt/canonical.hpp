#pragma once

// Simplification of premotive games with parity: removing dominated
// options, bypassing reversible options, collapsing {{bot|x}|{x|top}} to x,
// and the canonical form that results from applying all three to a fixpoint.

#include <string>
#include <vector>

#include "rexcgt/gameform.hpp"

namespace rexcgt {

enum class StepKind { DominatedRemoval, ReversibleBypass, AtomizeCollapse };
const char* to_string(StepKind k);

struct SimplificationStep {
  StepKind kind;
  std::string path;  // e.g. "L0.R1"; "." is the root. Indices follow serialized option order.
  Game before;
  Game after;
};

struct SimplificationTrace {
  std::vector<SimplificationStep> steps;
  // One line per step: kind, path, serialized before and after.
  std::string format() const;
};

enum class RewriteOrder { DominatedFirst, ReversibleFirst };

struct CanonicalOptions {
  RewriteOrder order = RewriteOrder::DominatedFirst;
  bool record_paths = true;
};

struct CanonicalResult {
  Game form;
  SimplificationTrace trace;
};

// Root-level rewrites, applied until none applies. These throw
// PreconditionError unless g is premotive and has parity.
Game remove_dominated(Game g);
Game bypass_reversible(Game g);

// Replaces every subgame of the form {{bot|x}|{x|top}} by x.
Game collapse_atomize(Game g);

// Throws PreconditionError unless g is premotive and has parity.
CanonicalResult canonical_form(Game g, const CanonicalOptions& options = {});

bool is_canonical(Game g);

// True for {bot|k} and {k|top} with k atomic.
bool is_simple_lower(Game g);
bool is_simple_upper(Game g);
bool is_atomize_shape(Game g);

// Rebuilds g with every occurrence of `from` replaced by `to`.
Game substitute(Game g, Game from, Game to);
// Applies each step of the trace as a global substitution.
Game replay(Game input, const SimplificationTrace& trace);

}  // namespace rexcgt
