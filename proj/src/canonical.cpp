#include "rexcgt/canonical.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <unordered_map>

#include "rexcgt/errors.hpp"
#include "rexcgt/gameprops.hpp"
#include "rexcgt/order.hpp"

namespace rexcgt {

namespace {

class Serializer {
 public:
  const std::string& operator()(Game g) {
    if (auto it = cache_.find(g.id()); it != cache_.end()) return it->second;
    return cache_.emplace(g.id(), serialize(g)).first->second;
  }

  std::vector<Game> sorted(const std::vector<Game>& opts) {
    std::vector<Game> v = opts;
    std::sort(v.begin(), v.end(), [&](Game a, Game b) { return (*this)(a) < (*this)(b); });
    return v;
  }

 private:
  std::unordered_map<std::uint32_t, std::string> cache_;
};

std::string brief(Game g) {
  std::string s = serialize(g);
  if (s.size() > 160) s = s.substr(0, 157) + "...";
  return s;
}

void require_premotive_parity(Game g) {
  if (g.parity() == Parity::None) throw PreconditionError("game has no parity: " + brief(g));
  for (Game f : followers(g, true))
    if (!is_locally_premotive(f))
      throw PreconditionError("game is not premotive; failing follower " + brief(f));
}

std::vector<Game> without(const std::vector<Game>& v, Game victim) {
  std::vector<Game> out;
  for (Game x : v)
    if (x != victim) out.push_back(x);
  return out;
}

std::optional<Game> remove_one_dominated(Game g, Serializer& ser) {
  for (int side = 0; side < 2; ++side) {
    const auto opts = ser.sorted(side == 0 ? g.left() : g.right());
    for (std::size_t i = 0; i < opts.size(); ++i)
      for (std::size_t j = 0; j < opts.size(); ++j) {
        if (i == j) continue;
        const bool dominated = side == 0 ? leq_intrinsic(opts[i], opts[j]) : leq_intrinsic(opts[j], opts[i]);
        if (!dominated) continue;
        Game victim = opts[i];
        const bool mutual = side == 0 ? leq_intrinsic(opts[j], opts[i]) : leq_intrinsic(opts[i], opts[j]);
        if (mutual && ser(opts[j]) > ser(opts[i])) victim = opts[j];
        if (side == 0) return Game::composite(without(g.left(), victim), g.right());
        return Game::composite(g.left(), without(g.right(), victim));
      }
  }
  return std::nullopt;
}

std::optional<Game> bypass_one(Game g, Serializer& ser) {
  const PosetRef& p = g.over();
  for (Game h : ser.sorted(g.left())) {
    if (h.is_atomic() || is_simple_lower(h)) continue;
    for (Game k : ser.sorted(h.right())) {
      if (!leq_intrinsic(k, g)) continue;
      std::vector<Game> left = without(g.left(), h);
      if (k.is_atomic()) {
        left.push_back(lower_simple(p, k.value()));
      } else {
        left.insert(left.end(), k.left().begin(), k.left().end());
      }
      return Game::composite(std::move(left), g.right());
    }
  }
  for (Game h : ser.sorted(g.right())) {
    if (h.is_atomic() || is_simple_upper(h)) continue;
    for (Game k : ser.sorted(h.left())) {
      if (!leq_intrinsic(g, k)) continue;
      std::vector<Game> right = without(g.right(), h);
      if (k.is_atomic()) {
        right.push_back(upper_simple(p, k.value()));
      } else {
        right.insert(right.end(), k.right().begin(), k.right().end());
      }
      return Game::composite(g.left(), std::move(right));
    }
  }
  return std::nullopt;
}

class Canonicalizer {
 public:
  explicit Canonicalizer(const CanonicalOptions& options) : options_(options) {}

  Game run(Game g, const std::string& path) {
    if (auto it = memo_.find(g.id()); it != memo_.end()) return it->second;
    if (g.is_atomic()) return g;
    charge();
    auto child = [&](const std::vector<Game>& opts, char side) {
      std::vector<Game> out;
      const auto order = options_.record_paths ? ser_.sorted(opts) : opts;
      for (std::size_t i = 0; i < order.size(); ++i) {
        std::string sub = options_.record_paths ? extend(path, side, i) : std::string();
        out.push_back(run(order[i], sub));
      }
      return out;
    };
    std::vector<Game> left = child(g.left(), 'L');
    std::vector<Game> right = child(g.right(), 'R');
    Game cur = Game::composite(std::move(left), std::move(right));
    if (auto it = memo_.find(cur.id()); it != memo_.end()) {
      memo_.emplace(g.id(), it->second);
      return it->second;
    }
    const Game rebuilt = cur;

    for (;;) {
      charge();
      std::optional<Game> next;
      StepKind kind;
      if (options_.order == RewriteOrder::DominatedFirst) {
        if ((next = remove_one_dominated(cur, ser_))) kind = StepKind::DominatedRemoval;
        else if ((next = bypass_one(cur, ser_))) kind = StepKind::ReversibleBypass;
      } else {
        if ((next = bypass_one(cur, ser_))) kind = StepKind::ReversibleBypass;
        else if ((next = remove_one_dominated(cur, ser_))) kind = StepKind::DominatedRemoval;
      }
      if (!next) break;
      trace_.steps.push_back({kind, display(path), cur, *next});
      cur = *next;
    }
    if (is_atomize_shape(cur)) {
      Game x = Game::atom(cur.over(), cur.left().front().right().front().value());
      trace_.steps.push_back({StepKind::AtomizeCollapse, display(path), cur, x});
      cur = x;
    }
    memo_.emplace(g.id(), cur);
    memo_.emplace(rebuilt.id(), cur);
    return cur;
  }

  SimplificationTrace take_trace() { return std::move(trace_); }

 private:
  static std::string extend(const std::string& path, char side, std::size_t i) {
    return (path.empty() ? "" : path + ".") + side + std::to_string(i);
  }
  static std::string display(const std::string& path) { return path.empty() ? "." : path; }

  CanonicalOptions options_;
  Serializer ser_;
  SimplificationTrace trace_;
  std::unordered_map<std::uint32_t, Game> memo_;
};

}  // namespace

const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::DominatedRemoval: return "dominated-removal";
    case StepKind::ReversibleBypass: return "reversible-bypass";
    case StepKind::AtomizeCollapse: return "atomize-collapse";
  }
  return "?";
}

std::string SimplificationTrace::format() const {
  std::string out;
  for (const auto& s : steps)
    out += std::string(to_string(s.kind)) + " " + s.path + " " + serialize(s.before) + " -> " +
           serialize(s.after) + "\n";
  return out;
}

bool is_simple_lower(Game g) {
  return !g.is_atomic() && g.left().size() == 1 && g.right().size() == 1 &&
         g.left()[0].is_atomic() && g.left()[0].value() == g.over()->bottom() && g.right()[0].is_atomic();
}

bool is_simple_upper(Game g) {
  return !g.is_atomic() && g.left().size() == 1 && g.right().size() == 1 &&
         g.right()[0].is_atomic() && g.right()[0].value() == g.over()->top() && g.left()[0].is_atomic();
}

bool is_atomize_shape(Game g) {
  if (g.is_atomic() || g.left().size() != 1 || g.right().size() != 1) return false;
  Game lo = g.left()[0], hi = g.right()[0];
  return is_simple_lower(lo) && is_simple_upper(hi) && lo.right()[0] == hi.left()[0];
}

Game remove_dominated(Game g) {
  require_premotive_parity(g);
  if (g.is_atomic()) return g;
  Serializer ser;
  while (auto next = remove_one_dominated(g, ser)) g = *next;
  return g;
}

Game bypass_reversible(Game g) {
  require_premotive_parity(g);
  if (g.is_atomic()) return g;
  Serializer ser;
  while (auto next = bypass_one(g, ser)) g = *next;
  return g;
}

Game collapse_atomize(Game g) {
  std::unordered_map<std::uint32_t, Game> memo;
  std::function<Game(Game)> rec = [&](Game x) -> Game {
    if (x.is_atomic()) return x;
    if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
    std::vector<Game> left, right;
    for (Game y : x.left()) left.push_back(rec(y));
    for (Game y : x.right()) right.push_back(rec(y));
    Game out = Game::composite(std::move(left), std::move(right));
    if (is_atomize_shape(out)) out = out.left()[0].right()[0];
    memo.emplace(x.id(), out);
    return out;
  };
  return rec(g);
}

CanonicalResult canonical_form(Game g, const CanonicalOptions& options) {
  require_premotive_parity(g);
  Canonicalizer c(options);
  CanonicalResult r;
  r.form = c.run(g, "");
  r.trace = c.take_trace();
  return r;
}

bool is_canonical(Game g) {
  for (Game f : followers(g)) {
    if (f.is_atomic()) continue;
    if (is_atomize_shape(f)) return false;
    for (Game a : f.left())
      for (Game b : f.left())
        if (a != b && leq_intrinsic(a, b)) return false;
    for (Game a : f.right())
      for (Game b : f.right())
        if (a != b && leq_intrinsic(b, a)) return false;
    for (Game h : f.left())
      if (!h.is_atomic() && !is_simple_lower(h))
        for (Game k : h.right())
          if (leq_intrinsic(k, f)) return false;
    for (Game h : f.right())
      if (!h.is_atomic() && !is_simple_upper(h))
        for (Game k : h.left())
          if (leq_intrinsic(f, k)) return false;
  }
  return true;
}

Game substitute(Game g, Game from, Game to) {
  std::unordered_map<std::uint32_t, Game> memo;
  std::function<Game(Game)> rec = [&](Game x) -> Game {
    if (x == from) return to;
    if (x.is_atomic()) return x;
    if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
    std::vector<Game> left, right;
    for (Game y : x.left()) left.push_back(rec(y));
    for (Game y : x.right()) right.push_back(rec(y));
    Game out = Game::composite(std::move(left), std::move(right));
    memo.emplace(x.id(), out);
    return out;
  };
  return rec(g);
}

Game replay(Game input, const SimplificationTrace& trace) {
  Game cur = input;
  for (const auto& s : trace.steps) cur = substitute(cur, s.before, s.after);
  return cur;
}

}  // namespace rexcgt
