#include "rexcgt/gameform.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>

#include "rexcgt/errors.hpp"

namespace rexcgt {

struct GameNode {
  PosetRef over;
  std::int64_t atom = -1;
  std::vector<Game> left;
  std::vector<Game> right;
  std::uint32_t id = 0;
  std::uint64_t fingerprint = 0;
  Parity parity = Parity::Even;
  std::uint32_t depth = 0;
};

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  v *= 0xff51afd7ed558ccdULL;
  v ^= v >> 33;
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

int structural_compare(Game a, Game b);

int compare_lists(const std::vector<Game>& x, const std::vector<Game>& y) {
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (int c = structural_compare(x[i], y[i])) return c;
  return 0;
}

int structural_compare(Game a, Game b) {
  if (a == b) return 0;
  if (a.fingerprint() != b.fingerprint()) return a.fingerprint() < b.fingerprint() ? -1 : 1;
  if (a.is_atomic() != b.is_atomic()) return a.is_atomic() ? -1 : 1;
  if (a.over() != b.over()) {
    if (a.over()->name() != b.over()->name()) return a.over()->name() < b.over()->name() ? -1 : 1;
    return a.over()->fingerprint() < b.over()->fingerprint() ? -1 : 1;
  }
  if (a.is_atomic()) return a.value() < b.value() ? -1 : 1;
  if (int c = compare_lists(a.left(), b.left())) return c;
  return compare_lists(a.right(), b.right());
}

}  // namespace

class GameTable {
 public:
  static Game intern(GameNode&& proto) {
    GameTable& table = instance();
    std::lock_guard<std::mutex> lock(table.mutex_);
    auto [lo, hi] = table.index_.equal_range(proto.fingerprint);
    for (auto it = lo; it != hi; ++it) {
      const GameNode* n = it->second;
      if (n->over == proto.over && n->atom == proto.atom && n->left == proto.left &&
          n->right == proto.right)
        return Game(n);
    }
    proto.id = static_cast<std::uint32_t>(table.nodes_.size());
    table.nodes_.push_back(std::move(proto));
    const GameNode* n = &table.nodes_.back();
    table.index_.emplace(n->fingerprint, n);
    return Game(n);
  }

  static std::size_t count() {
    GameTable& table = instance();
    std::lock_guard<std::mutex> lock(table.mutex_);
    return table.nodes_.size();
  }

 private:
  static GameTable& instance() {
    static GameTable table;
    return table;
  }

  std::mutex mutex_;
  std::deque<GameNode> nodes_;
  std::unordered_multimap<std::uint64_t, const GameNode*> index_;
};

const char* to_string(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::None: return "none";
  }
  return "none";
}

Game Game::atom(const PosetRef& over, Element value) {
  if (value >= over->size()) throw InputError("atom outside poset '" + over->name() + "'");
  GameNode n;
  n.over = over;
  n.atom = value;
  n.fingerprint = mix(mix(over->fingerprint(), 0xA7), value);
  return GameTable::intern(std::move(n));
}

Game Game::atom(const PosetRef& over, std::string_view name) { return atom(over, over->element(name)); }

Game Game::composite(std::vector<Game> left, std::vector<Game> right) {
  if (left.empty() || right.empty()) throw InputError("composite game needs nonempty option sets");
  const PosetRef& over = left.front().over();
  for (const auto* side : {&left, &right})
    for (Game g : *side)
      if (g.over() != over) throw InputError("options of a game live over different posets");
  auto normalize = [](std::vector<Game>& v) {
    std::sort(v.begin(), v.end(), structural_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  normalize(left);
  normalize(right);

  GameNode n;
  n.over = over;
  std::uint64_t h = mix(over->fingerprint(), 0xC0);
  bool all_odd = true, all_even = true;
  std::uint32_t depth = 0;
  for (const auto* side : {&left, &right}) {
    for (Game g : *side) {
      h = mix(h, g.fingerprint());
      all_odd = all_odd && g.parity() == Parity::Odd;
      all_even = all_even && g.parity() == Parity::Even;
      depth = std::max(depth, g.depth() + 1);
    }
    h = mix(h, 0x7C);
  }
  n.fingerprint = h;
  n.parity = all_odd ? Parity::Even : all_even ? Parity::Odd : Parity::None;
  n.depth = depth;
  n.left = std::move(left);
  n.right = std::move(right);
  return GameTable::intern(std::move(n));
}

bool Game::is_atomic() const { return node_->atom >= 0; }
Element Game::value() const {
  if (node_->atom < 0) throw std::logic_error("value() of a composite game");
  return static_cast<Element>(node_->atom);
}
const PosetRef& Game::over() const { return node_->over; }
const std::vector<Game>& Game::left() const { return node_->left; }
const std::vector<Game>& Game::right() const { return node_->right; }
std::uint32_t Game::id() const { return node_->id; }
std::uint64_t Game::fingerprint() const { return node_->fingerprint; }
Parity Game::parity() const { return node_->parity; }
std::uint32_t Game::depth() const { return node_->depth; }

bool structural_less(Game a, Game b) { return structural_compare(a, b) < 0; }

Game zero() {
  static const Game z = Game::atom(Poset::unit(), 0);
  return z;
}

Game star() {
  static const Game s = Game::composite({zero()}, {zero()});
  return s;
}

Game lower_simple(const PosetRef& over, Element k) {
  return Game::composite({Game::atom(over, over->bottom())}, {Game::atom(over, k)});
}

Game upper_simple(const PosetRef& over, Element k) {
  return Game::composite({Game::atom(over, k)}, {Game::atom(over, over->top())});
}

Game atomize(const PosetRef& over, Element x) {
  return Game::composite({lower_simple(over, x)}, {upper_simple(over, x)});
}

namespace {

std::uint64_t pair_key(Game a, Game b) { return (std::uint64_t{a.id()} << 32) | b.id(); }

struct SumBuilder {
  PosetRef a, b;
  std::unordered_map<std::uint64_t, Game> memo;

  Game run(Game g, Game h) {
    auto key = pair_key(g, h);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    charge();
    Game out;
    if (g.is_atomic() && h.is_atomic()) {
      out = Game::atom(product(a, b), pair_elements(a, b, g.value(), h.value()));
    } else {
      std::vector<Game> left, right;
      if (!g.is_atomic()) {
        for (Game x : g.left()) left.push_back(run(x, h));
        for (Game x : g.right()) right.push_back(run(x, h));
      }
      if (!h.is_atomic()) {
        for (Game y : h.left()) left.push_back(run(g, y));
        for (Game y : h.right()) right.push_back(run(g, y));
      }
      out = Game::composite(std::move(left), std::move(right));
    }
    memo.emplace(key, out);
    return out;
  }
};

}  // namespace

Game sum(Game g, Game h) {
  SumBuilder b{g.over(), h.over(), {}};
  return b.run(g, h);
}

Game map_game(const MonotoneMap& phi, Game g) {
  if (g.over() != phi.domain())
    throw InputError("map domain '" + phi.domain()->name() + "' does not match game poset '" +
                     g.over()->name() + "'");
  std::unordered_map<std::uint32_t, Game> memo;
  std::function<Game(Game)> rec = [&](Game x) -> Game {
    if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
    charge();
    Game out;
    if (x.is_atomic()) {
      out = Game::atom(phi.codomain(), phi(x.value()));
    } else {
      std::vector<Game> left, right;
      for (Game y : x.left()) left.push_back(rec(y));
      for (Game y : x.right()) right.push_back(rec(y));
      out = Game::composite(std::move(left), std::move(right));
    }
    memo.emplace(x.id(), out);
    return out;
  };
  return rec(g);
}

Game dual(Game g) {
  const PosetRef& a = g.over();
  PosetRef d = dual(a);
  std::unordered_map<std::uint32_t, Game> memo;
  std::function<Game(Game)> rec = [&](Game x) -> Game {
    if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
    Game out;
    if (x.is_atomic()) {
      out = Game::atom(d, dual_element(a, x.value()));
    } else {
      std::vector<Game> left, right;
      for (Game y : x.right()) left.push_back(rec(y));
      for (Game y : x.left()) right.push_back(rec(y));
      out = Game::composite(std::move(left), std::move(right));
    }
    memo.emplace(x.id(), out);
    return out;
  };
  return rec(g);
}

std::vector<Game> followers(Game g, bool postorder) {
  std::vector<Game> out;
  std::unordered_map<std::uint32_t, bool> seen;
  std::function<void(Game)> rec = [&](Game x) {
    if (!seen.emplace(x.id(), true).second) return;
    if (!postorder) out.push_back(x);
    if (!x.is_atomic()) {
      for (Game y : x.left()) rec(y);
      for (Game y : x.right()) rec(y);
    }
    if (postorder) out.push_back(x);
  };
  rec(g);
  return out;
}

std::size_t follower_count(Game g) { return followers(g).size(); }

std::string serialize(Game g) {
  std::unordered_map<std::uint32_t, std::string> memo;
  std::function<const std::string&(Game)> rec = [&](Game x) -> const std::string& {
    if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
    std::string s;
    if (x.is_atomic()) {
      s = x.over()->element_name(x.value());
    } else {
      auto side = [&](const std::vector<Game>& opts) {
        std::vector<std::string> parts;
        for (Game y : opts) parts.push_back(rec(y));
        std::sort(parts.begin(), parts.end());
        std::string joined;
        for (std::size_t i = 0; i < parts.size(); ++i) joined += (i ? "," : "") + parts[i];
        return joined;
      };
      s = "{" + side(x.left()) + "|" + side(x.right()) + "}";
    }
    return memo.emplace(x.id(), std::move(s)).first->second;
  };
  return rec(g);
}

namespace {

class GameParser {
 public:
  GameParser(std::string_view text, const PosetRef& over) : text_(text), over_(over) {}

  Game parse() {
    Game g = game();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw InputError("game expression, column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && static_cast<unsigned char>(text_[pos_]) <= ' ') ++pos_;
  }

  Game game() {
    skip();
    if (pos_ >= text_.size()) fail("expected a game");
    if (text_[pos_] == '{') {
      ++pos_;
      std::vector<Game> left = options('|');
      ++pos_;
      std::vector<Game> right = options('}');
      ++pos_;
      return Game::composite(std::move(left), std::move(right));
    }
    return atom();
  }

  std::vector<Game> options(char close) {
    std::vector<Game> out{game()};
    for (;;) {
      skip();
      if (pos_ >= text_.size()) fail(std::string("expected '") + close + "'");
      if (text_[pos_] == close) return out;
      if (text_[pos_] != ',') fail(std::string("expected ',' or '") + close + "'");
      ++pos_;
      out.push_back(game());
    }
  }

  Game atom() {
    std::size_t start = pos_;
    int parens = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '{' || c == '}' || c == '|' || static_cast<unsigned char>(c) <= ' ') break;
      if (c == ',' && parens == 0) break;
      if (c == '(') ++parens;
      if (c == ')') --parens;
      ++pos_;
    }
    if (pos_ == start) fail("expected an atom name");
    std::string_view name = text_.substr(start, pos_ - start);
    auto e = over_->find(name);
    if (!e) {
      pos_ = start;
      fail("unknown atom '" + std::string(name) + "' for poset '" + over_->name() + "'");
    }
    return Game::atom(over_, *e);
  }

  std::string_view text_;
  const PosetRef& over_;
  std::size_t pos_ = 0;
};

}  // namespace

Game parse_game(std::string_view text, const PosetRef& over) { return GameParser(text, over).parse(); }

std::size_t interned_game_count() { return GameTable::count(); }

}  // namespace rexcgt
