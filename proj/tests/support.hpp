#pragma once

// Independent reference implementations used as test oracles. They work on
// plain trees parsed from text and share no code with the library.

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace ref {

struct Tree {
  std::string atom;  // empty for composites
  std::vector<Tree> left, right;
};

inline Tree parse(const std::string& s, std::size_t& i) {
  Tree t;
  if (s[i] == '{') {
    ++i;
    bool right = false;
    for (;;) {
      (right ? t.right : t.left).push_back(parse(s, i));
      char c = s[i++];
      if (c == '|') right = true;
      else if (c == '}') break;
    }
    return t;
  }
  int parens = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '(') ++parens;
    if (c == ')') --parens;
    if (parens == 0 && (c == ',' || c == '|' || c == '}')) break;
    t.atom += c;
    ++i;
  }
  return t;
}

inline Tree parse(const std::string& s) {
  std::size_t i = 0;
  return parse(s, i);
}

inline std::string print(const Tree& t) {
  if (t.right.empty() && t.left.empty()) return t.atom;
  auto side = [](const std::vector<Tree>& v) {
    std::set<std::string> names;
    for (const auto& x : v) names.insert(print(x));
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "" : ",") + n;
    return out;
  };
  return "{" + side(t.left) + "|" + side(t.right) + "}";
}

// The four-case sum. `unit_left`/`unit_right` mark operands over the
// one-element poset, whose atoms disappear from pair names.
inline Tree sum(const Tree& g, const Tree& h, bool unit_left, bool unit_right) {
  bool ga = g.left.empty(), ha = h.left.empty();
  Tree t;
  if (ga && ha) {
    if (unit_left) t.atom = h.atom;
    else if (unit_right) t.atom = g.atom;
    else t.atom = "(" + g.atom + "," + h.atom + ")";
    return t;
  }
  if (!ga)
    for (const auto& x : g.left) t.left.push_back(sum(x, h, unit_left, unit_right));
  if (!ha)
    for (const auto& x : h.left) t.left.push_back(sum(g, x, unit_left, unit_right));
  if (!ga)
    for (const auto& x : g.right) t.right.push_back(sum(x, h, unit_left, unit_right));
  if (!ha)
    for (const auto& x : h.right) t.right.push_back(sum(g, x, unit_left, unit_right));
  return t;
}

// Applies an atom renaming.
inline Tree rename(const Tree& g, const std::function<std::string(const std::string&)>& f) {
  Tree t;
  if (g.left.empty()) {
    t.atom = f(g.atom);
    return t;
  }
  for (const auto& x : g.left) t.left.push_back(rename(x, f));
  for (const auto& x : g.right) t.right.push_back(rename(x, f));
  return t;
}

inline Tree dual(const Tree& g) {
  Tree t;
  if (g.left.empty()) {
    const std::string suffix = "^op";
    t.atom = g.atom.size() > 3 && g.atom.ends_with(suffix) ? g.atom.substr(0, g.atom.size() - 3) : g.atom + suffix;
    return t;
  }
  for (const auto& x : g.right) t.left.push_back(dual(x));
  for (const auto& x : g.left) t.right.push_back(dual(x));
  return t;
}

// Plain recursion on the definition of the intrinsic order, no memo.
// `le` compares atom names.
struct Order {
  std::function<bool(const std::string&, const std::string&)> le;

  bool leq(const Tree& g, const Tree& h) const {
    bool ga = g.left.empty(), ha = h.left.empty();
    if (ga && ha) return le(g.atom, h.atom);
    if (!ga)
      for (const auto& x : g.left)
        if (!tri(x, h)) return false;
    if (!ha)
      for (const auto& y : h.right)
        if (!tri(g, y)) return false;
    return true;
  }
  bool tri(const Tree& g, const Tree& h) const {
    if (!g.left.empty())
      for (const auto& x : g.right)
        if (leq(x, h)) return true;
    if (!h.left.empty())
      for (const auto& y : h.left)
        if (leq(g, y)) return true;
    return false;
  }
};

// Who wins a game over bool by direct play: Left wins at an atom iff "top".
inline bool left_wins(const Tree& g, bool left_moves) {
  if (g.left.empty()) return g.atom == "top";
  if (left_moves) {
    for (const auto& x : g.left)
      if (left_wins(x, false)) return true;
    return false;
  }
  for (const auto& x : g.right)
    if (!left_wins(x, true)) return false;
  return true;
}

// Every total table domain -> codomain; keeps those passing `monotone`.
inline std::size_t count_monotone(std::size_t n, std::size_t m,
                                  const std::function<bool(std::size_t, std::size_t)>& dom_le,
                                  const std::function<bool(std::size_t, std::size_t)>& cod_le) {
  std::size_t total = 1, count = 0;
  for (std::size_t i = 0; i < n; ++i) total *= m;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<std::size_t> f(n);
    for (std::size_t i = 0, x = code; i < n; ++i, x /= m) f[i] = x % m;
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b)
        if (dom_le(a, b) && !cod_le(f[a], f[b])) ok = false;
    count += ok;
  }
  return count;
}

}  // namespace ref
