#include "rexcgt/census.hpp"

#include <algorithm>
#include <unordered_set>

#include "rexcgt/canonical.hpp"
#include "rexcgt/errors.hpp"
#include "rexcgt/gameprops.hpp"
#include "rexcgt/order.hpp"

namespace rexcgt {

bool qualifies(Game g) { return is_premotive(g) && is_star_antimonotone(g); }

namespace {

std::vector<std::vector<Game>> all_subsets(const std::vector<Game>& items) {
  if (items.size() > 20) throw BudgetExceeded("census option pool too large (" + std::to_string(items.size()) + ")");
  std::vector<std::vector<Game>> out;
  for (std::uint32_t m = 1; m < (1u << items.size()); ++m) {
    std::vector<Game> s;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (m >> i & 1) s.push_back(items[i]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

CensusResult distinct_games(const PosetRef& over, int max_depth, int exhaustive_depth) {
  if (max_depth < 0) throw InputError("census depth must be >= 0");
  CensusResult res;
  std::unordered_set<Game> seen;
  std::vector<std::size_t> class_of;

  auto admit = [&](Game g) {
    if (!seen.insert(g).second || !qualifies(g)) return;
    res.qualifying.push_back(g);
    for (auto& c : res.classes)
      if (equivalent(g, c.representative)) {
        ++c.members;
        return;
      }
    res.classes.push_back({g, Game(), 1});
  };

  for (Element e = 0; e < over->size(); ++e) admit(Game::atom(over, e));
  for (int d = 1; d <= max_depth; ++d) {
    std::vector<Game> pool;
    if (d <= exhaustive_depth) pool = res.qualifying;
    else
      for (const auto& c : res.classes) pool.push_back(c.representative);
    for (Parity p : {Parity::Even, Parity::Odd}) {
      std::vector<Game> side;
      for (Game g : pool)
        if (g.parity() == p) side.push_back(g);
      if (side.empty()) continue;
      const auto subsets = all_subsets(side);
      for (const auto& l : subsets)
        for (const auto& r : subsets) {
          charge();
          ++res.candidates;
          admit(Game::composite(l, r));
        }
    }
  }
  for (auto& c : res.classes) c.canonical = canonical_form(c.representative, {RewriteOrder::DominatedFirst, false}).form;
  std::sort(res.classes.begin(), res.classes.end(), [](const CensusClass& a, const CensusClass& b) {
    return serialize(a.canonical) < serialize(b.canonical);
  });
  return res;
}

}  // namespace rexcgt
