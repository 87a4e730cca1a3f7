#include "rexcgt/enumerate.hpp"

#include <unordered_set>

#include "rexcgt/errors.hpp"

namespace rexcgt {

std::vector<std::vector<Game>> option_subsets(const std::vector<Game>& items, int max_width) {
  std::vector<std::vector<Game>> out;
  std::vector<std::size_t> idx;
  for (int k = 1; k <= max_width && k <= static_cast<int>(items.size()); ++k) {
    idx.resize(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::vector<Game> s;
      for (auto i : idx) s.push_back(items[i]);
      out.push_back(std::move(s));
      int i = k - 1;
      while (i >= 0 && idx[i] == items.size() - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

std::vector<Game> enumerate_forms(const PosetRef& over, int max_depth, int max_width) {
  if (max_depth < 0 || max_width < 1) throw InputError("enumeration bounds must be depth >= 0, width >= 1");
  std::vector<Game> all;
  std::unordered_set<Game> seen;
  for (Element e = 0; e < over->size(); ++e) {
    all.push_back(Game::atom(over, e));
    seen.insert(all.back());
  }
  for (int d = 1; d <= max_depth; ++d) {
    const auto subsets = option_subsets(all, max_width);
    std::vector<Game> level;
    for (const auto& l : subsets)
      for (const auto& r : subsets) {
        charge();
        Game g = Game::composite(l, r);
        if (seen.insert(g).second) level.push_back(g);
      }
    all.insert(all.end(), level.begin(), level.end());
  }
  return all;
}

Game random_form(const PosetRef& over, std::mt19937_64& rng, int max_depth, int max_width,
                 double composite_bias) {
  std::uniform_int_distribution<Element> atom_dist(0, static_cast<Element>(over->size() - 1));
  std::uniform_int_distribution<int> width_dist(1, max_width);
  std::bernoulli_distribution composite(composite_bias);
  if (max_depth <= 0 || !composite(rng)) return Game::atom(over, atom_dist(rng));
  std::vector<Game> left, right;
  for (int i = width_dist(rng); i > 0; --i)
    left.push_back(random_form(over, rng, max_depth - 1, max_width, composite_bias));
  for (int i = width_dist(rng); i > 0; --i)
    right.push_back(random_form(over, rng, max_depth - 1, max_width, composite_bias));
  return Game::composite(std::move(left), std::move(right));
}

}  // namespace rexcgt
