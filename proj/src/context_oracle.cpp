#include "rexcgt/context_oracle.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <map>

#include "rexcgt/errors.hpp"
#include "rexcgt/order.hpp"

namespace rexcgt {

namespace {

// Subsets of {0..n-1} with 1..w elements, ordered so that the subsets of
// {0..m-1} form a prefix for every m.
std::vector<std::vector<std::uint32_t>> colex_subsets(std::size_t n, int w) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  std::function<void(std::uint32_t, int)> below = [&](std::uint32_t bound, int room) {
    // emits cur plus any subset of {0..bound-1} with at most `room` more elements, top element first
    out.push_back(cur);
    if (room == 0) return;
    for (std::uint32_t m = 0; m < bound; ++m) {
      cur.push_back(m);
      below(m, room - 1);
      cur.pop_back();
    }
  };
  for (std::uint32_t m = 0; m < n; ++m) {
    cur.assign(1, m);
    below(m, w - 1);
  }
  for (auto& s : out) std::sort(s.begin(), s.end());
  return out;
}

std::size_t count_colex(std::size_t n, int w) {
  // number of nonempty subsets of an n-set with at most w elements
  std::size_t total = 0, binom = 1;
  for (int k = 1; k <= w && static_cast<std::size_t>(k) <= n; ++k) {
    binom = binom * (n - k + 1) / k;
    total += binom;
  }
  return total;
}

}  // namespace

struct OracleKernel {
  struct GameIndex {
    std::size_t n = 0;
    std::vector<std::int64_t> atom;  // -1 for composites
    std::vector<std::uint32_t> left_begin, right_begin, opts;  // CSR; left then right per game
  };

  const ContextOracle& o;
  const GameIndex& gi;
  std::size_t words;

  static bool bit(const std::uint64_t* v, std::size_t i) { return (v[i >> 6] >> (i & 63)) & 1; }
  static void set(std::uint64_t* v, std::size_t i) { v[i >> 6] |= std::uint64_t{1} << (i & 63); }

  // row layout: F words then S words
  void atomic_row(Element f, std::uint64_t* row) const {
    std::memset(row, 0, 2 * words * sizeof(std::uint64_t));
    std::uint64_t* F = row;
    std::uint64_t* S = row + words;
    const auto& table = o.map_tables_[f];
    for (std::size_t g = 0; g < gi.n; ++g) {
      bool fv, sv;
      if (gi.atom[g] >= 0) {
        fv = sv = table[gi.atom[g]] != 0;
      } else {
        fv = false;
        for (std::uint32_t k = gi.left_begin[g]; k < gi.right_begin[g] && !fv; ++k) fv = bit(S, gi.opts[k]);
        sv = true;
        for (std::uint32_t k = gi.right_begin[g]; k < gi.left_begin[g + 1] && sv; ++k) sv = bit(F, gi.opts[k]);
      }
      if (fv) set(F, g);
      if (sv) set(S, g);
    }
  }

  void composite_row(const std::vector<const std::uint64_t*>& left_rows,
                     const std::vector<const std::uint64_t*>& right_rows, std::uint64_t* row,
                     std::vector<std::uint64_t>& scratch) const {
    scratch.assign(2 * words, 0);
    std::uint64_t* A = scratch.data();
    std::uint64_t* B = scratch.data() + words;
    for (const auto* r : left_rows)
      for (std::size_t k = 0; k < words; ++k) A[k] |= r[words + k];
    for (std::size_t k = 0; k < words; ++k) B[k] = ~std::uint64_t{0};
    for (const auto* r : right_rows)
      for (std::size_t k = 0; k < words; ++k) B[k] &= r[k];
    std::memset(row, 0, 2 * words * sizeof(std::uint64_t));
    std::uint64_t* F = row;
    std::uint64_t* S = row + words;
    for (std::size_t g = 0; g < gi.n; ++g) {
      bool fv = bit(A, g), sv = bit(B, g);
      if (gi.atom[g] < 0) {
        for (std::uint32_t k = gi.left_begin[g]; k < gi.right_begin[g] && !fv; ++k) fv = bit(S, gi.opts[k]);
        for (std::uint32_t k = gi.right_begin[g]; k < gi.left_begin[g + 1] && sv; ++k) sv = bit(F, gi.opts[k]);
      }
      if (fv) set(F, g);
      if (sv) set(S, g);
    }
  }
};

ContextOracle::ContextOracle(PosetRef over, int max_depth, int max_width)
    : over_(std::move(over)), max_depth_(max_depth), max_width_(max_width) {
  if (max_depth < 0 || max_width < 1) throw InputError("oracle bounds must be depth >= 0, width >= 1");
  HomPoset hom = enumerate_monotone_maps(over_, Poset::boolean());
  hom_poset_ = hom.poset;
  map_tables_.resize(hom.poset->size());
  for (Element f = 0; f < hom.poset->size(); ++f) {
    const auto& m = hom.map_at(f);
    for (Element a = 0; a < over_->size(); ++a) map_tables_[f].push_back(m(a) == Poset::boolean()->top());
  }

  // Layer sizes: items below layer d are contexts of layers < d.
  std::size_t items = hom.poset->size();
  std::size_t previous_subsets = 0;
  layers_.push_back(Layer{0, 0, 0});
  total_contexts_ = items;
  std::size_t next_index = items;
  for (int d = 1; d <= max_depth; ++d) {
    std::size_t sc = count_colex(items, max_width);
    Layer layer{next_index, sc, previous_subsets};
    layers_.push_back(layer);
    std::size_t fresh = sc * sc - previous_subsets * previous_subsets;
    charge(fresh);
    total_contexts_ += fresh;
    if (d < max_depth) {
      items += fresh;
      next_index = items;
    }
    previous_subsets = sc;
  }
  if (max_depth >= 1) {
    std::size_t items_below_top = layers_.back().first_index;
    subsets_ = colex_subsets(items_below_top, max_width);
  }
}

namespace {

struct ItemRef {
  std::size_t layer;
  std::size_t i, j;
};

}  // namespace

void ContextOracle::evaluate(const std::vector<Game>& games, Exec exec) {
  // Index all followers so options precede their parents.
  OracleKernel::GameIndex gi;
  std::unordered_map<std::uint32_t, std::uint32_t> index;
  std::vector<Game> order;
  for (Game g : games) {
    if (g.over() != over_) throw InputError("game is not over the oracle's poset");
    for (Game f : followers(g, true))
      if (index.emplace(f.id(), static_cast<std::uint32_t>(order.size())).second) order.push_back(f);
  }
  gi.n = order.size();
  gi.atom.resize(gi.n);
  gi.left_begin.resize(gi.n + 1);
  gi.right_begin.resize(gi.n);
  for (std::size_t k = 0; k < gi.n; ++k) {
    Game g = order[k];
    gi.atom[k] = g.is_atomic() ? static_cast<std::int64_t>(g.value()) : -1;
    gi.left_begin[k] = static_cast<std::uint32_t>(gi.opts.size());
    if (!g.is_atomic())
      for (Game x : g.left()) gi.opts.push_back(index.at(x.id()));
    gi.right_begin[k] = static_cast<std::uint32_t>(gi.opts.size());
    if (!g.is_atomic())
      for (Game x : g.right()) gi.opts.push_back(index.at(x.id()));
  }
  gi.left_begin[gi.n] = static_cast<std::uint32_t>(gi.opts.size());

  const std::size_t words = (gi.n + 63) / 64;
  const std::size_t row_words = 2 * words;
  OracleKernel kernel{*this, gi, words};

  // Rows of stored items (every layer below the top one).
  const std::size_t item_count = max_depth_ >= 1 ? layers_.back().first_index : 0;
  const std::size_t stored = max_depth_ >= 1 ? item_count : hom_poset_->size();
  std::vector<std::uint64_t> item_rows(stored * row_words);
  std::vector<std::uint64_t> scratch;
  std::vector<const std::uint64_t*> lrows, rrows;
  for (Element f = 0; f < hom_poset_->size(); ++f) kernel.atomic_row(f, &item_rows[f * row_words]);
  std::size_t item = hom_poset_->size();
  for (int d = 1; d < max_depth_; ++d) {
    const Layer& L = layers_[d];
    for (std::size_t i = 0; i < L.subset_count; ++i)
      for (std::size_t j = 0; j < L.subset_count; ++j) {
        if (i < L.previous_subsets && j < L.previous_subsets) continue;
        lrows.clear();
        rrows.clear();
        for (auto s : subsets_[i]) lrows.push_back(&item_rows[s * row_words]);
        for (auto s : subsets_[j]) rrows.push_back(&item_rows[s * row_words]);
        kernel.composite_row(lrows, rrows, &item_rows[item * row_words], scratch);
        ++item;
      }
  }

  // Distinct rows with the first context index that produced each.
  std::unordered_map<std::string, std::uint32_t> distinct;
  auto key_of = [&](const std::uint64_t* row) {
    return std::string(reinterpret_cast<const char*>(row), row_words * sizeof(std::uint64_t));
  };
  auto record = [](std::unordered_map<std::string, std::uint32_t>& m, std::string key, std::uint32_t ctx) {
    auto [it, fresh] = m.emplace(std::move(key), ctx);
    if (!fresh && ctx < it->second) it->second = ctx;
  };
  for (std::size_t k = 0; k < stored; ++k) record(distinct, key_of(&item_rows[k * row_words]), static_cast<std::uint32_t>(k));

  if (max_depth_ >= 1) {
    const Layer& top = layers_.back();
    const std::size_t sc = top.subset_count;
    const std::size_t prev = top.previous_subsets;
    const long long total_pairs = static_cast<long long>(sc * sc);
    auto do_pair = [&](long long p, std::vector<std::uint64_t>& row, std::vector<std::uint64_t>& scr,
                       std::vector<const std::uint64_t*>& lr, std::vector<const std::uint64_t*>& rr,
                       std::unordered_map<std::string, std::uint32_t>& out) {
      std::size_t i = static_cast<std::size_t>(p) / sc, j = static_cast<std::size_t>(p) % sc;
      if (i < prev && j < prev) return;
      lr.clear();
      rr.clear();
      for (auto s : subsets_[i]) lr.push_back(&item_rows[s * row_words]);
      for (auto s : subsets_[j]) rr.push_back(&item_rows[s * row_words]);
      kernel.composite_row(lr, rr, row.data(), scr);
      record(out, key_of(row.data()), static_cast<std::uint32_t>(top.first_index + p));
    };
    if (exec == Exec::Serial) {
      std::vector<std::uint64_t> row(row_words);
      for (long long p = 0; p < total_pairs; ++p) do_pair(p, row, scratch, lrows, rrows, distinct);
    } else {
#pragma omp parallel
      {
        std::unordered_map<std::string, std::uint32_t> local;
        std::vector<std::uint64_t> row(row_words), scr;
        std::vector<const std::uint64_t*> lr, rr;
#pragma omp for schedule(static) nowait
        for (long long p = 0; p < total_pairs; ++p) do_pair(p, row, scr, lr, rr, local);
#pragma omp critical
        for (auto& [k, v] : local) record(distinct, k, v);
      }
    }
  }

  std::vector<std::pair<std::uint32_t, const std::string*>> rows;
  for (const auto& [k, v] : distinct) rows.emplace_back(v, &k);
  std::sort(rows.begin(), rows.end());
  row_context_.clear();
  for (auto& r : rows) row_context_.push_back(r.first);

  // Per-game profile over the distinct rows.
  const std::size_t R = rows.size();
  const std::size_t pwords = (R + 63) / 64;
  std::map<std::vector<std::uint64_t>, std::size_t> by_profile;
  profiles_.clear();
  profile_of_game_.clear();
  for (std::size_t g = 0; g < gi.n; ++g) {
    std::vector<std::uint64_t> prof(2 * pwords, 0);
    for (std::size_t r = 0; r < R; ++r) {
      const auto* row = reinterpret_cast<const std::uint64_t*>(rows[r].second->data());
      if (OracleKernel::bit(row, g)) OracleKernel::set(prof.data(), r);
      if (OracleKernel::bit(row + words, g)) OracleKernel::set(prof.data() + pwords, r);
    }
    auto [it, fresh] = by_profile.emplace(std::move(prof), profiles_.size());
    if (fresh) profiles_.push_back(it->first);
    profile_of_game_[order[g].id()] = it->second;
  }
}

OracleVerdict ContextOracle::leq(Game g, Game h) const {
  auto pg = profile_of_game_.find(g.id()), ph = profile_of_game_.find(h.id());
  if (pg == profile_of_game_.end() || ph == profile_of_game_.end())
    throw std::logic_error("oracle queried on a game it has not evaluated");
  const auto& a = profiles_[pg->second];
  const auto& b = profiles_[ph->second];
  const std::size_t pwords = a.size() / 2;
  std::size_t best = row_context_.size();
  for (std::size_t half = 0; half < 2; ++half)
    for (std::size_t k = 0; k < pwords; ++k) {
      std::uint64_t bad = a[half * pwords + k] & ~b[half * pwords + k];
      if (bad) {
        best = std::min(best, k * 64 + static_cast<std::size_t>(__builtin_ctzll(bad)));
        break;
      }
    }
  OracleVerdict v;
  if (best < row_context_.size()) {
    v.leq = false;
    v.witness = serialize(context_game(row_context_[best]));
  }
  return v;
}

Game ContextOracle::context_game(std::size_t index) const {
  const std::size_t atoms = hom_poset_->size();
  if (index < atoms) return Game::atom(hom_poset_, static_cast<Element>(index));
  // Locate the layer holding `index`.
  std::size_t d = layers_.size() - 1;
  while (d > 0 && index < layers_[d].first_index) --d;
  const Layer& L = layers_[d];
  std::size_t i, j;
  if (d + 1 == layers_.size()) {
    std::size_t p = index - L.first_index;
    i = p / L.subset_count;
    j = p % L.subset_count;
  } else {
    // Stored layers skip pairs already present below.
    std::size_t k = index - L.first_index;
    for (i = 0;; ++i) {
      std::size_t row_len = i < L.previous_subsets ? L.subset_count - L.previous_subsets : L.subset_count;
      if (k < row_len) {
        j = i < L.previous_subsets ? L.previous_subsets + k : k;
        break;
      }
      k -= row_len;
    }
  }
  std::vector<Game> left, right;
  for (auto s : subsets_[i]) left.push_back(context_game(s));
  for (auto s : subsets_[j]) right.push_back(context_game(s));
  return Game::composite(std::move(left), std::move(right));
}

OracleVerdict leq_contextual_oracle(Game g, Game h, int max_depth, int max_width) {
  if (g.over() != h.over()) throw InputError("cannot compare games over different posets");
  ContextOracle oracle(g.over(), max_depth, max_width);
  oracle.evaluate({g, h});
  return oracle.leq(g, h);
}

}  // namespace rexcgt
