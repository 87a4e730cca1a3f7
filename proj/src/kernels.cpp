#include "rexcgt/kernels.hpp"

#include <numeric>

#include "rexcgt/errors.hpp"

namespace rexcgt::kernels {

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

TerminalPartition partition_of(const RegionPosition& r, const std::vector<std::uint32_t>& empty, Completion c) {
  const std::size_t nc = r.cells.size(), nt = r.terminals.size();
  std::vector<bool> black(nc);
  for (std::size_t i = 0; i < nc; ++i) black[i] = r.stones[i] == Stone::Black;
  for (std::size_t i = 0; i < empty.size(); ++i) black[empty[i]] = (c >> i) & 1;
  UnionFind uf(nc + nt);
  for (std::uint32_t a = 0; a < nc; ++a) {
    if (!black[a]) continue;
    for (std::uint32_t b : r.adjacency[a])
      if (black[b]) uf.unite(a, b);
  }
  for (std::uint32_t t = 0; t < nt; ++t)
    for (std::uint32_t a : r.terminal_cells[t])
      if (black[a]) uf.unite(static_cast<std::uint32_t>(nc + t), a);
  TerminalPartition p;
  p.block.resize(nt);
  std::vector<std::uint32_t> roots;
  for (std::uint32_t t = 0; t < nt; ++t) {
    std::uint32_t root = uf.find(static_cast<std::uint32_t>(nc + t));
    std::uint32_t label = 0;
    while (label < roots.size() && roots[label] != root) ++label;
    if (label == roots.size()) roots.push_back(root);
    p.block[t] = label;
  }
  return p;
}

std::vector<TerminalPartition> completion_partitions(const RegionPosition& r, Exec exec) {
  const auto empty = r.empty_cells();
  if (empty.size() > 30) throw BudgetExceeded("too many empty cells to enumerate completions");
  const long long count = 1LL << empty.size();
  charge(static_cast<std::uint64_t>(count));
  std::vector<TerminalPartition> out(static_cast<std::size_t>(count));
  if (exec == Exec::Serial) {
    for (long long c = 0; c < count; ++c) out[c] = partition_of(r, empty, static_cast<Completion>(c));
  } else {
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < count; ++c) out[c] = partition_of(r, empty, static_cast<Completion>(c));
  }
  return out;
}

std::vector<std::uint64_t> powers_of_three(std::size_t n) {
  std::vector<std::uint64_t> p(n + 1, 1);
  for (std::size_t i = 1; i <= n; ++i) p[i] = p[i - 1] * 3;
  return p;
}

std::vector<std::uint8_t> retrograde(std::size_t n, const std::vector<std::uint8_t>& payoff, Exec exec) {
  if (n > 20) throw BudgetExceeded("too many cells for retrograde analysis");
  const auto pow3 = powers_of_three(n);
  const std::uint64_t total = pow3[n];
  charge(total);
  if (payoff.size() != (std::size_t{1} << n)) throw InputError("payoff table has the wrong size");

  // Bucket codes by the number of filled cells.
  std::vector<std::vector<std::uint64_t>> layers(n + 1);
  std::vector<std::uint32_t> black_mask(total);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t x = code;
    std::uint32_t filled = 0, mask = 0;
    for (std::size_t i = 0; i < n; ++i, x /= 3) {
      auto d = x % 3;
      if (d) ++filled;
      if (d == 1) mask |= 1u << i;
    }
    black_mask[code] = mask;
    layers[filled].push_back(code);
  }

  std::vector<std::uint8_t> value(total, 0);
  auto solve = [&](std::uint64_t code, std::size_t filled) {
    if (filled == n) {
      value[code] = payoff[black_mask[code]] ? 3 : 0;
      return;
    }
    bool left_moves = false, right_moves = true;
    std::uint64_t x = code;
    for (std::size_t i = 0; i < n; ++i, x /= 3) {
      if (x % 3) continue;
      left_moves = left_moves || (value[code + pow3[i]] & 2);
      right_moves = right_moves && (value[code + 2 * pow3[i]] & 1);
    }
    value[code] = static_cast<std::uint8_t>((left_moves ? 1 : 0) | (right_moves ? 2 : 0));
  };
  for (std::size_t k = n + 1; k-- > 0;) {
    const auto& layer = layers[k];
    const long long m = static_cast<long long>(layer.size());
    if (exec == Exec::Serial) {
      for (long long i = 0; i < m; ++i) solve(layer[i], k);
    } else {
#pragma omp parallel for schedule(static)
      for (long long i = 0; i < m; ++i) solve(layer[i], k);
    }
  }
  return value;
}

}  // namespace rexcgt::kernels
