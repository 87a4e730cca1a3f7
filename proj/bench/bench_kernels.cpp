// Serial vs OpenMP timings for the parallel kernels.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include <omp.h>

#include "rexcgt/errors.hpp"
#include "rexcgt/context_oracle.hpp"
#include "rexcgt/enumerate.hpp"
#include "rexcgt/gameprops.hpp"
#include "rexcgt/kernels.hpp"
#include "rexcgt/rexboard.hpp"

using namespace rexcgt;

static double seconds(const std::function<void()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

static void row(const char* name, const std::function<void(Exec)>& f) {
  double s = seconds([&] { f(Exec::Serial); });
  double p = seconds([&] { f(Exec::Parallel); });
  std::printf("%-22s serial %8.3f s  parallel %8.3f s  speedup %5.2fx\n", name, s, p, s / p);
}

int main() {
  BudgetScope budget(50'000'000'000ULL);
  std::printf("threads: %d\n", omp_get_max_threads());

  auto board = load_position(std::string(REXCGT_DATA_DIR) + "/decomposed.board");
  row("completion_partitions", [&](Exec e) {
    for (int i = 0; i < 20; ++i) kernels::completion_partitions(board, e);
  });

  std::mt19937_64 rng(7);
  const std::size_t n = 13;
  std::vector<std::uint8_t> payoff(std::size_t{1} << n);
  for (auto& v : payoff) v = rng() & 1;
  row("retrograde (13 cells)", [&](Exec e) { kernels::retrograde(n, payoff, e); });

  std::vector<Game> games;
  for (Game g : enumerate_forms(Poset::boolean(), 2, 2))
    if (g.parity() != Parity::None && is_premotive(g)) games.push_back(g);
  row("context oracle (2,2)", [&](Exec e) {
    ContextOracle oracle(Poset::boolean(), 2, 2);
    oracle.evaluate(games, e);
  });
}
