#pragma once

// Data-parallel kernels over board positions. Each kernel has a serial
// path and an OpenMP path with identical results.

#include <cstdint>
#include <vector>

#include "rexcgt/rexboard.hpp"

namespace rexcgt::kernels {

// Black-connectivity partition of the terminals for one completion;
// `empty` lists the region's empty cells.
TerminalPartition partition_of(const RegionPosition& r, const std::vector<std::uint32_t>& empty, Completion c);

// The same for every completion.
std::vector<TerminalPartition> completion_partitions(const RegionPosition& r, Exec exec);

// Values of every position of a set coloring game on n cells, indexed by
// ternary code (digit i: 0 empty, 1 black, 2 white for cell i). Bit 0 is set
// when Left wins with Left to move, bit 1 when Left wins with Right to move.
std::vector<std::uint8_t> retrograde(std::size_t n, const std::vector<std::uint8_t>& payoff, Exec exec);

std::vector<std::uint64_t> powers_of_three(std::size_t n);

}  // namespace rexcgt::kernels
