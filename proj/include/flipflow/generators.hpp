#pragma once

#include <cstdint>

#include "flipflow/digraph.hpp"

namespace flipflow {

Digraph gen_cycle(int n);
Digraph gen_bidirected_cycle(int n);

// Random orientation of a random multigraph whose underlying edge
// connectivity is at least target_ec. Deterministic for a given seed.
Digraph gen_random_ec(int n, int target_ec, std::uint64_t seed);

}  // namespace flipflow
