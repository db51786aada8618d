#pragma once

#include <random>

#include "uc/model.hpp"
#include "uc/tree.hpp"

namespace uc {

// Seeded generators for randomized tests and benchmarks. Every draw goes
// through the passed-in engine, so a fixed seed reproduces the instance
// exactly on any platform (mt19937_64 plus explicit integer arithmetic;
// no distribution objects with unspecified algorithms).

// Small deterministic instance suitable for exhaustive checking:
// T in [2,6], constant start/stop costs, piecewise cost with K <= 2,
// parameters redrawn until the deterministic candidate grid has aleph <= 6.
DetInstance random_small_det(std::mt19937_64& rng);

// Scenario tree with N <= 12 nodes, K = 1 cost pieces, constant costs,
// random branching, redrawn until the stochastic grid has aleph <= 5.
ScenarioTree random_small_tree(std::mt19937_64& rng);

// Larger instances for timing runs. K controls cost pieces per period.
DetInstance bench_det_instance(int T, int K, std::mt19937_64& rng);

// Complete binary tree with 2^depth - 1 nodes sharing one generator.
ScenarioTree bench_binary_tree(int depth, std::mt19937_64& rng);

}  // namespace uc
