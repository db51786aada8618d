#pragma once

#include <string>
#include <vector>

#include "uc/model.hpp"
#include "uc/tree.hpp"

namespace uc {

// Brute-force reference answers. Everything here enumerates rather than
// recurses over value functions, so results are independent of the solver
// paths and safe to freeze into tests. Guards are hard errors: a silently
// truncated enumeration would vouch for nothing.

// All feasible commitment patterns of length T, lexicographic (0 before 1).
// Runs shorter than L are allowed only when they touch the horizon end;
// gaps shorter than ell are never allowed (initial downtime is s0 >= ell).
std::vector<std::vector<int>> feasible_schedules(const GeneratorParams& params);

struct OracleResult {
    double objective = 0.0;
    std::vector<double> x;
    std::vector<int> y;
    std::vector<int> u;
    long long visited = 0;  // complete candidates costed
};

// Exhaustive minimum over feasible_schedules x grid dispatch choices.
// Requires T <= 20 for the pattern pass and T <= 6, aleph <= 6 overall.
OracleResult enumerate_det(const DetInstance& inst, const std::vector<double>& grid_values);

struct TreeOracleResult {
    double objective = 0.0;
    std::vector<double> x;  // by node id
    std::vector<int> y;
    std::vector<int> u;
    long long visited = 0;
};

// Exhaustive minimum over per-node (x,y) assignments on the tree, feasible
// along every root-to-leaf path. Requires N <= 12, aleph <= 5.
TreeOracleResult enumerate_tree(const ScenarioTree& tree,
                                const std::vector<double>& grid_values);

}  // namespace uc
