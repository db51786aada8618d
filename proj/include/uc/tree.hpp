#pragma once

#include <string>
#include <vector>

#include "uc/dp_graph.hpp"
#include "uc/model.hpp"

namespace uc {

struct TreeNode {
    int id = 0;
    int parent = -1;  // -1 for the root
    double p = 1;     // probability mass reaching this node
    int t = 1;        // period (root = 1, leaves = T)
    std::vector<int> children;  // ascending ids
};

// Rooted scenario tree. Node ids are dense 0..N-1; probabilities conserve
// along edges (children of m sum to p_m) and every leaf sits at period T.
struct ScenarioTree {
    GeneratorParams params;
    StartupProfile startup;  // constant mode only
    CostModel cost;          // cost.pieces[id] is node id's piece list
    std::vector<TreeNode> nodes;
    int root = 0;

    int N() const { return static_cast<int>(nodes.size()); }
};

// Per-node commitment decisions; expected objective under node probabilities.
struct TreePolicy {
    std::vector<double> x;  // indexed by node id
    std::vector<int> y;
    std::vector<int> u;
    double objective = 0;
};

ScenarioTree parse_tree(const std::string& document);
std::string emit_tree(const ScenarioTree& tree);

// Leaf-to-root sweep of F_m(i) = min_j { E_mij + sum over children F_n(j) },
// E_mij = p_m * (per-period transition cost). Rejects det-built grids: the
// stochastic candidate walks are twice as long.
std::pair<TreePolicy, double> solve_tree_dp(const ScenarioTree& tree,
                                            const StateGraph& graph);

// Names every violated constraint (min-up/down windows, logic, bounds, ramps).
std::vector<std::string> validate_policy(const ScenarioTree& tree,
                                         const TreePolicy& policy);

// Expected cost of a feasible policy.
double policy_cost(const ScenarioTree& tree, const TreePolicy& policy);

}  // namespace uc
