#pragma once

#include <cstdint>
#include <vector>

#include "uc/grid.hpp"
#include "uc/model.hpp"

namespace uc {

// One commitment state for a single period: generation level, status, start
// flag, and status duration saturated at ell (offline) or L (online).
struct StateNode {
    double x = 0;
    int y = 0;
    int u = 0;
    int d = 0;
    int id = 0;
};

// Fixed transition structure shared by the deterministic and tree solvers.
// Node ids: 0 = source, 1..ell = offline chain by d, then online by (d, x).
struct StateGraph {
    std::vector<StateNode> nodes;
    std::vector<std::vector<int>> succ;
    std::vector<std::vector<int>> pred;
    std::vector<std::pair<int, int>> arcs;  // flattened (i,j), i-major, j ascending
    std::vector<int> arc_offset;            // arcs of node i: [arc_offset[i], arc_offset[i+1])
    ValueGrid::Variant grid_variant = ValueGrid::Variant::custom;

    static constexpr int source = 0;
    int node_count() const { return static_cast<int>(nodes.size()); }
    int arc_count() const { return static_cast<int>(arcs.size()); }
    int arc_id(int i, int j) const;  // -1 when i->j is not an arc

    // Start/stop indicators of the arc i->j. On every graph with L >= 2 these
    // equal j_u and (i_y - j_y + j_u); for L = 1 the node u-flag would recharge
    // the start cost on on->on self-loops, the transition test does not.
    bool arc_starts(int i, int j) const { return nodes[i].y == 0 && nodes[j].y == 1; }
    bool arc_stops(int i, int j) const { return nodes[i].y == 1 && nodes[j].y == 0; }
};

StateGraph build_state_graph(const GeneratorParams& params, const ValueGrid& grid);

// Cost-to-go per (period, previous-period state); argmin drives traceback.
struct GraphValueTable {
    int T = 0;
    std::vector<std::vector<double>> F;   // F[t-1][i], t in [1,T]
    std::vector<std::vector<int>> best;   // chosen successor id
};

// Backward sweep; requires constant start/stop costs. Returns the schedule
// traced from the source and the value table.
std::pair<Schedule, GraphValueTable> solve_graph_dp(const DetInstance& inst,
                                                    const StateGraph& graph);

}  // namespace uc
