#include "uc/dp_graph.hpp"

#include <algorithm>
#include <cmath>

namespace uc {

namespace {
constexpr double kTol = 1e-9;
}

int StateGraph::arc_id(int i, int j) const {
    const auto& row = succ[i];
    auto it = std::lower_bound(row.begin(), row.end(), j);
    if (it == row.end() || *it != j) return -1;
    return arc_offset[i] + static_cast<int>(it - row.begin());
}

StateGraph build_state_graph(const GeneratorParams& params, const ValueGrid& grid) {
    validate_params(params);
    const auto& levels = grid.positive_values;
    const int m = static_cast<int>(levels.size());
    const int L = params.L, ell = params.ell;

    StateGraph g;
    g.grid_variant = grid.variant;

    // id 0: source (the pre-horizon state, offline long enough to start).
    // ids 1..ell: offline chain by duration. Online states follow, duration-
    // major then level-ascending; duration 1 carries the start flag.
    g.nodes.push_back({0.0, 0, 0, ell, 0});
    for (int d = 1; d <= ell; ++d)
        g.nodes.push_back({0.0, 0, 0, d, static_cast<int>(g.nodes.size())});
    for (int d = 1; d <= L; ++d)
        for (int i = 0; i < m; ++i)
            g.nodes.push_back({levels[i], 1, d == 1 ? 1 : 0, d,
                               static_cast<int>(g.nodes.size())});

    auto online_id = [&](int d, int level_idx) { return ell + 1 + (d - 1) * m + level_idx; };
    const int off_deep = ell;  // offline node with saturated duration

    g.succ.resize(g.node_count());
    auto push_starts = [&](std::vector<int>& row) {
        for (int i = 0; i < m; ++i)
            if (levels[i] <= params.v_bar + kTol) row.push_back(online_id(1, i));
    };

    g.succ[0].push_back(off_deep);
    push_starts(g.succ[0]);
    for (int d = 1; d < ell; ++d) g.succ[d].push_back(d + 1);
    g.succ[off_deep].push_back(off_deep);
    push_starts(g.succ[off_deep]);

    for (int d = 1; d <= L; ++d) {
        for (int i = 0; i < m; ++i) {
            auto& row = g.succ[online_id(d, i)];
            if (d == L && levels[i] <= params.v_bar + kTol)
                row.push_back(1);  // shutdown; the final ramp cap gates it
            int to_d = std::min(d + 1, L);
            for (int j = 0; j < m; ++j)
                if (std::abs(levels[j] - levels[i]) <= params.v + kTol)
                    row.push_back(online_id(to_d, j));
        }
    }

    g.pred.resize(g.node_count());
    g.arc_offset.resize(g.node_count() + 1, 0);
    for (int i = 0; i < g.node_count(); ++i) {
        g.arc_offset[i] = static_cast<int>(g.arcs.size());
        for (int j : g.succ[i]) {
            g.arcs.push_back({i, j});
            g.pred[j].push_back(i);
        }
    }
    g.arc_offset[g.node_count()] = static_cast<int>(g.arcs.size());
    return g;
}

std::pair<Schedule, GraphValueTable> solve_graph_dp(const DetInstance& inst,
                                                    const StateGraph& graph) {
    if (inst.startup.mode != StartupProfile::Mode::constant)
        throw ValidationError("state-graph recursion requires constant start/stop costs");
    const int T = inst.params.T;
    const int N = graph.node_count();
    const double su = inst.startup.su, sd = inst.startup.sd;

    GraphValueTable vt;
    vt.T = T;
    vt.F.assign(T, std::vector<double>(N, 0.0));
    vt.best.assign(T, std::vector<int>(N, -1));

    // F[t-1][i]: cost of periods t..T given state i at t-1. Every node keeps
    // at least one successor, so the minimum below is always attained.
    for (int t = T; t >= 1; --t) {
        const std::vector<double>* next = t < T ? &vt.F[t] : nullptr;
        for (int i = 0; i < N; ++i) {
            double best = 0;
            int arg = -1;
            for (int j : graph.succ[i]) {
                double e = eval_cost(inst.cost, t, graph.nodes[j].x, graph.nodes[j].y);
                if (graph.arc_starts(i, j)) e += su;
                if (graph.arc_stops(i, j)) e += sd;
                if (next) e += (*next)[j];
                if (arg < 0 || e < best) {
                    best = e;
                    arg = j;
                }
            }
            vt.F[t - 1][i] = best;
            vt.best[t - 1][i] = arg;
        }
    }

    Schedule s;
    s.x.assign(T, 0.0);
    s.y.assign(T, 0);
    s.u.assign(T, 0);
    s.objective = vt.F[0][StateGraph::source];
    int i = StateGraph::source;
    for (int t = 1; t <= T; ++t) {
        int j = vt.best[t - 1][i];
        s.x[t - 1] = graph.nodes[j].x;
        s.y[t - 1] = graph.nodes[j].y;
        s.u[t - 1] = graph.arc_starts(i, j) ? 1 : 0;
        i = j;
    }
    return {std::move(s), std::move(vt)};
}

}  // namespace uc
