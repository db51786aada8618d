#include "uc/extform.hpp"

#include <algorithm>
#include <cmath>

#include "uc/dispatch.hpp"

namespace uc {

namespace {

constexpr double kBinTol = 1e-9;

// Legal index sets of the interval formulation. beta lives on legal on-
// intervals; gamma on off-gaps between two runs (end a, restart b); theta on
// the terminal window.
bool gamma_legal(const GeneratorParams& p, int a, int b) {
    return a >= p.L && a <= p.T - p.ell - 1 && b >= a + p.ell + 1 && b <= p.T;
}

bool theta_legal(const GeneratorParams& p, int t) {
    return t >= std::max(1, p.T - p.ell) && t <= p.T;
}

std::vector<std::pair<int, int>> maximal_runs(const std::vector<int>& y) {
    std::vector<std::pair<int, int>> runs;
    int T = static_cast<int>(y.size());
    for (int t = 1; t <= T; ++t) {
        if (y[t - 1] == 0) continue;
        int k = t;
        while (k + 1 <= T && y[k] == 1) ++k;
        runs.push_back({t, k});
        t = k;
    }
    return runs;
}

// Piecewise cost attached to one (interval, period) slot: the epigraph value
// at generation q with the interval indicator at beta.
double wcost_value(const CostModel& cost, int s, double q, double beta) {
    const auto& row = cost.pieces.at(s - 1);
    double best = row.front().mu * q + row.front().nu * beta;
    for (size_t i = 1; i < row.size(); ++i)
        best = std::max(best, row[i].mu * q + row[i].nu * beta);
    return best;
}

int as_bit(double v, const char* what) {
    if (std::abs(v) <= kBinTol) return 0;
    if (std::abs(v - 1.0) <= kBinTol) return 1;
    throw ValidationError(std::string(what) + " is fractional: " + std::to_string(v));
}

}  // namespace

IntervalDualSolution build_dual_interval(const Schedule& s, const DetInstance& inst) {
    auto bad = check_schedule(inst, s);
    if (!bad.empty()) throw ValidationError("infeasible schedule: " + bad.front());

    const int T = inst.params.T;
    IntervalDualSolution d;
    d.T = T;
    d.alpha.assign(T, 0.0);
    d.beta.assign(T, std::vector<double>(T, 0.0));
    d.gamma.assign(T, std::vector<double>(T, 0.0));
    d.theta.assign(T, 0.0);
    d.q.assign(T, std::vector<std::vector<double>>(T));

    auto runs = maximal_runs(s.y);
    if (runs.empty()) return d;

    d.alpha[runs.front().first - 1] = 1.0;
    for (size_t r = 0; r < runs.size(); ++r) {
        auto [a, b] = runs[r];
        d.beta[a - 1][b - 1] = 1.0;
        auto& q = d.q[a - 1][b - 1];
        q.assign(b - a + 1, 0.0);
        for (int t = a; t <= b; ++t) q[t - a] = s.x[t - 1];
        if (r + 1 < runs.size()) d.gamma[b - 1][runs[r + 1].first - 1] = 1.0;
    }
    int last_end = runs.back().second;
    if (theta_legal(inst.params, last_end)) d.theta[last_end - 1] = 1.0;
    return d;
}

double dual_objective(const IntervalDualSolution& d, const DetInstance& inst) {
    const auto& p = inst.params;
    double total = 0;
    for (int t = 1; t <= p.T; ++t)
        if (d.alpha[t - 1] != 0)
            total += inst.startup.start_cost(p.s0 + t - 1) * d.alpha[t - 1];
    for (int t = 1; t <= p.T; ++t) {
        for (int k = t; k <= p.T; ++k) {
            if (!interval_legal(p, t, k)) continue;
            double b = d.beta[t - 1][k - 1];
            if (b != 0 && k <= p.T - 1) total += inst.startup.stop_cost(k - t + 1) * b;
            const auto& q = d.q[t - 1][k - 1];
            for (int s = t; s <= k; ++s) {
                double qv = s - t < static_cast<int>(q.size()) ? q[s - t] : 0.0;
                total += wcost_value(inst.cost, s, qv, b);
            }
        }
    }
    for (int a = 1; a <= p.T; ++a)
        for (int b = a; b <= p.T; ++b)
            if (gamma_legal(p, a, b) && d.gamma[a - 1][b - 1] != 0)
                total += inst.startup.start_cost(b - a - 1) * d.gamma[a - 1][b - 1];
    return total;
}

std::vector<RowViolation> check_feasibility(const IntervalDualSolution& d,
                                            const DetInstance& inst, double tol) {
    const auto& p = inst.params;
    const int T = p.T;
    std::vector<RowViolation> out;
    auto flag = [&out](const std::string& row, double residual) {
        out.push_back({row, residual});
    };
    if (d.T != T) {
        flag("horizon mismatch", static_cast<double>(d.T - T));
        return out;
    }

    // Structural zeros first: mass outside the legal index sets.
    for (int t = 1; t <= T; ++t) {
        for (int k = 1; k <= T; ++k) {
            if (!interval_legal(p, t, k) && std::abs(d.beta[t - 1][k - 1]) > tol)
                flag("beta_" + std::to_string(t) + "_" + std::to_string(k) +
                         " outside the legal interval set",
                     d.beta[t - 1][k - 1]);
            if (!gamma_legal(p, t, k) && std::abs(d.gamma[t - 1][k - 1]) > tol)
                flag("gamma_" + std::to_string(t) + "_" + std::to_string(k) +
                         " outside the legal gap set",
                     d.gamma[t - 1][k - 1]);
        }
        if (!theta_legal(p, t) && std::abs(d.theta[t - 1]) > tol)
            flag("theta_" + std::to_string(t) + " outside the terminal window",
                 d.theta[t - 1]);
    }

    double mass = 0;
    for (double a : d.alpha) mass += a;
    if (mass > 1 + tol) flag("start_total", mass - 1);

    for (int t = 1; t <= T; ++t) {
        double r = -d.alpha[t - 1];
        for (int k = t; k <= T; ++k)
            if (interval_legal(p, t, k)) r += d.beta[t - 1][k - 1];
        for (int a = 1; a < t; ++a)
            if (gamma_legal(p, a, t)) r -= d.gamma[a - 1][t - 1];
        if (std::abs(r) > tol) flag("flow_start_" + std::to_string(t), r);
    }
    for (int t = p.L; t <= T - p.ell - 1; ++t) {
        double r = 0;
        for (int k = 1; k <= t; ++k)
            if (interval_legal(p, k, t)) r -= d.beta[k - 1][t - 1];
        for (int b = t + p.ell + 1; b <= T; ++b)
            if (gamma_legal(p, t, b)) r += d.gamma[t - 1][b - 1];
        if (r > tol) flag("flow_gap_" + std::to_string(t), r);
    }
    for (int t = std::max(1, T - p.ell); t <= T; ++t) {
        double r = d.theta[t - 1];
        for (int k = 1; k <= t; ++k)
            if (interval_legal(p, k, t)) r -= d.beta[k - 1][t - 1];
        if (std::abs(r) > tol) flag("flow_end_" + std::to_string(t), r);
    }

    for (int t = 1; t <= T; ++t) {
        if (d.alpha[t - 1] < -tol) flag("alpha_" + std::to_string(t) + " >= 0", d.alpha[t - 1]);
        if (d.theta[t - 1] < -tol) flag("theta_" + std::to_string(t) + " >= 0", d.theta[t - 1]);
        for (int k = 1; k <= T; ++k) {
            if (d.beta[t - 1][k - 1] < -tol)
                flag("beta_" + std::to_string(t) + "_" + std::to_string(k) + " >= 0",
                     d.beta[t - 1][k - 1]);
            if (d.gamma[t - 1][k - 1] < -tol)
                flag("gamma_" + std::to_string(t) + "_" + std::to_string(k) + " >= 0",
                     d.gamma[t - 1][k - 1]);
        }
    }

    for (int t = 1; t <= T; ++t) {
        for (int k = t; k <= T; ++k) {
            if (!interval_legal(p, t, k)) continue;
            double b = d.beta[t - 1][k - 1];
            const auto& q = d.q[t - 1][k - 1];
            auto qv = [&q, t](int s) {
                int i = s - t;
                return i < static_cast<int>(q.size()) ? q[i] : 0.0;
            };
            std::string tk = std::to_string(t) + "_" + std::to_string(k);
            for (int s = t; s <= k; ++s) {
                std::string tks = tk + "_" + std::to_string(s);
                if (qv(s) < p.c_min * b - tol) flag("q_min_" + tks, p.c_min * b - qv(s));
                if (qv(s) > p.c_max * b + tol) flag("q_max_" + tks, qv(s) - p.c_max * b);
            }
            if (qv(t) > p.v_bar * b + tol) flag("q_start_" + tk, qv(t) - p.v_bar * b);
            if (k <= T - 1 && qv(k) > p.v_bar * b + tol)
                flag("q_end_" + tk, qv(k) - p.v_bar * b);
            for (int s = t + 1; s <= k; ++s) {
                std::string tks = tk + "_" + std::to_string(s);
                if (qv(s) - qv(s - 1) > p.v * b + tol)
                    flag("ramp_up_" + tks, qv(s) - qv(s - 1) - p.v * b);
                if (qv(s - 1) - qv(s) > p.v * b + tol)
                    flag("ramp_dn_" + tks, qv(s - 1) - qv(s) - p.v * b);
            }
        }
    }
    return out;
}

Schedule recover_schedule(const IntervalDualSolution& d, const DetInstance& inst) {
    const auto& p = inst.params;
    const int T = p.T;
    Schedule s;
    s.x.assign(T, 0.0);
    s.y.assign(T, 0);
    s.u.assign(T, 0);
    for (int t = 1; t <= T; ++t) {
        double x = 0, y = 0;
        for (int a = 1; a <= t; ++a) {
            for (int b = t; b <= T; ++b) {
                if (!interval_legal(p, a, b)) continue;
                double bv = d.beta[a - 1][b - 1];
                if (bv == 0) continue;
                y += bv;
                const auto& q = d.q[a - 1][b - 1];
                if (t - a < static_cast<int>(q.size())) x += q[t - a];
            }
        }
        double u = d.alpha[t - 1];
        for (int a = 1; a < t; ++a)
            if (gamma_legal(p, a, t)) u += d.gamma[a - 1][t - 1];
        s.y[t - 1] = as_bit(y, "recovered y");
        s.u[t - 1] = as_bit(u, "recovered u");
        s.x[t - 1] = x;
    }
    s.objective = dual_objective(d, inst);
    return s;
}

bool is_binary(const IntervalDualSolution& d, double tol) {
    auto ok = [tol](double v) { return std::abs(v) <= tol || std::abs(v - 1.0) <= tol; };
    for (double v : d.alpha)
        if (!ok(v)) return false;
    for (double v : d.theta)
        if (!ok(v)) return false;
    for (const auto& row : d.beta)
        for (double v : row)
            if (!ok(v)) return false;
    for (const auto& row : d.gamma)
        for (double v : row)
            if (!ok(v)) return false;
    return true;
}

// --- flow duals ------------------------------------------------------------

namespace {

// Positive levels recorded in the graph's online nodes, in grid order.
int graph_aleph(const StateGraph& g, const GeneratorParams& p) {
    return (g.node_count() - p.ell - 1) / p.L;
}

int online_node(const StateGraph& g, const GeneratorParams& p, int d, double x) {
    int m = graph_aleph(g, p);
    int base = p.ell + 1 + (d - 1) * m;
    for (int i = 0; i < m; ++i)
        if (std::abs(g.nodes[base + i].x - x) <= kBinTol) return base + i;
    return -1;
}

// State reached from prev when the next period is (y, x).
int step_state(const StateGraph& g, const GeneratorParams& p, int prev, int y, double x) {
    const StateNode& pn = g.nodes[prev];
    if (y == 0) {
        int d = pn.y == 1 ? 1 : std::min(pn.d + 1, p.ell);
        return d;  // offline ids are 1..ell by duration
    }
    int d = pn.y == 1 ? std::min(pn.d + 1, p.L) : 1;
    int id = online_node(g, p, d, x);
    if (id < 0)
        throw ValidationError("generation level " + std::to_string(x) +
                              " is not a grid value; no matching state");
    return id;
}

}  // namespace

FlowDualSolution build_dual_flow(const Schedule& s, const DetInstance& inst,
                                 const StateGraph& graph) {
    auto bad = check_schedule(inst, s);
    if (!bad.empty()) throw ValidationError("infeasible schedule: " + bad.front());
    const int T = inst.params.T;

    FlowDualSolution d;
    d.w.assign(T, std::vector<double>(graph.arc_count(), 0.0));
    int state = StateGraph::source;
    for (int t = 1; t <= T; ++t) {
        int next = step_state(graph, inst.params, state, s.y[t - 1], s.x[t - 1]);
        int arc = graph.arc_id(state, next);
        if (arc < 0)
            throw ValidationError("schedule transition at t=" + std::to_string(t) +
                                  " has no state-graph arc");
        d.w[t - 1][arc] = 1.0;
        state = next;
    }
    return d;
}

FlowDualSolution build_dual_flow(const TreePolicy& policy, const ScenarioTree& tree,
                                 const StateGraph& graph) {
    auto bad = validate_policy(tree, policy);
    if (!bad.empty()) throw ValidationError("infeasible policy: " + bad.front());
    const int N = tree.N();

    FlowDualSolution d;
    d.w.assign(N, std::vector<double>(graph.arc_count(), 0.0));
    std::vector<int> state(N, -1);
    std::vector<int> order(N);
    for (int i = 0; i < N; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&tree](int a, int b) {
        if (tree.nodes[a].t != tree.nodes[b].t) return tree.nodes[a].t < tree.nodes[b].t;
        return a < b;
    });
    for (int m : order) {
        int prev = tree.nodes[m].parent < 0 ? StateGraph::source : state[tree.nodes[m].parent];
        int next = step_state(graph, tree.params, prev, policy.y[m], policy.x[m]);
        int arc = graph.arc_id(prev, next);
        if (arc < 0)
            throw ValidationError("policy transition at node " + std::to_string(m) +
                                  " has no state-graph arc");
        d.w[m][arc] = 1.0;
        state[m] = next;
    }
    return d;
}

namespace {

double arc_cost(const StateGraph& g, int arc, const CostModel& cost, int row,
                double su, double sd) {
    auto [i, j] = g.arcs[arc];
    double e = eval_cost(cost, row, g.nodes[j].x, g.nodes[j].y);
    if (g.arc_starts(i, j)) e += su;
    if (g.arc_stops(i, j)) e += sd;
    return e;
}

void check_stage_shape(const FlowDualSolution& d, int stages, int arcs,
                       std::vector<RowViolation>& out) {
    if (static_cast<int>(d.w.size()) != stages)
        out.push_back({"stage count mismatch", static_cast<double>(d.w.size()) - stages});
    for (const auto& row : d.w)
        if (static_cast<int>(row.size()) != arcs) {
            out.push_back({"arc count mismatch", static_cast<double>(row.size()) - arcs});
            return;
        }
}

double out_flow(const FlowDualSolution& d, const StateGraph& g, int stage, int i) {
    double r = 0;
    for (int a = g.arc_offset[i]; a < g.arc_offset[i + 1]; ++a) r += d.w[stage][a];
    return r;
}

double in_flow(const FlowDualSolution& d, const StateGraph& g, int stage, int i) {
    double r = 0;
    for (int k : g.pred[i]) r += d.w[stage][g.arc_id(k, i)];
    return r;
}

void check_nonneg(const FlowDualSolution& d, double tol, std::vector<RowViolation>& out) {
    for (size_t st = 0; st < d.w.size(); ++st)
        for (size_t a = 0; a < d.w[st].size(); ++a)
            if (d.w[st][a] < -tol)
                out.push_back({"w stage " + std::to_string(st) + " arc " +
                                   std::to_string(a) + " >= 0",
                               d.w[st][a]});
}

}  // namespace

std::vector<RowViolation> check_feasibility(const FlowDualSolution& d,
                                            const DetInstance& inst, const StateGraph& graph,
                                            double tol) {
    const int T = inst.params.T;
    std::vector<RowViolation> out;
    check_stage_shape(d, T, graph.arc_count(), out);
    if (!out.empty()) return out;

    double src = out_flow(d, graph, 0, StateGraph::source);
    if (std::abs(src - 1.0) > tol) out.push_back({"source_out", src - 1.0});
    for (int i = 0; i < graph.node_count(); ++i) {
        if (i == StateGraph::source) continue;
        double r = out_flow(d, graph, 0, i);
        if (std::abs(r) > tol) out.push_back({"stage_one_" + std::to_string(i), r});
    }
    for (int t = 2; t <= T; ++t)
        for (int i = 0; i < graph.node_count(); ++i) {
            double r = out_flow(d, graph, t - 1, i) - in_flow(d, graph, t - 2, i);
            if (std::abs(r) > tol)
                out.push_back({"balance_" + std::to_string(t) + "_" + std::to_string(i), r});
        }
    check_nonneg(d, tol, out);
    return out;
}

std::vector<RowViolation> check_feasibility(const FlowDualSolution& d,
                                            const ScenarioTree& tree, const StateGraph& graph,
                                            double tol) {
    std::vector<RowViolation> out;
    check_stage_shape(d, tree.N(), graph.arc_count(), out);
    if (!out.empty()) return out;

    double src = out_flow(d, graph, tree.root, StateGraph::source);
    if (std::abs(src - 1.0) > tol) out.push_back({"source_out", src - 1.0});
    for (int i = 0; i < graph.node_count(); ++i) {
        if (i == StateGraph::source) continue;
        double r = out_flow(d, graph, tree.root, i);
        if (std::abs(r) > tol) out.push_back({"root_zero_" + std::to_string(i), r});
    }
    for (int m = 0; m < tree.N(); ++m) {
        if (m == tree.root) continue;
        int up = tree.nodes[m].parent;
        for (int i = 0; i < graph.node_count(); ++i) {
            double r = out_flow(d, graph, m, i) - in_flow(d, graph, up, i);
            if (std::abs(r) > tol)
                out.push_back({"balance_" + std::to_string(m) + "_" + std::to_string(i), r});
        }
    }
    check_nonneg(d, tol, out);
    return out;
}

bool is_binary(const FlowDualSolution& d, double tol) {
    for (const auto& row : d.w)
        for (double v : row)
            if (!(std::abs(v) <= tol || std::abs(v - 1.0) <= tol)) return false;
    return true;
}

double dual_objective(const FlowDualSolution& d, const DetInstance& inst,
                      const StateGraph& graph) {
    if (inst.startup.mode != StartupProfile::Mode::constant)
        throw ValidationError("flow objective requires constant start/stop costs");
    double total = 0;
    for (int t = 1; t <= inst.params.T; ++t)
        for (int a = 0; a < graph.arc_count(); ++a)
            if (d.w[t - 1][a] != 0)
                total += d.w[t - 1][a] *
                         arc_cost(graph, a, inst.cost, t, inst.startup.su, inst.startup.sd);
    return total;
}

double dual_objective(const FlowDualSolution& d, const ScenarioTree& tree,
                      const StateGraph& graph) {
    double total = 0;
    for (int m = 0; m < tree.N(); ++m)
        for (int a = 0; a < graph.arc_count(); ++a)
            if (d.w[m][a] != 0)
                total += d.w[m][a] * tree.nodes[m].p *
                         arc_cost(graph, a, tree.cost, m + 1, tree.startup.su,
                                  tree.startup.sd);
    return total;
}

Schedule recover_schedule(const FlowDualSolution& d, const DetInstance& inst,
                          const StateGraph& graph) {
    const int T = inst.params.T;
    Schedule s;
    s.x.assign(T, 0.0);
    s.y.assign(T, 0);
    s.u.assign(T, 0);
    for (int t = 1; t <= T; ++t) {
        double x = 0, y = 0, u = 0;
        for (int a = 0; a < graph.arc_count(); ++a) {
            double w = d.w[t - 1][a];
            if (w == 0) continue;
            auto [i, j] = graph.arcs[a];
            x += w * graph.nodes[j].x;
            y += w * graph.nodes[j].y;
            if (graph.arc_starts(i, j)) u += w;
        }
        s.y[t - 1] = as_bit(y, "recovered y");
        s.u[t - 1] = as_bit(u, "recovered u");
        s.x[t - 1] = x;
    }
    s.objective = dual_objective(d, inst, graph);
    return s;
}

TreePolicy recover_policy(const FlowDualSolution& d, const ScenarioTree& tree,
                          const StateGraph& graph) {
    const int N = tree.N();
    TreePolicy policy;
    policy.x.assign(N, 0.0);
    policy.y.assign(N, 0);
    policy.u.assign(N, 0);
    for (int m = 0; m < N; ++m) {
        double x = 0, y = 0, u = 0;
        for (int a = 0; a < graph.arc_count(); ++a) {
            double w = d.w[m][a];
            if (w == 0) continue;
            auto [i, j] = graph.arcs[a];
            x += w * graph.nodes[j].x;
            y += w * graph.nodes[j].y;
            if (graph.arc_starts(i, j)) u += w;
        }
        policy.y[m] = as_bit(y, "recovered y");
        policy.u[m] = as_bit(u, "recovered u");
        policy.x[m] = x;
    }
    policy.objective = dual_objective(d, tree, graph);
    return policy;
}

// --- LP point assignments ---------------------------------------------------

std::map<std::string, double> lp_point(const IntervalDualSolution& d,
                                       const DetInstance& inst) {
    const auto& p = inst.params;
    const int T = p.T;
    std::map<std::string, double> pt;
    for (int t = 1; t <= T; ++t) pt["alpha_" + std::to_string(t)] = d.alpha[t - 1];
    for (int t = 1; t <= T; ++t)
        if (theta_legal(p, t)) pt["theta_" + std::to_string(t)] = d.theta[t - 1];
    for (int t = 1; t <= T; ++t) {
        for (int k = t; k <= T; ++k) {
            if (interval_legal(p, t, k)) {
                std::string tk = std::to_string(t) + "_" + std::to_string(k);
                double b = d.beta[t - 1][k - 1];
                pt["beta_" + tk] = b;
                const auto& q = d.q[t - 1][k - 1];
                for (int s = t; s <= k; ++s) {
                    double qv = s - t < static_cast<int>(q.size()) ? q[s - t] : 0.0;
                    pt["q_" + tk + "_" + std::to_string(s)] = qv;
                    pt["wcost_" + tk + "_" + std::to_string(s)] =
                        wcost_value(inst.cost, s, qv, b);
                }
            }
            if (gamma_legal(p, t, k))
                pt["gamma_" + std::to_string(t) + "_" + std::to_string(k)] =
                    d.gamma[t - 1][k - 1];
        }
    }
    Schedule s = recover_schedule(d, inst);
    for (int t = 1; t <= T; ++t) {
        pt["x_" + std::to_string(t)] = s.x[t - 1];
        pt["y_" + std::to_string(t)] = s.y[t - 1];
        pt["u_" + std::to_string(t)] = s.u[t - 1];
    }
    return pt;
}

namespace {

void flow_stage_point(const FlowDualSolution& d, const StateGraph& graph,
                      const CostModel& cost, int stage, const std::string& label,
                      std::map<std::string, double>& pt) {
    double x = 0, y = 0, u = 0;
    for (int a = 0; a < graph.arc_count(); ++a) {
        auto [i, j] = graph.arcs[a];
        pt["w_" + label + "_" + std::to_string(i) + "_" + std::to_string(j)] = d.w[stage][a];
        double w = d.w[stage][a];
        if (w == 0) continue;
        x += w * graph.nodes[j].x;
        y += w * graph.nodes[j].y;
        if (graph.arc_starts(i, j)) u += w;
    }
    pt["x_" + label] = x;
    pt["y_" + label] = y;
    pt["u_" + label] = u;
    // Tight epigraph value; with y = 0 every piece evaluates to exactly 0.
    pt["phi_" + label] = wcost_value(cost, stage + 1, x, y);
}

}  // namespace

std::map<std::string, double> lp_point(const FlowDualSolution& d, const DetInstance& inst,
                                       const StateGraph& graph) {
    std::map<std::string, double> pt;
    for (int t = 1; t <= inst.params.T; ++t)
        flow_stage_point(d, graph, inst.cost, t - 1, std::to_string(t), pt);
    return pt;
}

std::map<std::string, double> lp_point(const FlowDualSolution& d, const ScenarioTree& tree,
                                       const StateGraph& graph) {
    std::map<std::string, double> pt;
    for (int m = 0; m < tree.N(); ++m)
        flow_stage_point(d, graph, tree.cost, m, std::to_string(m), pt);
    return pt;
}

}  // namespace uc
