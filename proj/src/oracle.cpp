#include "uc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace uc {

// Everything in this file recomputes costs and feasibility from the raw
// instance fields. No solver helper is called: an oracle that leaned on the
// code under test would inherit its bugs.

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-9;

void extend_patterns(const GeneratorParams& p, int pos, int run_len, int gap_len,
                     std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (pos > p.T) {
        out.push_back(cur);
        return;
    }
    // 0 first keeps the stream lexicographic. Closing a run demands length L;
    // a trailing run may stay short because the horizon cuts it, which shows
    // up here as never closing it.
    if (run_len == 0 || run_len >= p.L) {
        cur.push_back(0);
        extend_patterns(p, pos + 1, 0, std::min(gap_len + 1, p.ell), cur, out);
        cur.pop_back();
    }
    if (run_len > 0 || gap_len >= p.ell) {
        cur.push_back(1);
        extend_patterns(p, pos + 1, run_len + 1, 0, cur, out);
        cur.pop_back();
    }
}

double piece_max(const std::vector<CostPiece>& row, double x) {
    double best = row.front().mu * x + row.front().nu;
    for (size_t i = 1; i < row.size(); ++i)
        best = std::max(best, row[i].mu * x + row[i].nu);
    return best;
}

struct RunEnum {
    long long count = 0;
    double best = kInf;
    std::vector<double> argmin;
};

// All grid dispatches of the on-run [a,b]: boundary caps, ramp window, level
// costs summed inline. Levels ascend, so the first strict improvement is the
// lexicographically smallest minimizer.
void run_dfs(const DetInstance& inst, const std::vector<double>& levels, int a, int b,
             int s, double prev, double acc, std::vector<double>& cur, RunEnum& re) {
    for (double lv : levels) {
        if (s == a && lv > inst.params.v_bar + kTol) break;
        if (s > a && std::abs(lv - prev) > inst.params.v + kTol) {
            if (lv > prev) break;
            continue;
        }
        if (s == b && b <= inst.params.T - 1 && lv > inst.params.v_bar + kTol) break;
        double total = acc + piece_max(inst.cost.pieces[s - 1], lv);
        cur.push_back(lv);
        if (s == b) {
            ++re.count;
            if (total < re.best) {
                re.best = total;
                re.argmin = cur;
            }
        } else {
            run_dfs(inst, levels, a, b, s + 1, lv, total, cur, re);
        }
        cur.pop_back();
    }
}

double start_cost_raw(const StartupProfile& su, int offline_len) {
    if (su.mode == StartupProfile::Mode::constant) return su.su;
    return su.su_table.at(offline_len - 1);
}

double stop_cost_raw(const StartupProfile& su, int online_len) {
    if (su.mode == StartupProfile::Mode::constant) return su.sd;
    return su.sd_table.at(online_len - 1);
}

}  // namespace

std::vector<std::vector<int>> feasible_schedules(const GeneratorParams& params) {
    validate_params(params);
    if (params.T > 20)
        throw ValidationError("feasible_schedules is capped at T <= 20, got T=" +
                              std::to_string(params.T));
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    extend_patterns(params, 1, 0, params.ell, cur, out);
    return out;
}

OracleResult enumerate_det(const DetInstance& inst, const std::vector<double>& grid_values) {
    const auto& p = inst.params;
    if (p.T > 6) throw ValidationError("enumerate_det is capped at T <= 6");
    std::vector<double> levels = grid_values;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    for (double lv : levels)
        if (!(lv > 0)) throw ValidationError("enumerate_det expects positive grid levels");
    if (levels.size() > 6) throw ValidationError("enumerate_det is capped at aleph <= 6");

    OracleResult res;
    res.objective = kInf;
    for (const auto& y : feasible_schedules(p)) {
        // Runs are coupled only through start/stop costs, which the pattern
        // fixes, so each run minimizes (and counts) independently.
        double cost = 0;
        long long combos = 1;
        std::vector<double> x(p.T, 0.0);
        int prev_end = 0;
        bool dead = false;
        int t = 1;
        while (t <= p.T && !dead) {
            if (y[t - 1] == 0) {
                ++t;
                continue;
            }
            int k = t;
            while (k + 1 <= p.T && y[k] == 1) ++k;
            int offline = prev_end == 0 ? p.s0 + t - 1 : t - prev_end - 1;
            cost += start_cost_raw(inst.startup, offline);
            if (k <= p.T - 1) cost += stop_cost_raw(inst.startup, k - t + 1);
            RunEnum re;
            std::vector<double> cur;
            run_dfs(inst, levels, t, k, t, 0.0, 0.0, cur, re);
            if (re.count == 0) {
                dead = true;
                break;
            }
            combos *= re.count;
            cost += re.best;
            for (int s = t; s <= k; ++s) x[s - 1] = re.argmin[s - t];
            prev_end = k;
            t = k + 1;
        }
        if (dead) continue;
        res.visited += combos;
        if (cost < res.objective) {
            res.objective = cost;
            res.x = x;
            res.y = y;
            res.u.assign(p.T, 0);
            for (int s = 1; s <= p.T; ++s)
                res.u[s - 1] = std::max(y[s - 1] - (s > 1 ? y[s - 2] : 0), 0);
        }
    }
    return res;
}

namespace {

struct TreeDfs {
    const ScenarioTree& tree;
    const std::vector<double>& levels;
    std::vector<int> order;  // period-ascending, id-ascending: parents first
    std::vector<double> x;
    std::vector<int> y, u, up, down;
    TreeOracleResult res;

    explicit TreeDfs(const ScenarioTree& t, const std::vector<double>& lv)
        : tree(t), levels(lv) {
        int n = tree.N();
        order.resize(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (tree.nodes[a].t != tree.nodes[b].t) return tree.nodes[a].t < tree.nodes[b].t;
            return a < b;
        });
        x.assign(n, 0.0);
        y.assign(n, 0);
        u.assign(n, 0);
        up.assign(n, 0);
        down.assign(n, 0);
        res.objective = kInf;
    }

    void place(size_t pos, double acc) {
        if (pos == order.size()) {
            ++res.visited;
            if (acc < res.objective) {
                res.objective = acc;
                res.x = x;
                res.y = y;
                res.u = u;
            }
            return;
        }
        int m = order[pos];
        const TreeNode& node = tree.nodes[m];
        const auto& prm = tree.params;
        int parent = node.parent;
        int py = parent < 0 ? 0 : y[parent];
        int pup = parent < 0 ? 0 : up[parent];
        int pdown = parent < 0 ? prm.ell : down[parent];
        double px = parent < 0 ? 0.0 : x[parent];

        // Off: either the gap continues, or the parent's run is long enough
        // to stop and its last level clears the boundary cap.
        if (py == 0 || (pup >= prm.L && px <= prm.v_bar + kTol)) {
            y[m] = 0;
            u[m] = 0;
            x[m] = 0;
            up[m] = 0;
            down[m] = std::min(pdown + 1, prm.ell);
            place(pos + 1, acc + (py == 1 ? node.p * tree.startup.sd : 0.0));
        }
        // On: a fresh start needs the full off-gap and the boundary cap; a
        // continuing run needs only the ramp window.
        for (double lv : levels) {
            bool start = py == 0;
            if (start) {
                if (pdown < prm.ell) break;
                if (lv > prm.v_bar + kTol) break;
            } else if (std::abs(lv - px) > prm.v + kTol) {
                if (lv > px) break;
                continue;
            }
            y[m] = 1;
            u[m] = start ? 1 : 0;
            x[m] = lv;
            up[m] = std::min(pup + 1, prm.L);
            down[m] = 0;
            double e = piece_max(tree.cost.pieces[m], lv);
            if (start) e += tree.startup.su;
            place(pos + 1, acc + node.p * e);
        }
    }
};

}  // namespace

TreeOracleResult enumerate_tree(const ScenarioTree& tree,
                                const std::vector<double>& grid_values) {
    if (tree.N() > 12) throw ValidationError("enumerate_tree is capped at N <= 12");
    std::vector<double> levels = grid_values;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    for (double lv : levels)
        if (!(lv > 0)) throw ValidationError("enumerate_tree expects positive grid levels");
    if (levels.size() > 5) throw ValidationError("enumerate_tree is capped at aleph <= 5");
    if (tree.startup.mode != StartupProfile::Mode::constant)
        throw ValidationError("enumerate_tree supports constant start/stop costs only");

    TreeDfs dfs(tree, levels);
    dfs.place(0, 0.0);
    return dfs.res;
}

}  // namespace uc
