#include "uc/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace uc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-9;

// One forward sweep of the level-cost recursion over the sorted grid.
// Carries per-level best cost and the argmin links needed for profiles.
struct LevelSweep {
    const DetInstance& inst;
    const std::vector<double>& levels;
    int t;                                 // interval start
    int s;                                 // current period
    std::vector<double> f;                 // f[i]: best cost ending at levels[i]
    std::vector<std::vector<int>> parent;  // parent[s-t][i], -1 at s=t

    LevelSweep(const DetInstance& inst_, const std::vector<double>& levels_, int t_)
        : inst(inst_), levels(levels_), t(t_), s(t_) {
        f.resize(levels.size(), kInf);
        parent.push_back(std::vector<int>(levels.size(), -1));
        for (size_t i = 0; i < levels.size(); ++i) {
            if (levels[i] <= inst.params.v_bar + kTol)
                f[i] = eval_cost(inst.cost, t, levels[i], 1);
        }
    }

    // Advance to period s+1: g[j] = min over |levels[i]-levels[j]| <= v of f[i],
    // plus the level cost at s+1. Window minima via a monotone deque; ties keep
    // the earliest (lowest) level.
    void extend() {
        int m = static_cast<int>(levels.size());
        std::vector<double> g(m, kInf);
        std::vector<int> arg(m, -1);
        std::deque<int> dq;
        int lo = 0, hi = 0;  // window [lo, hi) of feasible predecessors
        ++s;
        for (int j = 0; j < m; ++j) {
            while (hi < m && levels[hi] <= levels[j] + inst.params.v + kTol) {
                while (!dq.empty() && f[dq.back()] > f[hi]) dq.pop_back();
                dq.push_back(hi);
                ++hi;
            }
            while (lo < hi && levels[lo] < levels[j] - inst.params.v - kTol) {
                if (!dq.empty() && dq.front() == lo) dq.pop_front();
                ++lo;
            }
            if (!dq.empty() && f[dq.front()] < kInf) {
                arg[j] = dq.front();
                g[j] = f[dq.front()] + eval_cost(inst.cost, s, levels[j], 1);
            }
        }
        f = std::move(g);
        parent.push_back(std::move(arg));
    }

    // Best terminal value at period s treated as interval end k; the final
    // ramp cap applies only when the interval stops short of the horizon.
    std::pair<double, int> close(bool capped) const {
        double best = kInf;
        int arg = -1;
        for (size_t i = 0; i < levels.size(); ++i) {
            if (capped && levels[i] > inst.params.v_bar + kTol) continue;
            if (f[i] < best) {
                best = f[i];
                arg = static_cast<int>(i);
            }
        }
        return {best, arg};
    }
};

}  // namespace

bool interval_legal(const GeneratorParams& params, int t, int k) {
    if (t < 1 || k < t || k > params.T) return false;
    return k >= std::min(t + params.L - 1, params.T);
}

DispatchResult dispatch_interval(const DetInstance& inst, const ValueGrid& grid,
                                 int t, int k) {
    if (!interval_legal(inst.params, t, k))
        throw ValidationError("illegal on-interval [" + std::to_string(t) + "," +
                              std::to_string(k) + "]");
    LevelSweep sweep(inst, grid.positive_values, t);
    for (int s = t + 1; s <= k; ++s) sweep.extend();
    auto [cost, arg] = sweep.close(k <= inst.params.T - 1);

    DispatchResult res;
    res.cost = cost;
    if (arg < 0) return res;  // no grid level fits the caps; cost stays +inf
    res.profile.resize(k - t + 1);
    for (int s = k; s >= t; --s) {
        res.profile[s - t] = grid.positive_values[arg];
        arg = sweep.parent[s - t][arg];
    }
    return res;
}

int DispatchTable::k_min(int t) const { return std::min(t + L_ - 1, T_); }

DispatchTable::DispatchTable(int T, int L) : T_(T), L_(L) {
    rows_.resize(T);
    for (int t = 1; t <= T; ++t) rows_[t - 1].resize(T - k_min(t) + 1, 0.0);
}

bool DispatchTable::legal(int t, int k) const {
    return t >= 1 && t <= T_ && k >= k_min(t) && k <= T_;
}

double DispatchTable::cost(int t, int k) const {
    if (!legal(t, k)) throw std::logic_error("dispatch cost queried outside legal set");
    return rows_[t - 1][k - k_min(t)];
}

void DispatchTable::set(int t, int k, double c) {
    if (!legal(t, k)) throw std::logic_error("dispatch cost stored outside legal set");
    rows_[t - 1][k - k_min(t)] = c;
}

DispatchTable dispatch_table(const DetInstance& inst, const ValueGrid& grid) {
    const int T = inst.params.T;
    DispatchTable table(T, inst.params.L);
    for (int t = 1; t <= T; ++t) {
        LevelSweep sweep(inst, grid.positive_values, t);
        int k0 = std::min(t + inst.params.L - 1, T);
        for (int s = t + 1; s <= k0; ++s) sweep.extend();
        for (int k = k0; k <= T; ++k) {
            table.set(t, k, sweep.close(k <= T - 1).first);
            if (k < T) sweep.extend();
        }
    }
    return table;
}

}  // namespace uc
