#include "uc/dp_interval.hpp"

#include <cmath>

namespace uc {

// Backward recursion over interval starts/ends. v_down[t] is computed before
// v_up[t] inside one iteration: with L = 1 the shutdown branch of v_up[t]
// reads v_down[t] itself.
IntervalValueFunctions value_functions(const DetInstance& inst,
                                       const DispatchTable& table) {
    const auto& p = inst.params;
    const int T = p.T;
    if (table.horizon() != T)
        throw ValidationError("dispatch table horizon does not match the instance");

    IntervalValueFunctions vf;
    vf.v_up.assign(T, 0.0);
    vf.v_down.assign(T, 0.0);
    vf.up_arg.assign(T, 0);
    vf.down_arg.assign(T, 0);

    for (int t = T; t >= 1; --t) {
        // Run just ended at t: stay off (0), or pay a restart after a full
        // off-gap. Restart set is empty for t >= T-ell. Strict improvement
        // keeps stay-off on ties and the earliest restart otherwise.
        double best_down = 0.0;
        int best_restart = 0;
        for (int k = t + p.ell + 1; k <= T; ++k) {
            double cand = inst.startup.start_cost(k - t - 1) + vf.v_up[k - 1];
            if (cand < best_down) {
                best_down = cand;
                best_restart = k;
            }
        }
        vf.v_down[t - 1] = best_down;
        vf.down_arg[t - 1] = best_restart;

        // Run starting at t: stop at some k <= T-1 (stop cost due), or hold
        // to the horizon. The finite-stop range is empty when t+L-1 > T-1.
        double best_up = table.cost(t, T);
        int best_stop = T;
        for (int k = t + p.L - 1; k <= T - 1; ++k) {
            double cand = inst.startup.stop_cost(k - t + 1) + table.cost(t, k) +
                          vf.v_down[k - 1];
            if (cand < best_up) {
                best_up = cand;
                best_stop = k;
            }
        }
        vf.v_up[t - 1] = best_up;
        vf.up_arg[t - 1] = best_stop;
    }

    vf.z = 0.0;
    vf.z_arg = 0;
    for (int t = 1; t <= T; ++t) {
        double cand = inst.startup.start_cost(p.s0 + t - 1) + vf.v_up[t - 1];
        if (cand < vf.z) {
            vf.z = cand;
            vf.z_arg = t;
        }
    }
    return vf;
}

std::pair<Schedule, IntervalValueFunctions> solve_interval_dp(
    const DetInstance& inst, const DispatchTable& table, const ValueGrid& grid) {
    IntervalValueFunctions vf = value_functions(inst, table);
    const int T = inst.params.T;

    Schedule s;
    s.x.assign(T, 0.0);
    s.y.assign(T, 0);
    s.u.assign(T, 0);
    s.objective = vf.z;

    int t = vf.z_arg;
    while (t != 0) {
        s.u[t - 1] = 1;
        int k = vf.up_arg[t - 1];
        DispatchResult d = dispatch_interval(inst, grid, t, k);
        for (int sp = t; sp <= k; ++sp) {
            s.y[sp - 1] = 1;
            s.x[sp - 1] = d.profile[sp - t];
        }
        t = (k == T) ? 0 : vf.down_arg[k - 1];
    }
    return {std::move(s), std::move(vf)};
}

}  // namespace uc
