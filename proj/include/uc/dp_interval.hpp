#pragma once

#include <vector>

#include "uc/dispatch.hpp"

namespace uc {

// Cost-to-go pair: v_up[t] when starting at t, v_down[t] when t is the last
// on-period of the current run. Argmin links drive the schedule traceback.
struct IntervalValueFunctions {
    std::vector<double> v_up;    // v_up[t-1], t in [1,T]
    std::vector<double> v_down;  // v_down[t-1], t in [1,T]; zero on [T-ell, T]
    std::vector<int> up_arg;     // chosen shutdown period k for v_up[t] (k=T: run to the end)
    std::vector<int> down_arg;   // chosen restart period k for v_down[t]; 0 = stay off
    double z = 0;                // overall optimum, <= 0
    int z_arg = 0;               // first start period; 0 = all-off schedule
};

// Supports table-mode start/stop profiles. Requires table to cover the
// instance's legal intervals.
IntervalValueFunctions value_functions(const DetInstance& inst,
                                       const DispatchTable& table);

// value_functions plus traceback; the schedule's objective equals z.
std::pair<Schedule, IntervalValueFunctions> solve_interval_dp(
    const DetInstance& inst, const DispatchTable& table, const ValueGrid& grid);

}  // namespace uc
