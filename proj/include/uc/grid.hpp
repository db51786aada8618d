#pragma once

#include <vector>

#include "uc/model.hpp"

namespace uc {

// Finite candidate set of generation levels guaranteed to contain an optimal
// solution's values. variant records which walk bound built it: solvers that
// need the longer stochastic walks reject det-built grids.
struct ValueGrid {
    enum class Variant { det, sto, custom };
    Variant variant = Variant::custom;
    std::vector<double> values;           // sorted ascending, 0 first, deduped at 1e-9
    std::vector<double> positive_values;  // values excluding 0

    int aleph() const { return static_cast<int>(positive_values.size()); }
};

ValueGrid make_custom_grid(std::vector<double> positive_levels);

// {0} U {c_min+nV} U {v_bar+nV} U {c_max-nV} with walk indices capped by n_max
// (deterministic walks use n_max = T, stochastic n_max = 2T).
ValueGrid base_grid(const GeneratorParams& params, int n_max);

// Intersections of consecutive cost pieces, (x~_k + x~_{k+1})/2. Requires the
// breakpoints to be period-independent.
std::vector<double> breakpoints(const CostModel& cost);

// base_grid plus +/-V walks from every cost breakpoint, clipped to [c_min, c_max].
ValueGrid candidate_set(const GeneratorParams& params, const CostModel& cost,
                        ValueGrid::Variant variant);

}  // namespace uc
