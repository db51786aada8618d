#pragma once

#include <vector>

#include "uc/grid.hpp"
#include "uc/model.hpp"

namespace uc {

// Legal on-intervals: k in [min(t+L-1, T), T]. Intervals ending at T are exempt
// from the min-up length check, and their final ramp cap is waived.
bool interval_legal(const GeneratorParams& params, int t, int k);

struct DispatchResult {
    double cost = 0;
    std::vector<double> profile;  // profile[s-t] = x_s for s in [t,k]
};

// Minimum generation cost over the fixed on-interval [t,k], restricted to grid
// levels: x_t <= v_bar, x_k <= v_bar when k <= T-1, |x_s - x_{s-1}| <= V.
// Ties broken toward the lowest MW level.
DispatchResult dispatch_interval(const DetInstance& inst, const ValueGrid& grid,
                                 int t, int k);

// All C(t,k) costs precomputed by extending k one period at a time from each t.
class DispatchTable {
  public:
    DispatchTable(int T, int L);

    bool legal(int t, int k) const;
    double cost(int t, int k) const;
    void set(int t, int k, double c);

    int horizon() const { return T_; }

  private:
    int T_;
    int L_;
    std::vector<std::vector<double>> rows_;  // rows_[t-1][k - k_min(t)]
    int k_min(int t) const;
};

DispatchTable dispatch_table(const DetInstance& inst, const ValueGrid& grid);

}  // namespace uc
