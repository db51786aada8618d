#pragma once

#include <string>
#include <vector>

namespace uc {

struct BenchPoint {
    long long size = 0;      // T or node count
    double median_sec = 0.0;
    double objective = 0.0;  // anchors the run; also defeats dead-code elimination
};

struct BenchReport {
    std::string name;
    std::vector<BenchPoint> points;
    double slope = 0.0;  // least-squares fit of log(time) against log(size)
};

double fit_loglog_slope(const std::vector<BenchPoint>& points);

// reps = timed runs per size; the median is reported.
BenchReport bench_graph_dp(const std::vector<int>& sizes, int reps, unsigned seed);
BenchReport bench_tree_dp(const std::vector<int>& depths, int reps, unsigned seed);
// Times the value-function recursion only; the dispatch table is built
// beforehand and reused across reps.
BenchReport bench_interval_dp(const std::vector<int>& sizes, int reps, unsigned seed);

}  // namespace uc
