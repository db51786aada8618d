#include <algorithm>
#include <chrono>
#include <cmath>

#include "uc/bench.hpp"
#include "uc/dispatch.hpp"
#include "uc/dp_graph.hpp"
#include "uc/dp_interval.hpp"
#include "uc/grid.hpp"
#include "uc/instance_gen.hpp"
#include "uc/tree.hpp"

namespace uc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double fit_loglog_slope(const std::vector<BenchPoint>& points) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double n = static_cast<double>(points.size());
    for (const auto& pt : points) {
        double x = std::log(static_cast<double>(pt.size));
        double y = std::log(std::max(pt.median_sec, 1e-9));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

BenchReport bench_graph_dp(const std::vector<int>& sizes, int reps, unsigned seed) {
    BenchReport rep{"graph-dp", {}, 0.0};
    std::mt19937_64 rng(seed);
    for (int T : sizes) {
        DetInstance inst = bench_det_instance(T, 2, rng);
        ValueGrid grid = candidate_set(inst.params, inst.cost, ValueGrid::Variant::det);
        StateGraph graph = build_state_graph(inst.params, grid);
        std::vector<double> times;
        double obj = 0;
        for (int r = 0; r < reps; ++r) {
            auto t0 = Clock::now();
            auto [sched, table] = solve_graph_dp(inst, graph);
            times.push_back(seconds_since(t0));
            obj = sched.objective;
        }
        rep.points.push_back({T, median_of(times), obj});
    }
    rep.slope = fit_loglog_slope(rep.points);
    return rep;
}

BenchReport bench_tree_dp(const std::vector<int>& depths, int reps, unsigned seed) {
    BenchReport rep{"tree-dp", {}, 0.0};
    std::mt19937_64 rng(seed);
    for (int depth : depths) {
        ScenarioTree tree = bench_binary_tree(depth, rng);
        ValueGrid grid = candidate_set(tree.params, tree.cost, ValueGrid::Variant::sto);
        StateGraph graph = build_state_graph(tree.params, grid);
        std::vector<double> times;
        double obj = 0;
        for (int r = 0; r < reps; ++r) {
            auto t0 = Clock::now();
            auto [policy, value] = solve_tree_dp(tree, graph);
            times.push_back(seconds_since(t0));
            obj = value;
        }
        rep.points.push_back({tree.N(), median_of(times), obj});
    }
    rep.slope = fit_loglog_slope(rep.points);
    return rep;
}

BenchReport bench_interval_dp(const std::vector<int>& sizes, int reps, unsigned seed) {
    BenchReport rep{"interval-dp", {}, 0.0};
    std::mt19937_64 rng(seed);
    for (int T : sizes) {
        DetInstance inst = bench_det_instance(T, 2, rng);
        ValueGrid grid = candidate_set(inst.params, inst.cost, ValueGrid::Variant::det);
        DispatchTable table = dispatch_table(inst, grid);
        std::vector<double> times;
        double obj = 0;
        for (int r = 0; r < reps; ++r) {
            auto t0 = Clock::now();
            IntervalValueFunctions vf = value_functions(inst, table);
            times.push_back(seconds_since(t0));
            obj = vf.z;
        }
        rep.points.push_back({T, median_of(times), obj});
    }
    rep.slope = fit_loglog_slope(rep.points);
    return rep;
}

}  // namespace uc
