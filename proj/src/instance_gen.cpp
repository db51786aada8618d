#include <cmath>

#include "uc/grid.hpp"
#include "uc/instance_gen.hpp"

namespace uc {

namespace {

// Uniform integer in [lo, hi] via modulo; bias is irrelevant for test data
// and the result is identical on every platform, unlike std distributions.
long long draw(std::mt19937_64& rng, long long lo, long long hi) {
    return lo + static_cast<long long>(rng() % static_cast<unsigned long long>(hi - lo + 1));
}

std::vector<CostPiece> random_pieces(std::mt19937_64& rng, int K) {
    std::vector<CostPiece> row;
    for (int p = 0; p < K; ++p)
        row.push_back({0.25 * static_cast<double>(draw(rng, -12, 12)),
                       0.5 * static_cast<double>(draw(rng, -8, 8))});
    return row;
}

}  // namespace

DetInstance random_small_det(std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        DetInstance inst;
        auto& p = inst.params;
        p.T = static_cast<int>(draw(rng, 2, 6));
        p.L = static_cast<int>(draw(rng, 1, std::min(p.T, 3)));
        p.ell = static_cast<int>(draw(rng, 1, 3));
        p.s0 = p.ell + static_cast<int>(draw(rng, 0, 2));
        p.c_min = static_cast<double>(draw(rng, 1, 3));
        p.v_bar = p.c_min + static_cast<double>(draw(rng, 0, 2));
        p.c_max = p.v_bar + static_cast<double>(draw(rng, 0, 3));
        p.v = static_cast<double>(draw(rng, 1, 3));
        inst.startup.mode = StartupProfile::Mode::constant;
        inst.startup.su = static_cast<double>(draw(rng, 0, 8));
        inst.startup.sd = static_cast<double>(draw(rng, 0, 4));
        // K = 1 allows fully independent per-period pieces (no breakpoints);
        // K = 2 varies by period through a shared quadratic and random prices,
        // which keeps the piece intersections period-independent.
        if (draw(rng, 0, 1) == 0) {
            for (int t = 0; t < p.T; ++t) inst.cost.pieces.push_back(random_pieces(rng, 1));
        } else {
            double a = 0.25 * static_cast<double>(draw(rng, 1, 4));
            double b = 0.5 * static_cast<double>(draw(rng, -4, 4));
            double c = static_cast<double>(draw(rng, -2, 2));
            std::vector<double> prices;
            for (int t = 0; t < p.T; ++t)
                prices.push_back(0.5 * static_cast<double>(draw(rng, -6, 6)));
            inst.cost = linearize_quadratic(a, b, c, prices, 2, p);
        }
        validate_instance(inst);
        ValueGrid grid = candidate_set(p, inst.cost, ValueGrid::Variant::det);
        if (grid.aleph() <= 6) return inst;
    }
    throw ValidationError("no small instance found within the attempt budget");
}

ScenarioTree random_small_tree(std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        ScenarioTree tree;
        auto& p = tree.params;
        p.T = static_cast<int>(draw(rng, 2, 4));
        p.L = static_cast<int>(draw(rng, 1, std::min(p.T, 2)));
        p.ell = static_cast<int>(draw(rng, 1, 2));
        p.s0 = p.ell + static_cast<int>(draw(rng, 0, 1));
        p.c_min = static_cast<double>(draw(rng, 1, 2));
        p.v_bar = p.c_min + static_cast<double>(draw(rng, 0, 2));
        p.c_max = p.v_bar + static_cast<double>(draw(rng, 0, 2));
        p.v = static_cast<double>(draw(rng, 1, 2));
        tree.startup.mode = StartupProfile::Mode::constant;
        tree.startup.su = static_cast<double>(draw(rng, 0, 6));
        tree.startup.sd = static_cast<double>(draw(rng, 0, 3));

        tree.nodes.push_back({0, -1, 1.0, 1, {}});
        size_t level_begin = 0;
        bool overflow = false;
        for (int t = 1; t < p.T && !overflow; ++t) {
            size_t level_end = tree.nodes.size();
            for (size_t m = level_begin; m < level_end; ++m) {
                int kids = static_cast<int>(draw(rng, 1, 2));
                double w = kids == 1 ? 1.0 : 0.25 * static_cast<double>(draw(rng, 1, 3));
                for (int c = 0; c < kids; ++c) {
                    int id = static_cast<int>(tree.nodes.size());
                    double share = kids == 1 ? 1.0 : (c == 0 ? w : 1.0 - w);
                    tree.nodes.push_back(
                        {id, static_cast<int>(m), tree.nodes[m].p * share, t + 1, {}});
                    tree.nodes[m].children.push_back(id);
                }
            }
            level_begin = level_end;
            if (tree.nodes.size() > 12) overflow = true;
        }
        if (overflow) continue;

        for (size_t m = 0; m < tree.nodes.size(); ++m)
            tree.cost.pieces.push_back(random_pieces(rng, 1));
        validate_params(p);
        ValueGrid grid = candidate_set(p, tree.cost, ValueGrid::Variant::sto);
        if (grid.aleph() <= 5) return tree;
    }
    throw ValidationError("no small tree found within the attempt budget");
}

DetInstance bench_det_instance(int T, int K, std::mt19937_64& rng) {
    DetInstance inst;
    auto& p = inst.params;
    p.T = T;
    p.L = 3;
    p.ell = 2;
    p.s0 = 2;
    p.c_min = 10;
    p.c_max = 100;
    p.v_bar = 25;
    p.v = 15;
    inst.startup.mode = StartupProfile::Mode::constant;
    inst.startup.su = 50;
    inst.startup.sd = 10;
    std::vector<double> prices;
    for (int t = 1; t <= T; ++t)
        prices.push_back(3.0 + 2.0 * std::sin(0.37 * t) +
                         0.001 * static_cast<double>(draw(rng, -100, 100)));
    inst.cost = linearize_quadratic(0.005, 2.0, 5.0, prices, K, p);
    validate_instance(inst);
    return inst;
}

ScenarioTree bench_binary_tree(int depth, std::mt19937_64& rng) {
    ScenarioTree tree;
    auto& p = tree.params;
    p.T = depth;
    p.L = 2;
    p.ell = 1;
    p.s0 = 1;
    p.c_min = 10;
    p.c_max = 40;
    p.v_bar = 15;
    p.v = 10;
    tree.startup.mode = StartupProfile::Mode::constant;
    tree.startup.su = 30;
    tree.startup.sd = 5;

    long long n = (1LL << depth) - 1;
    tree.nodes.reserve(n);
    for (long long m = 0; m < n; ++m) {
        int parent = m == 0 ? -1 : static_cast<int>((m - 1) / 2);
        int t = 1;
        for (long long v = m + 1; v > 1; v >>= 1) ++t;
        double prob = std::ldexp(1.0, -(t - 1));
        tree.nodes.push_back({static_cast<int>(m), parent, prob, t, {}});
        if (parent >= 0) tree.nodes[parent].children.push_back(static_cast<int>(m));
        tree.cost.pieces.push_back(
            {{-(1.0 + 0.01 * static_cast<double>(draw(rng, 0, 200))), 1.0}});
    }
    validate_params(p);
    return tree;
}

}  // namespace uc
