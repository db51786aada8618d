#include "uc/tree.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace uc {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr double kTol = 1e-9;

const json& require(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing key: ") + key);
    return *it;
}

// Node ids sorted leaves-first: period descending, id ascending within a
// period. Children of m always precede m.
std::vector<int> bottom_up_order(const ScenarioTree& tree) {
    std::vector<int> order(tree.N());
    for (int i = 0; i < tree.N(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&tree](int a, int b) {
        if (tree.nodes[a].t != tree.nodes[b].t) return tree.nodes[a].t > tree.nodes[b].t;
        return a < b;
    });
    return order;
}

}  // namespace

ScenarioTree parse_tree(const std::string& document) {
    json j;
    try {
        j = json::parse(document);
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }

    ScenarioTree tree;
    const json& jp = require(j, "params");
    auto geti = [&jp](const char* k) {
        const json& v = require(jp, k);
        if (!v.is_number_integer()) throw ParseError(std::string(k) + " must be an integer");
        return v.get<int>();
    };
    auto getd = [&jp](const char* k) {
        const json& v = require(jp, k);
        if (!v.is_number()) throw ParseError(std::string(k) + " must be a number");
        return v.get<double>();
    };
    tree.params.T = geti("T");
    tree.params.L = geti("L");
    tree.params.ell = geti("ell");
    tree.params.c_min = getd("c_min");
    tree.params.c_max = getd("c_max");
    tree.params.v_bar = getd("v_bar");
    tree.params.v = getd("v");
    tree.params.s0 = geti("s0");
    validate_params(tree.params);

    const json& js = require(j, "startup");
    if (require(js, "mode").get<std::string>() != "constant")
        throw ValidationError("scenario trees support constant start/stop costs only");
    tree.startup.mode = StartupProfile::Mode::constant;
    tree.startup.su = require(js, "su").get<double>();
    tree.startup.sd = require(js, "sd").get<double>();

    // Costs: explicit per-node pieces, or one quadratic with per-node prices.
    bool quad = j.contains("cost");
    double qa = 0, qb = 0, qc = 0;
    int K = 0;
    std::vector<double> abscissas;
    if (quad) {
        const json& q = require(j["cost"], "quadratic");
        qa = require(q, "a").get<double>();
        qb = require(q, "b").get<double>();
        qc = require(q, "c").get<double>();
        K = require(j["cost"], "K").get<int>();
        if (K < 1) throw ValidationError("K >= 1 violated");
        if (qa < 0) throw ValidationError("quadratic cost must be convex (a >= 0)");
        if (K == 1) {
            abscissas.push_back((tree.params.c_min + tree.params.c_max) / 2.0);
        } else {
            double step = (tree.params.c_max - tree.params.c_min) / (K - 1);
            for (int k = 0; k < K; ++k) abscissas.push_back(tree.params.c_min + k * step);
        }
        tree.cost.from_quadratic = true;
        tree.cost.qa = qa;
        tree.cost.qb = qb;
        tree.cost.qc = qc;
        tree.cost.abscissas = abscissas;
    }

    const json& jn = require(j, "nodes");
    if (!jn.is_array() || jn.empty()) throw ParseError("nodes must be a non-empty array");
    int N = static_cast<int>(jn.size());
    tree.nodes.resize(N);
    tree.cost.pieces.resize(N);
    if (quad) tree.cost.prices.resize(N, 0.0);
    std::vector<bool> seen(N, false);
    for (const auto& e : jn) {
        int id = require(e, "id").get<int>();
        if (id < 0 || id >= N) throw ParseError("node ids must be dense 0..N-1");
        if (seen[id]) throw ParseError("duplicate node id " + std::to_string(id));
        seen[id] = true;
        TreeNode& n = tree.nodes[id];
        n.id = id;
        n.parent = require(e, "parent").get<int>();
        n.p = require(e, "p").get<double>();
        if (!(n.p > 0)) throw ValidationError("node probabilities must be positive");
        if (quad) {
            double price = require(e, "price").get<double>();
            tree.cost.prices[id] = price;
            for (double xk : abscissas)
                tree.cost.pieces[id].push_back({2 * qa * xk + qb - price, qc - qa * xk * xk});
        } else {
            const json& rows = require(e, "pieces");
            if (!rows.is_array() || rows.empty())
                throw ParseError("node pieces must be a non-empty array");
            for (const auto& pr : rows) {
                if (!pr.is_array() || pr.size() != 2)
                    throw ParseError("cost piece must be a [mu, nu] pair");
                tree.cost.pieces[id].push_back({pr[0].get<double>(), pr[1].get<double>()});
            }
        }
    }

    int roots = 0;
    for (int id = 0; id < N; ++id) {
        const TreeNode& n = tree.nodes[id];
        if (n.parent == -1) {
            tree.root = id;
            ++roots;
        } else if (n.parent < 0 || n.parent >= N) {
            throw ParseError("node " + std::to_string(id) + " has an unknown parent");
        } else {
            tree.nodes[n.parent].children.push_back(id);
        }
    }
    if (roots != 1) throw ValidationError("the tree must have exactly one root");
    for (auto& n : tree.nodes) std::sort(n.children.begin(), n.children.end());

    // Periods by depth; cycles leave some node unreached.
    std::vector<int> stack{tree.root};
    tree.nodes[tree.root].t = 1;
    int reached = 0;
    while (!stack.empty()) {
        int m = stack.back();
        stack.pop_back();
        ++reached;
        for (int c : tree.nodes[m].children) {
            tree.nodes[c].t = tree.nodes[m].t + 1;
            stack.push_back(c);
        }
    }
    if (reached != N) throw ValidationError("tree edges contain a cycle or orphan");

    if (std::abs(tree.nodes[tree.root].p - 1.0) > kTol)
        throw ValidationError("root probability must be 1");
    for (const TreeNode& n : tree.nodes) {
        if (n.children.empty()) {
            if (n.t != tree.params.T)
                throw ValidationError("leaf " + std::to_string(n.id) +
                                      " does not sit at the horizon");
        } else {
            double mass = 0;
            for (int c : n.children) mass += tree.nodes[c].p;
            if (std::abs(mass - n.p) > kTol)
                throw ValidationError("children of node " + std::to_string(n.id) +
                                      " do not conserve probability");
        }
    }
    return tree;
}

std::string emit_tree(const ScenarioTree& tree) {
    ordered_json j;
    j["params"] = {{"T", tree.params.T},         {"L", tree.params.L},
                   {"ell", tree.params.ell},     {"c_min", tree.params.c_min},
                   {"c_max", tree.params.c_max}, {"v_bar", tree.params.v_bar},
                   {"v", tree.params.v},         {"s0", tree.params.s0}};
    j["startup"] = {{"mode", "constant"}, {"su", tree.startup.su}, {"sd", tree.startup.sd}};
    ordered_json nodes = ordered_json::array();
    for (const TreeNode& n : tree.nodes) {
        ordered_json pieces = ordered_json::array();
        for (const CostPiece& pc : tree.cost.pieces[n.id]) pieces.push_back({pc.mu, pc.nu});
        nodes.push_back({{"id", n.id}, {"parent", n.parent}, {"p", n.p}, {"pieces", pieces}});
    }
    j["nodes"] = nodes;
    return j.dump(2) + "\n";
}

std::pair<TreePolicy, double> solve_tree_dp(const ScenarioTree& tree,
                                            const StateGraph& graph) {
    if (graph.grid_variant == ValueGrid::Variant::det)
        throw ValidationError("tree recursion needs the longer stochastic candidate walks");
    if (tree.startup.mode != StartupProfile::Mode::constant)
        throw ValidationError("tree recursion requires constant start/stop costs");
    const int N = tree.N();
    const int S = graph.node_count();
    const double su = tree.startup.su, sd = tree.startup.sd;

    // F[m][i]: cost of the subtree at m given state i at m's parent.
    std::vector<std::vector<double>> F(N, std::vector<double>(S, 0.0));
    std::vector<std::vector<int>> best(N, std::vector<int>(S, -1));
    for (int m : bottom_up_order(tree)) {
        const TreeNode& node = tree.nodes[m];
        std::vector<double> tail(S, 0.0);
        for (int c : node.children)
            for (int i = 0; i < S; ++i) tail[i] += F[c][i];
        for (int i = 0; i < S; ++i) {
            double bv = 0;
            int arg = -1;
            for (int j : graph.succ[i]) {
                double e = eval_cost(tree.cost, m + 1, graph.nodes[j].x, graph.nodes[j].y);
                if (graph.arc_starts(i, j)) e += su;
                if (graph.arc_stops(i, j)) e += sd;
                e = node.p * e + tail[j];
                if (arg < 0 || e < bv) {
                    bv = e;
                    arg = j;
                }
            }
            F[m][i] = bv;
            best[m][i] = arg;
        }
    }

    TreePolicy policy;
    policy.x.assign(N, 0.0);
    policy.y.assign(N, 0);
    policy.u.assign(N, 0);
    policy.objective = F[tree.root][StateGraph::source];

    // Top-down replay of the argmin choices.
    std::vector<std::pair<int, int>> work{{tree.root, StateGraph::source}};
    while (!work.empty()) {
        auto [m, i] = work.back();
        work.pop_back();
        int j = best[m][i];
        policy.x[m] = graph.nodes[j].x;
        policy.y[m] = graph.nodes[j].y;
        policy.u[m] = graph.arc_starts(i, j) ? 1 : 0;
        for (int c : tree.nodes[m].children) work.push_back({c, j});
    }
    return {std::move(policy), F[tree.root][StateGraph::source]};
}

std::vector<std::string> validate_policy(const ScenarioTree& tree,
                                         const TreePolicy& policy) {
    constexpr double tol = 1e-7;
    const auto& p = tree.params;
    std::vector<std::string> out;
    const int N = tree.N();
    if (static_cast<int>(policy.x.size()) != N || static_cast<int>(policy.y.size()) != N ||
        static_cast<int>(policy.u.size()) != N) {
        out.push_back("x, y, u must all have one entry per node");
        return out;
    }

    // On/off streak lengths along the unique root path, saturated like the
    // state graph's duration counter. Parents precede children in any order
    // that sorts by period ascending; ids are not guaranteed to.
    std::vector<int> up(N, 0), down(N, 0);
    std::vector<int> order = bottom_up_order(tree);
    std::reverse(order.begin(), order.end());
    for (int m : order) {
        const TreeNode& n = tree.nodes[m];
        int py = n.parent < 0 ? 0 : policy.y[n.parent];
        int pup = n.parent < 0 ? 0 : up[n.parent];
        int pdown = n.parent < 0 ? p.ell : down[n.parent];  // s0 >= ell before the root
        std::string at = "node " + std::to_string(m);
        int y = policy.y[m];
        if (y != 0 && y != 1) out.push_back("y not binary at " + at);
        if (policy.u[m] != std::max(y - py, 0))
            out.push_back("u != max(y_m - y_parent, 0) at " + at);
        up[m] = y ? std::min(pup + 1, p.L) : 0;
        down[m] = y ? 0 : std::min(pdown + 1, p.ell);
        if (y) {
            if (policy.x[m] < p.c_min - tol || policy.x[m] > p.c_max + tol)
                out.push_back("x outside [c_min, c_max] at " + at);
            if (policy.u[m]) {
                if (pdown < p.ell) out.push_back("restart before ell offline periods at " + at);
                if (policy.x[m] > p.v_bar + tol)
                    out.push_back("x > v_bar at run start at " + at);
            } else if (py == 1 && std::abs(policy.x[m] - policy.x[n.parent]) > p.v + tol) {
                out.push_back("ramp violated on edge into " + at);
            }
        } else {
            if (std::abs(policy.x[m]) > tol) out.push_back("x nonzero while off at " + at);
            if (py == 1) {
                if (pup < p.L) out.push_back("shutdown before L online periods at " + at);
                if (policy.x[n.parent] > p.v_bar + tol)
                    out.push_back("x > v_bar at run end before " + at);
            }
        }
    }
    return out;
}

double policy_cost(const ScenarioTree& tree, const TreePolicy& policy) {
    double total = 0;
    for (const TreeNode& n : tree.nodes) {
        int py = n.parent < 0 ? 0 : policy.y[n.parent];
        double e = eval_cost(tree.cost, n.id + 1, policy.x[n.id], policy.y[n.id]);
        if (py == 0 && policy.y[n.id] == 1) e += tree.startup.su;
        if (py == 1 && policy.y[n.id] == 0) e += tree.startup.sd;
        total += n.p * e;
    }
    return total;
}

}  // namespace uc
