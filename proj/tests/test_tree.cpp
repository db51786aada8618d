#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "support/fixtures.hpp"
#include "uc/grid.hpp"
#include "uc/instance_gen.hpp"
#include "uc/oracle.hpp"
#include "uc/tree.hpp"

using namespace uc;

namespace {

StateGraph sto_graph(const ScenarioTree& tree) {
    ValueGrid g = candidate_set(tree.params, tree.cost, ValueGrid::Variant::sto);
    return build_state_graph(tree.params, g);
}

}  // namespace

TEST_CASE("reference tree parses with conserved probabilities") {
    ScenarioTree tree = uctest::ref_s();
    REQUIRE(tree.N() == 3);
    CHECK(tree.root == 0);
    CHECK(tree.nodes[0].t == 1);
    CHECK(tree.nodes[0].children == std::vector<int>{1, 2});
    CHECK(tree.nodes[1].t == 2);
    CHECK(tree.nodes[2].p == 0.5);
    CHECK(tree.cost.pieces[1][0].mu == -3);
    CHECK(tree.cost.pieces[2][0].mu == -0.5);
}

TEST_CASE("emit then parse is the identity") {
    ScenarioTree tree = uctest::ref_s();
    ScenarioTree again = parse_tree(emit_tree(tree));
    CHECK(again.N() == tree.N());
    CHECK(again.nodes[1].parent == 0);
    CHECK(again.nodes[2].p == tree.nodes[2].p);
    CHECK(again.cost.pieces[0][0].mu == tree.cost.pieces[0][0].mu);
}

TEST_CASE("structural defects are rejected") {
    std::string base = uctest::slurp(uctest::fixture_path("ref_s.json"));

    auto swap = [&base](const std::string& from, const std::string& to) {
        std::string doc = base;
        doc.replace(doc.find(from), from.size(), to);
        return doc;
    };

    // Two roots.
    CHECK_THROWS_AS(parse_tree(swap(R"("id": 1, "parent": 0)", R"("id": 1, "parent": -1)")),
                    ValidationError);
    // Dangling parent.
    CHECK_THROWS_AS(parse_tree(swap(R"("id": 2, "parent": 0)", R"("id": 2, "parent": 9)")),
                    ParseError);
    // Probability mass leak.
    CHECK_THROWS_AS(parse_tree(swap(R"("id": 2, "parent": 0, "p": 0.5)",
                                    R"("id": 2, "parent": 0, "p": 0.25)")),
                    ValidationError);
    // Duplicate id.
    CHECK_THROWS_AS(parse_tree(swap(R"("id": 2,)", R"("id": 1,)")), ParseError);
    // Table startup has no per-node duration bookkeeping.
    CHECK_THROWS_AS(parse_tree(swap(R"("mode": "constant", "su": 4, "sd": 0)",
                                    R"("mode": "table", "su": 4, "sd": 0)")),
                    ValidationError);
}

TEST_CASE("leaves must share the horizon period") {
    // A three-node chain under T=2 puts one leaf at t=3.
    std::string doc = R"({
      "params": {"T": 2, "L": 1, "ell": 1, "c_min": 2, "c_max": 5,
                 "v_bar": 3, "v": 1, "s0": 1},
      "startup": {"mode": "constant", "su": 4, "sd": 0},
      "nodes": [
        {"id": 0, "parent": -1, "p": 1.0, "pieces": [[-2, 1]]},
        {"id": 1, "parent": 0, "p": 1.0, "pieces": [[-3, 1]]},
        {"id": 2, "parent": 1, "p": 1.0, "pieces": [[-0.5, 1]]}
      ]
    })";
    CHECK_THROWS_AS(parse_tree(doc), ValidationError);
}

TEST_CASE("reference policy") {
    ScenarioTree tree = uctest::ref_s();
    auto [policy, value] = solve_tree_dp(tree, sto_graph(tree));
    CHECK(value == doctest::Approx(-7).epsilon(1e-12));
    CHECK(policy.objective == doctest::Approx(-7).epsilon(1e-12));
    CHECK(policy.x == std::vector<double>{3, 4, 4});
    CHECK(policy.y == std::vector<int>{1, 1, 1});
    CHECK(policy.u == std::vector<int>{1, 0, 0});
    CHECK(validate_policy(tree, policy).empty());
    CHECK(policy_cost(tree, policy) == doctest::Approx(-7).epsilon(1e-12));
}

TEST_CASE("quadratic node costs reproduce the reference answer") {
    // Same tree stated as one quadratic (a=0, b=0, c=1) with per-node prices.
    std::string doc = R"({
      "params": {"T": 2, "L": 1, "ell": 1, "c_min": 2, "c_max": 5,
                 "v_bar": 3, "v": 1, "s0": 1},
      "startup": {"mode": "constant", "su": 4, "sd": 0},
      "cost": {"quadratic": {"a": 0, "b": 0, "c": 1}, "K": 1},
      "nodes": [
        {"id": 0, "parent": -1, "p": 1.0, "price": 2},
        {"id": 1, "parent": 0, "p": 0.5, "price": 3},
        {"id": 2, "parent": 0, "p": 0.5, "price": 0.5}
      ]
    })";
    ScenarioTree tree = parse_tree(doc);
    auto [policy, value] = solve_tree_dp(tree, sto_graph(tree));
    CHECK(value == doctest::Approx(-7).epsilon(1e-12));
}

TEST_CASE("validate_policy names violations") {
    ScenarioTree tree = uctest::ref_s();
    TreePolicy p;
    p.x = {3, 4, 4};
    p.y = {1, 1, 1};
    p.u = {1, 0, 0};
    CHECK(validate_policy(tree, p).empty());

    TreePolicy bad = p;
    bad.x = {5, 4, 4};  // start above v_bar
    CHECK(!validate_policy(tree, bad).empty());
    bad = p;
    bad.x = {3, 5, 4};  // ramp 2 > V on the first branch
    CHECK(!validate_policy(tree, bad).empty());
    bad = p;
    bad.u = {0, 0, 0};  // missing start flag
    CHECK(!validate_policy(tree, bad).empty());
    bad = p;
    bad.x = {3, 4, 1};  // below c_min while on
    CHECK(!validate_policy(tree, bad).empty());
}

TEST_CASE("deterministic walks are too short for the tree solver") {
    ScenarioTree tree = uctest::ref_s();
    ValueGrid det = candidate_set(tree.params, tree.cost, ValueGrid::Variant::det);
    StateGraph graph = build_state_graph(tree.params, det);
    CHECK_THROWS_AS(solve_tree_dp(tree, graph), ValidationError);
}

TEST_CASE("random trees: solver is feasible, recosts, and matches the oracle") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 40; ++i) {
        ScenarioTree tree = random_small_tree(rng);
        ValueGrid g = candidate_set(tree.params, tree.cost, ValueGrid::Variant::sto);
        StateGraph graph = build_state_graph(tree.params, g);
        auto [policy, value] = solve_tree_dp(tree, graph);
        CAPTURE(i);
        CHECK(validate_policy(tree, policy).empty());
        CHECK(value == doctest::Approx(policy_cost(tree, policy)).epsilon(1e-9));
        TreeOracleResult ref = enumerate_tree(tree, g.positive_values);
        CHECK(value == doctest::Approx(ref.objective).epsilon(1e-9));
    }
}

TEST_CASE("a chain tree reduces to the deterministic answer") {
    // REF-D written as a path of three nodes; expected objective -16.
    std::string doc = R"({
      "params": {"T": 3, "L": 2, "ell": 2, "c_min": 2, "c_max": 5,
                 "v_bar": 3, "v": 1, "s0": 2},
      "startup": {"mode": "constant", "su": 4, "sd": 1},
      "nodes": [
        {"id": 0, "parent": -1, "p": 1.0, "pieces": [[-2, 1]]},
        {"id": 1, "parent": 0, "p": 1.0, "pieces": [[-3, 1]]},
        {"id": 2, "parent": 1, "p": 1.0, "pieces": [[-1, 1]]}
      ]
    })";
    ScenarioTree tree = parse_tree(doc);
    auto [policy, value] = solve_tree_dp(tree, sto_graph(tree));
    CHECK(value == doctest::Approx(-16).epsilon(1e-12));
    CHECK(policy.x == std::vector<double>{3, 4, 5});
}
