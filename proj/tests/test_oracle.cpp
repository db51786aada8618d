#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "support/fixtures.hpp"
#include "uc/grid.hpp"
#include "uc/instance_gen.hpp"
#include "uc/oracle.hpp"

using namespace uc;

TEST_CASE("feasible commitment patterns, reference parameters") {
    GeneratorParams p = uctest::ref_d().params;  // T=3, L=2, ell=2
    auto pats = feasible_schedules(p);
    std::vector<std::vector<int>> expect = {
        {0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 0}, {1, 1, 1}};
    CHECK(pats == expect);
}

TEST_CASE("no up or down limits admits every pattern") {
    GeneratorParams p{2, 1, 1, 1, 2, 2, 1, 1};
    auto pats = feasible_schedules(p);
    std::vector<std::vector<int>> expect = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    CHECK(pats == expect);
}

TEST_CASE("interior gaps respect the min-down length") {
    GeneratorParams p{3, 1, 2, 1, 2, 2, 1, 2};
    auto pats = feasible_schedules(p);
    for (const auto& y : pats) CHECK(y != std::vector<int>{1, 0, 1});
    // Trailing gaps carry no restart, so they may be short.
    CHECK(std::find(pats.begin(), pats.end(), std::vector<int>{0, 1, 0}) != pats.end());
}

TEST_CASE("reference enumeration") {
    DetInstance inst = uctest::ref_d();
    ValueGrid g = candidate_set(inst.params, inst.cost, ValueGrid::Variant::det);
    OracleResult r = enumerate_det(inst, g.positive_values);
    CHECK(r.objective == doctest::Approx(-16).epsilon(1e-12));
    CHECK(r.x == std::vector<double>{3, 4, 5});
    CHECK(r.y == std::vector<int>{1, 1, 1});
    CHECK(r.u == std::vector<int>{1, 0, 0});
    CHECK(r.visited == 25);
}

TEST_CASE("reference tree enumeration") {
    ScenarioTree tree = uctest::ref_s();
    ValueGrid g = candidate_set(tree.params, tree.cost, ValueGrid::Variant::sto);
    TreeOracleResult r = enumerate_tree(tree, g.positive_values);
    CHECK(r.objective == doctest::Approx(-7).epsilon(1e-12));
    CHECK(r.x == std::vector<double>{3, 4, 4});
    CHECK(r.y == std::vector<int>{1, 1, 1});
    CHECK(r.u == std::vector<int>{1, 0, 0});
    CHECK(r.visited == 34);
}

TEST_CASE("enumeration guards refuse oversized inputs") {
    DetInstance inst = uctest::ref_d();
    std::vector<double> levels = {2, 3, 4, 5};

    DetInstance big = inst;
    big.params.T = 7;
    big.cost.pieces.assign(7, {{0.0, 0.0}});
    CHECK_THROWS_AS(enumerate_det(big, levels), ValidationError);
    CHECK_THROWS_AS(enumerate_det(inst, {1, 2, 3, 4, 5, 6, 7}), ValidationError);

    GeneratorParams long_p{21, 1, 1, 1, 1, 1, 0, 1};
    CHECK_THROWS_AS(feasible_schedules(long_p), ValidationError);

    ScenarioTree tree = uctest::ref_s();
    CHECK_THROWS_AS(enumerate_tree(tree, {1, 2, 3, 4, 5, 6}), ValidationError);
}

TEST_CASE("all-loss instances fall back to staying off") {
    DetInstance inst = uctest::ref_d();
    inst.cost.pieces = {{{2, 3}}, {{2, 3}}, {{2, 3}}};
    ValueGrid g = candidate_set(inst.params, inst.cost, ValueGrid::Variant::det);
    OracleResult r = enumerate_det(inst, g.positive_values);
    CHECK(r.objective == 0);
    CHECK(r.y == std::vector<int>{0, 0, 0});
    CHECK(r.x == std::vector<double>{0, 0, 0});
}

TEST_CASE("ties resolve to the lexicographically smallest argmin") {
    // Zero cost everywhere: every feasible candidate scores 0; the reported
    // argmin must be the all-off schedule.
    DetInstance inst = uctest::ref_d();
    inst.startup.su = 0;
    inst.startup.sd = 0;
    inst.cost.pieces = {{{0, 0}}, {{0, 0}}, {{0, 0}}};
    ValueGrid g = candidate_set(inst.params, inst.cost, ValueGrid::Variant::det);
    OracleResult r = enumerate_det(inst, g.positive_values);
    CHECK(r.objective == 0);
    CHECK(r.y == std::vector<int>{0, 0, 0});
}

TEST_CASE("visited counts cover the full candidate space") {
    // Free-form T=2 instance small enough to count by hand: L=1, ell=1,
    // levels {1,2}, v_bar=2, V=1. Patterns 00,01,10,11 give 1+2+2+4.
    DetInstance inst;
    inst.params = {2, 1, 1, 1, 2, 2, 1, 1};
    inst.startup.su = 0;
    inst.startup.sd = 0;
    inst.cost.pieces = {{{1, 0}}, {{1, 0}}};
    OracleResult r = enumerate_det(inst, {1, 2});
    CHECK(r.visited == 9);
    CHECK(r.objective == 0);
}
