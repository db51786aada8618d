#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "support/fixtures.hpp"
#include "uc/grid.hpp"
#include "uc/instance_gen.hpp"

using namespace uc;

TEST_CASE("reference instance candidate levels") {
    DetInstance inst = uctest::ref_d();
    ValueGrid g = candidate_set(inst.params, inst.cost, ValueGrid::Variant::det);
    CHECK(g.variant == ValueGrid::Variant::det);
    CHECK(g.values == std::vector<double>{0, 2, 3, 4, 5});
    CHECK(g.positive_values == std::vector<double>{2, 3, 4, 5});
    CHECK(g.aleph() == 4);
}

TEST_CASE("piece intersections extend the walk set") {
    // Two pieces meeting at x = 3.5, identical in both periods.
    DetInstance inst = uctest::ref_d();
    inst.params.T = 2;
    inst.cost.pieces = {{{-1, 0}, {1, -7}}, {{-1, 0}, {1, -7}}};
    CHECK(breakpoints(inst.cost) == std::vector<double>{3.5});
    ValueGrid g = candidate_set(inst.params, inst.cost, ValueGrid::Variant::det);
    CHECK(g.values == std::vector<double>{0, 2, 2.5, 3, 3.5, 4, 4.5, 5});
}

TEST_CASE("period-dependent intersections are rejected") {
    DetInstance inst = uctest::ref_d();
    inst.params.T = 2;
    inst.cost.pieces = {{{-1, 0}, {1, -7}}, {{-1, 0}, {1, -6}}};
    CHECK_THROWS_AS(candidate_set(inst.params, inst.cost, ValueGrid::Variant::det),
                    ValidationError);
}

TEST_CASE("quadratic-mode breakpoints are price independent") {
    GeneratorParams p;
    p.T = 3;
    p.L = 1;
    p.ell = 1;
    p.c_min = 2;
    p.c_max = 5;
    p.v_bar = 5;
    p.v = 1;
    p.s0 = 1;
    CostModel cm = linearize_quadratic(1, 0, 0, {0.5, -2, 7}, 2, p);
    CHECK(breakpoints(cm) == std::vector<double>{3.5});  // midpoint of abscissas 2 and 5
    CHECK_NOTHROW(candidate_set(p, cm, ValueGrid::Variant::det));
}

TEST_CASE("stochastic walks run twice as far") {
    GeneratorParams p;
    p.T = 2;
    p.L = 1;
    p.ell = 1;
    p.c_min = 1;
    p.c_max = 20;
    p.v_bar = 1;
    p.v = 2;
    p.s0 = 1;
    CostModel cm;
    cm.pieces = {{{1, 0}}, {{1, 0}}};
    ValueGrid det = candidate_set(p, cm, ValueGrid::Variant::det);
    ValueGrid sto = candidate_set(p, cm, ValueGrid::Variant::sto);
    CHECK(det.variant == ValueGrid::Variant::det);
    CHECK(sto.variant == ValueGrid::Variant::sto);
    CHECK(sto.values.size() > det.values.size());
    for (double v : det.values)
        CHECK(std::find(sto.values.begin(), sto.values.end(), v) != sto.values.end());
}

TEST_CASE("walk values stay inside the generation bounds") {
    std::mt19937_64 rng(404);
    for (int i = 0; i < 40; ++i) {
        DetInstance inst = random_small_det(rng);
        for (auto variant : {ValueGrid::Variant::det, ValueGrid::Variant::sto}) {
            ValueGrid g = candidate_set(inst.params, inst.cost, variant);
            REQUIRE(!g.values.empty());
            CHECK(g.values.front() == 0);
            for (double v : g.positive_values) {
                CHECK(v >= inst.params.c_min - 1e-9);
                CHECK(v <= inst.params.c_max + 1e-9);
            }
            for (size_t k = 1; k < g.values.size(); ++k)
                CHECK(g.values[k] > g.values[k - 1] + 1e-9);
            // The endpoints anchor the walks.
            CHECK(std::abs(g.positive_values.front() - inst.params.c_min) < 1e-9);
            CHECK(std::abs(g.positive_values.back() - inst.params.c_max) < 1e-9);
        }
    }
}

TEST_CASE("custom grids keep their levels and reject nonpositive ones") {
    ValueGrid g = make_custom_grid({4, 2, 3});
    CHECK(g.variant == ValueGrid::Variant::custom);
    CHECK(g.values == std::vector<double>{0, 2, 3, 4});
    CHECK(g.aleph() == 3);
    CHECK_THROWS_AS(make_custom_grid({2, 0}), ValidationError);
    CHECK_THROWS_AS(make_custom_grid({-1}), ValidationError);
}

TEST_CASE("near-duplicate levels merge") {
    ValueGrid g = make_custom_grid({2, 2 + 1e-12, 3});
    CHECK(g.positive_values.size() == 2);
}

TEST_CASE("zero ramp collapses the walks to their anchors") {
    GeneratorParams p;
    p.T = 4;
    p.L = 1;
    p.ell = 1;
    p.c_min = 2;
    p.c_max = 8;
    p.v_bar = 5;
    p.v = 0;
    p.s0 = 1;
    CostModel cm;
    cm.pieces = {{{1, 0}}, {{1, 0}}, {{1, 0}}, {{1, 0}}};
    ValueGrid g = candidate_set(p, cm, ValueGrid::Variant::det);
    CHECK(g.values == std::vector<double>{0, 2, 5, 8});
}
