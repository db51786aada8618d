#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "support/fixtures.hpp"
#include "support/lp_parse.hpp"
#include "uc/dp_graph.hpp"
#include "uc/dp_interval.hpp"
#include "uc/extform.hpp"
#include "uc/grid.hpp"
#include "uc/instance_gen.hpp"

using namespace uc;

namespace {

struct DetSetup {
    DetInstance inst;
    ValueGrid grid;
    StateGraph graph;
    Schedule schedule;
};

DetSetup solved_ref_d() {
    DetSetup s{uctest::ref_d(), {}, {}, {}};
    s.grid = candidate_set(s.inst.params, s.inst.cost, ValueGrid::Variant::det);
    s.graph = build_state_graph(s.inst.params, s.grid);
    DispatchTable table = dispatch_table(s.inst, s.grid);
    s.schedule = solve_interval_dp(s.inst, table, s.grid).first;
    return s;
}

}  // namespace

TEST_CASE("interval dual of the reference optimum") {
    DetSetup s = solved_ref_d();
    IntervalDualSolution d = build_dual_interval(s.schedule, s.inst);
    CHECK(d.T == 3);
    CHECK(d.alpha == std::vector<double>{1, 0, 0});
    CHECK(d.beta[0][2] == 1);  // one run covering [1,3]
    CHECK(d.beta[0][1] == 0);
    CHECK(d.theta == std::vector<double>{0, 0, 1});
    CHECK(d.q[0][2] == std::vector<double>{3, 4, 5});

    CHECK(check_feasibility(d, s.inst).empty());
    CHECK(is_binary(d));
    CHECK(dual_objective(d, s.inst) == doctest::Approx(-16).epsilon(1e-12));

    Schedule back = recover_schedule(d, s.inst);
    CHECK(back.x == s.schedule.x);
    CHECK(back.y == s.schedule.y);
    CHECK(back.u == s.schedule.u);
    CHECK(back.objective == doctest::Approx(-16).epsilon(1e-12));
}

TEST_CASE("interval dual of an idle schedule is all zero") {
    DetInstance inst = uctest::ref_d();
    Schedule off;
    off.x = {0, 0, 0};
    off.y = {0, 0, 0};
    off.u = {0, 0, 0};
    off.objective = 0;
    IntervalDualSolution d = build_dual_interval(off, inst);
    CHECK(check_feasibility(d, inst).empty());
    CHECK(dual_objective(d, inst) == 0);
    for (double a : d.alpha) CHECK(a == 0);
    for (double th : d.theta) CHECK(th == 0);
}

TEST_CASE("interval dual covers split runs with a gap variable") {
    // T=5, L=1, ell=1: runs [1,1] and [4,5] from the restart test.
    DetInstance inst;
    inst.params = {5, 1, 1, 2, 5, 5, 3, 1};
    inst.startup.su = 1;
    inst.startup.sd = 0;
    inst.cost.pieces = {{{-2, 0}}, {{2, 0}}, {{2, 0}}, {{-2, 0}}, {{-2, 0}}};
    ValueGrid g = candidate_set(inst.params, inst.cost, ValueGrid::Variant::det);
    DispatchTable table = dispatch_table(inst, g);
    Schedule s = solve_interval_dp(inst, table, g).first;
    REQUIRE(s.y == std::vector<int>{1, 0, 0, 1, 1});

    IntervalDualSolution d = build_dual_interval(s, inst);
    CHECK(d.alpha == std::vector<double>{1, 0, 0, 0, 0});
    CHECK(d.beta[0][0] == 1);   // run [1,1]
    CHECK(d.beta[3][4] == 1);   // run [4,5]
    CHECK(d.gamma[0][3] == 1);  // stop at 1, restart at 4
    CHECK(d.theta[4] == 1);
    CHECK(check_feasibility(d, inst).empty());
    CHECK(is_binary(d));
    CHECK(dual_objective(d, inst) == doctest::Approx(s.objective).epsilon(1e-12));
    Schedule back = recover_schedule(d, inst);
    CHECK(back.x == s.x);
    CHECK(back.u == s.u);
}

TEST_CASE("perturbed duals are caught row by row") {
    DetSetup s = solved_ref_d();
    IntervalDualSolution d = build_dual_interval(s.schedule, s.inst);

    SUBCASE("overcommitted start total") {
        d.alpha[1] = 1;
        auto bad = check_feasibility(d, s.inst);
        REQUIRE(!bad.empty());
        bool seen = false;
        for (const auto& v : bad) seen = seen || v.row.find("start") != std::string::npos;
        CHECK(seen);
    }
    SUBCASE("dispatch outside the ramp window") {
        d.q[0][2][1] = 5.5;  // jump 3 -> 5.5 breaks |dq| <= 1
        auto bad = check_feasibility(d, s.inst);
        REQUIRE(!bad.empty());
        bool seen = false;
        for (const auto& v : bad) seen = seen || v.row.find("ramp") != std::string::npos;
        CHECK(seen);
    }
    SUBCASE("dispatch without a run") {
        d.q[1][2] = {2, 0};  // q on a beta=0 interval violates the upper bound
        CHECK(!check_feasibility(d, s.inst).empty());
    }
    SUBCASE("missing terminal marker") {
        d.theta[2] = 0;
        CHECK(!check_feasibility(d, s.inst).empty());
    }
    SUBCASE("fractional mass is not binary") {
        d.alpha[0] = 0.5;
        CHECK(!is_binary(d));
    }
}

TEST_CASE("fractional duals refuse recovery") {
    DetSetup s = solved_ref_d();
    IntervalDualSolution d = build_dual_interval(s.schedule, s.inst);
    d.beta[0][2] = 0.5;
    CHECK_THROWS_AS(recover_schedule(d, s.inst), ValidationError);
}

TEST_CASE("infeasible schedules cannot seed a dual") {
    DetInstance inst = uctest::ref_d();
    Schedule broken;
    broken.x = {5, 4, 3};  // starts above v_bar
    broken.y = {1, 1, 1};
    broken.u = {1, 0, 0};
    CHECK_THROWS_AS(build_dual_interval(broken, inst), ValidationError);
}

TEST_CASE("flow dual of the reference optimum") {
    DetSetup s = solved_ref_d();
    auto [gs, gtab] = solve_graph_dp(s.inst, s.graph);
    FlowDualSolution d = build_dual_flow(gs, s.inst, s.graph);
    REQUIRE(d.w.size() == 3);

    // Unit flow along source -> (3,start) -> (4) -> (5).
    int hops = 0;
    for (int t = 0; t < 3; ++t)
        for (int a = 0; a < s.graph.arc_count(); ++a)
            if (d.w[t][a] != 0) {
                CHECK(d.w[t][a] == 1);
                ++hops;
            }
    CHECK(hops == 3);

    CHECK(check_feasibility(d, s.inst, s.graph).empty());
    CHECK(is_binary(d));
    CHECK(dual_objective(d, s.inst, s.graph) == doctest::Approx(-16).epsilon(1e-12));
    Schedule back = recover_schedule(d, s.inst, s.graph);
    CHECK(back.x == gs.x);
    CHECK(back.y == gs.y);
    CHECK(back.u == gs.u);
}

TEST_CASE("perturbed flows break conservation") {
    DetSetup s = solved_ref_d();
    auto [gs, gtab] = solve_graph_dp(s.inst, s.graph);
    FlowDualSolution d = build_dual_flow(gs, s.inst, s.graph);
    for (int a = 0; a < s.graph.arc_count(); ++a)
        if (d.w[1][a] != 0) d.w[1][a] = 0;
    auto bad = check_feasibility(d, s.inst, s.graph);
    CHECK(!bad.empty());
}

TEST_CASE("tree flow dual of the reference policy") {
    ScenarioTree tree = uctest::ref_s();
    ValueGrid g = candidate_set(tree.params, tree.cost, ValueGrid::Variant::sto);
    StateGraph graph = build_state_graph(tree.params, g);
    auto [policy, value] = solve_tree_dp(tree, graph);
    FlowDualSolution d = build_dual_flow(policy, tree, graph);
    CHECK(check_feasibility(d, tree, graph).empty());
    CHECK(is_binary(d));
    CHECK(dual_objective(d, tree, graph) == doctest::Approx(-7).epsilon(1e-12));
    TreePolicy back = recover_policy(d, tree, graph);
    CHECK(back.x == policy.x);
    CHECK(back.y == policy.y);
    CHECK(back.u == policy.u);
}

TEST_CASE("coefficients format to shortest decimals") {
    CHECK(format_coeff(0) == "0");
    CHECK(format_coeff(1) == "1");
    CHECK(format_coeff(-16) == "-16");
    CHECK(format_coeff(0.5) == "0.5");
    CHECK(format_coeff(0.1) == "0.1");
    CHECK(format_coeff(100000) == "100000");
    CHECK(format_coeff(1e-5) == "0.00001");
    CHECK(format_coeff(2.5e-7) == "2.5e-07");
}

TEST_CASE("form names parse") {
    CHECK(parse_lp_form("ext-interval") == LpForm::ext_interval);
    CHECK(parse_lp_form("ext-graph") == LpForm::ext_graph);
    CHECK(parse_lp_form("ext-tree") == LpForm::ext_tree);
    CHECK(parse_lp_form("original-mip") == LpForm::original_mip);
    CHECK_THROWS_AS(parse_lp_form("simplex"), ValidationError);
}

TEST_CASE("emitted files are byte stable") {
    DetSetup s = solved_ref_d();
    for (auto form : {LpForm::ext_interval, LpForm::ext_graph, LpForm::original_mip})
        CHECK(emit_lp(form, s.inst, s.grid) == emit_lp(form, s.inst, s.grid));
}

TEST_CASE("form and input kind must match") {
    DetSetup s = solved_ref_d();
    CHECK_THROWS_AS(emit_lp(LpForm::ext_tree, s.inst, s.grid), ValidationError);
    ScenarioTree tree = uctest::ref_s();
    ValueGrid g = candidate_set(tree.params, tree.cost, ValueGrid::Variant::sto);
    CHECK_THROWS_AS(emit_lp(LpForm::ext_interval, tree, g), ValidationError);
    CHECK_THROWS_AS(emit_lp(LpForm::ext_graph, tree, g), ValidationError);
}

TEST_CASE("interval LP accepts the constructed dual point") {
    DetSetup s = solved_ref_d();
    IntervalDualSolution d = build_dual_interval(s.schedule, s.inst);
    lptest::Model model = lptest::parse_lp(emit_lp(LpForm::ext_interval, s.inst, s.grid));
    auto point = lp_point(d, s.inst);
    auto bad = lptest::check_lp_point(model, point, 1e-7);
    for (const auto& b : bad) CAPTURE(b);
    CHECK(bad.empty());
    CHECK(lptest::lp_objective(model, point) ==
          doctest::Approx(s.schedule.objective).epsilon(1e-12));
}

TEST_CASE("graph LP accepts the constructed flow point") {
    DetSetup s = solved_ref_d();
    auto [gs, gtab] = solve_graph_dp(s.inst, s.graph);
    FlowDualSolution d = build_dual_flow(gs, s.inst, s.graph);
    lptest::Model model = lptest::parse_lp(emit_lp(LpForm::ext_graph, s.inst, s.grid));
    auto point = lp_point(d, s.inst, s.graph);
    auto bad = lptest::check_lp_point(model, point, 1e-7);
    for (const auto& b : bad) CAPTURE(b);
    CHECK(bad.empty());
    CHECK(lptest::lp_objective(model, point) == doctest::Approx(-16).epsilon(1e-12));
}

TEST_CASE("tree LP accepts the constructed flow point") {
    ScenarioTree tree = uctest::ref_s();
    ValueGrid g = candidate_set(tree.params, tree.cost, ValueGrid::Variant::sto);
    StateGraph graph = build_state_graph(tree.params, g);
    auto [policy, value] = solve_tree_dp(tree, graph);
    FlowDualSolution d = build_dual_flow(policy, tree, graph);
    lptest::Model model = lptest::parse_lp(emit_lp(LpForm::ext_tree, tree, g));
    auto point = lp_point(d, tree, graph);
    auto bad = lptest::check_lp_point(model, point, 1e-7);
    for (const auto& b : bad) CAPTURE(b);
    CHECK(bad.empty());
    CHECK(lptest::lp_objective(model, point) == doctest::Approx(-7).epsilon(1e-12));
}

TEST_CASE("compact model carries integrality and schedule points satisfy it") {
    DetSetup s = solved_ref_d();
    lptest::Model model = lptest::parse_lp(emit_lp(LpForm::original_mip, s.inst, s.grid));
    CHECK(model.generals.size() == 6);  // y and u per period

    // The optimal schedule extends to a feasible MIP point by pricing phi at
    // the active piece.
    std::map<std::string, double> point;
    for (int t = 1; t <= 3; ++t) {
        std::string ts = std::to_string(t);
        point["x_" + ts] = s.schedule.x[t - 1];
        point["y_" + ts] = s.schedule.y[t - 1];
        point["u_" + ts] = s.schedule.u[t - 1];
        point["phi_" + ts] =
            eval_cost(s.inst.cost, t, s.schedule.x[t - 1], s.schedule.y[t - 1]);
    }
    auto bad = lptest::check_lp_point(model, point, 1e-7);
    for (const auto& b : bad) CAPTURE(b);
    CHECK(bad.empty());
    CHECK(lptest::lp_objective(model, point) == doctest::Approx(-16).epsilon(1e-12));
}

TEST_CASE("decreasing start tables cannot be priced by the compact rows") {
    DetInstance inst = uctest::ref_d();
    inst.startup.mode = StartupProfile::Mode::table;
    inst.startup.su_table = {9, 8, 7, 6, 5};
    inst.startup.sd_table = {1, 1, 1};
    ValueGrid g = candidate_set(inst.params, inst.cost, ValueGrid::Variant::det);
    CHECK_THROWS_AS(emit_lp(LpForm::original_mip, inst, g), ValidationError);

    // Nondecreasing tables emit start and stop cost variables.
    inst.startup.su_table = {5, 6, 7, 8, 9};
    std::string text = emit_lp(LpForm::original_mip, inst, g);
    CHECK(text.find("su_1") != std::string::npos);
    CHECK(text.find("sd_2") != std::string::npos);
}

TEST_CASE("random instances round-trip through dual, point, and emitted rows") {
    std::mt19937_64 rng(51);
    for (int i = 0; i < 15; ++i) {
        DetInstance inst = random_small_det(rng);
        ValueGrid g = candidate_set(inst.params, inst.cost, ValueGrid::Variant::det);
        DispatchTable table = dispatch_table(inst, g);
        Schedule s = solve_interval_dp(inst, table, g).first;

        IntervalDualSolution d = build_dual_interval(s, inst);
        lptest::Model model = lptest::parse_lp(emit_lp(LpForm::ext_interval, inst, g));
        auto point = lp_point(d, inst);
        auto bad = lptest::check_lp_point(model, point, 1e-7);
        CAPTURE(i);
        for (const auto& b : bad) CAPTURE(b);
        CHECK(bad.empty());
        CHECK(lptest::lp_objective(model, point) ==
              doctest::Approx(s.objective).epsilon(1e-9));

        StateGraph graph = build_state_graph(inst.params, g);
        auto [gs, gtab] = solve_graph_dp(inst, graph);
        FlowDualSolution fd = build_dual_flow(gs, inst, graph);
        lptest::Model gmodel = lptest::parse_lp(emit_lp(LpForm::ext_graph, inst, g));
        auto gpoint = lp_point(fd, inst, graph);
        auto gbad = lptest::check_lp_point(gmodel, gpoint, 1e-7);
        for (const auto& b : gbad) CAPTURE(b);
        CHECK(gbad.empty());
        CHECK(lptest::lp_objective(gmodel, gpoint) ==
              doctest::Approx(gs.objective).epsilon(1e-9));
    }
}
