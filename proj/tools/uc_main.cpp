#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "uc/bench.hpp"
#include "uc/dispatch.hpp"
#include "uc/dp_graph.hpp"
#include "uc/dp_interval.hpp"
#include "uc/extform.hpp"
#include "uc/grid.hpp"
#include "uc/instance_gen.hpp"
#include "uc/model.hpp"
#include "uc/oracle.hpp"
#include "uc/tree.hpp"

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw uc::ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw uc::ParseError("cannot write " + out_path);
    out << text;
}

struct OutputOpts {
    std::string format = "json";
    std::string out_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--format", format, "json or pretty")
            ->check(CLI::IsMember({"json", "pretty"}));
        cmd->add_option("--out", out_path, "write to file instead of stdout");
    }

    void emit(const ordered_json& j, const std::string& pretty) const {
        write_output(format == "json" ? j.dump(2) + "\n" : pretty, out_path);
    }
};

std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

ordered_json schedule_json(const uc::Schedule& s, const std::string& algo) {
    ordered_json j;
    j["objective"] = s.objective;
    j["algo"] = algo;
    j["x"] = s.x;
    j["y"] = s.y;
    j["u"] = s.u;
    return j;
}

std::string schedule_pretty(const uc::Schedule& s) {
    std::ostringstream out;
    out << "objective " << fmt_num(s.objective) << "\n";
    out << "  t  y  u          x\n";
    for (size_t t = 0; t < s.x.size(); ++t) {
        char line[80];
        std::snprintf(line, sizeof(line), "%3zu  %d  %d %10s\n", t + 1, s.y[t], s.u[t],
                      fmt_num(s.x[t]).c_str());
        out << line;
    }
    return out.str();
}

// Cross-checks every solver path on one instance; false on any disagreement.
bool verify_det(const uc::DetInstance& inst, const std::string& label,
                std::vector<std::string>& failures) {
    auto fail = [&](const std::string& what) {
        failures.push_back(label + ": " + what);
        return false;
    };
    uc::ValueGrid grid = uc::candidate_set(inst.params, inst.cost, uc::ValueGrid::Variant::det);
    uc::DispatchTable table = uc::dispatch_table(inst, grid);
    auto [sched, vf] = uc::solve_interval_dp(inst, table, grid);
    bool ok = true;

    auto bad = uc::check_schedule(inst, sched);
    if (!bad.empty()) ok = fail("interval argmin infeasible: " + bad.front());
    double cost = uc::schedule_cost(inst, sched);
    if (std::abs(cost - sched.objective) > 1e-9)
        ok = fail("interval objective " + fmt_num(sched.objective) +
                  " vs recosted " + fmt_num(cost));

    if (inst.startup.mode == uc::StartupProfile::Mode::constant) {
        uc::StateGraph graph = uc::build_state_graph(inst.params, grid);
        auto [gsched, gtab] = uc::solve_graph_dp(inst, graph);
        if (std::abs(gsched.objective - sched.objective) > 1e-9)
            ok = fail("graph " + fmt_num(gsched.objective) + " vs interval " +
                      fmt_num(sched.objective));
        auto gbad = uc::check_schedule(inst, gsched);
        if (!gbad.empty()) ok = fail("graph argmin infeasible: " + gbad.front());

        uc::FlowDualSolution fd = uc::build_dual_flow(gsched, inst, graph);
        auto fviol = uc::check_feasibility(fd, inst, graph);
        if (!fviol.empty())
            ok = fail("flow dual violates " + fviol.front().row);
        if (!uc::is_binary(fd)) ok = fail("flow dual not binary");
        if (std::abs(uc::dual_objective(fd, inst, graph) - gsched.objective) > 1e-9)
            ok = fail("flow dual objective drift");
        uc::Schedule frec = uc::recover_schedule(fd, inst, graph);
        if (frec.x != gsched.x || frec.y != gsched.y || frec.u != gsched.u)
            ok = fail("flow recovery differs from schedule");
    }

    if (inst.params.T <= 6 && grid.aleph() <= 6) {
        uc::OracleResult ref = uc::enumerate_det(inst, grid.positive_values);
        if (std::abs(ref.objective - sched.objective) > 1e-9)
            ok = fail("oracle " + fmt_num(ref.objective) + " vs interval " +
                      fmt_num(sched.objective));
    }

    uc::IntervalDualSolution id = uc::build_dual_interval(sched, inst);
    auto iviol = uc::check_feasibility(id, inst);
    if (!iviol.empty()) ok = fail("interval dual violates " + iviol.front().row);
    if (!uc::is_binary(id)) ok = fail("interval dual not binary");
    if (std::abs(uc::dual_objective(id, inst) - sched.objective) > 1e-9)
        ok = fail("interval dual objective drift");
    uc::Schedule irec = uc::recover_schedule(id, inst);
    if (irec.x != sched.x || irec.y != sched.y || irec.u != sched.u)
        ok = fail("interval recovery differs from schedule");
    return ok;
}

bool verify_tree(const uc::ScenarioTree& tree, const std::string& label,
                 std::vector<std::string>& failures) {
    auto fail = [&](const std::string& what) {
        failures.push_back(label + ": " + what);
        return false;
    };
    uc::ValueGrid grid = uc::candidate_set(tree.params, tree.cost, uc::ValueGrid::Variant::sto);
    uc::StateGraph graph = uc::build_state_graph(tree.params, grid);
    auto [policy, value] = uc::solve_tree_dp(tree, graph);
    bool ok = true;

    auto bad = uc::validate_policy(tree, policy);
    if (!bad.empty()) ok = fail("tree argmin infeasible: " + bad.front());
    double cost = uc::policy_cost(tree, policy);
    if (std::abs(cost - value) > 1e-9)
        ok = fail("tree objective " + fmt_num(value) + " vs recosted " + fmt_num(cost));

    if (tree.N() <= 12 && grid.aleph() <= 5) {
        uc::TreeOracleResult ref = uc::enumerate_tree(tree, grid.positive_values);
        if (std::abs(ref.objective - value) > 1e-9)
            ok = fail("oracle " + fmt_num(ref.objective) + " vs tree " + fmt_num(value));
    }

    uc::FlowDualSolution fd = uc::build_dual_flow(policy, tree, graph);
    auto fviol = uc::check_feasibility(fd, tree, graph);
    if (!fviol.empty()) ok = fail("tree dual violates " + fviol.front().row);
    if (!uc::is_binary(fd)) ok = fail("tree dual not binary");
    if (std::abs(uc::dual_objective(fd, tree, graph) - value) > 1e-9)
        ok = fail("tree dual objective drift");
    uc::TreePolicy prec = uc::recover_policy(fd, tree, graph);
    if (prec.x != policy.x || prec.y != policy.y || prec.u != policy.u)
        ok = fail("tree recovery differs from policy");
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-generator unit commitment solver"};
    app.require_subcommand(1);
    int rc = 0;

    // solve-det
    {
        auto* cmd = app.add_subcommand("solve-det", "solve a deterministic instance");
        auto input = std::make_shared<std::string>();
        auto algo = std::make_shared<std::string>("interval");
        auto out = std::make_shared<OutputOpts>();
        cmd->add_option("input", *input, "instance JSON")->required();
        cmd->add_option("--algo", *algo, "interval or graph")
            ->check(CLI::IsMember({"interval", "graph"}));
        out->attach(cmd);
        cmd->callback([input, algo, out]() {
            uc::DetInstance inst = uc::parse_instance(read_file(*input));
            uc::ValueGrid grid =
                uc::candidate_set(inst.params, inst.cost, uc::ValueGrid::Variant::det);
            uc::Schedule sched;
            if (*algo == "interval") {
                uc::DispatchTable table = uc::dispatch_table(inst, grid);
                sched = uc::solve_interval_dp(inst, table, grid).first;
            } else {
                uc::StateGraph graph = uc::build_state_graph(inst.params, grid);
                sched = uc::solve_graph_dp(inst, graph).first;
            }
            out->emit(schedule_json(sched, *algo), schedule_pretty(sched));
        });
    }

    // solve-sto
    {
        auto* cmd = app.add_subcommand("solve-sto", "solve a scenario-tree instance");
        auto input = std::make_shared<std::string>();
        auto out = std::make_shared<OutputOpts>();
        cmd->add_option("input", *input, "tree JSON")->required();
        out->attach(cmd);
        cmd->callback([input, out]() {
            uc::ScenarioTree tree = uc::parse_tree(read_file(*input));
            uc::ValueGrid grid =
                uc::candidate_set(tree.params, tree.cost, uc::ValueGrid::Variant::sto);
            uc::StateGraph graph = uc::build_state_graph(tree.params, grid);
            auto [policy, value] = uc::solve_tree_dp(tree, graph);
            ordered_json j;
            j["objective"] = value;
            j["nodes"] = ordered_json::array();
            for (int m = 0; m < tree.N(); ++m)
                j["nodes"].push_back({{"id", m},
                                      {"t", tree.nodes[m].t},
                                      {"x", policy.x[m]},
                                      {"y", policy.y[m]},
                                      {"u", policy.u[m]}});
            std::ostringstream pretty;
            pretty << "objective " << fmt_num(value) << "\n";
            pretty << "  id   t  y  u          x\n";
            for (int m = 0; m < tree.N(); ++m) {
                char line[96];
                std::snprintf(line, sizeof(line), "%4d %3d  %d  %d %10s\n", m,
                              tree.nodes[m].t, policy.y[m], policy.u[m],
                              fmt_num(policy.x[m]).c_str());
                pretty << line;
            }
            out->emit(j, pretty.str());
        });
    }

    // dispatch
    {
        auto* cmd = app.add_subcommand("dispatch", "price one on-interval [t,k]");
        auto input = std::make_shared<std::string>();
        auto t = std::make_shared<int>(0);
        auto k = std::make_shared<int>(0);
        auto out = std::make_shared<OutputOpts>();
        cmd->add_option("input", *input, "instance JSON")->required();
        cmd->add_option("--t", *t, "first on-period")->required();
        cmd->add_option("--k", *k, "last on-period")->required();
        out->attach(cmd);
        cmd->callback([input, t, k, out]() {
            uc::DetInstance inst = uc::parse_instance(read_file(*input));
            uc::ValueGrid grid =
                uc::candidate_set(inst.params, inst.cost, uc::ValueGrid::Variant::det);
            uc::DispatchResult r;
            if (uc::interval_legal(inst.params, *t, *k))
                r = uc::dispatch_interval(inst, grid, *t, *k);
            ordered_json j;
            j["t"] = *t;
            j["k"] = *k;
            if (r.profile.empty()) {
                j["feasible"] = false;
            } else {
                j["feasible"] = true;
                j["cost"] = r.cost;
                j["profile"] = r.profile;
            }
            std::ostringstream pretty;
            if (r.profile.empty()) {
                pretty << "C(" << *t << "," << *k << ") infeasible\n";
            } else {
                pretty << "C(" << *t << "," << *k << ") = " << fmt_num(r.cost) << "\n";
                for (size_t s = 0; s < r.profile.size(); ++s)
                    pretty << "  x_" << (*t + static_cast<int>(s)) << " = "
                           << fmt_num(r.profile[s]) << "\n";
            }
            out->emit(j, pretty.str());
        });
    }

    // grid
    {
        auto* cmd = app.add_subcommand("grid", "print the candidate generation levels");
        auto input = std::make_shared<std::string>();
        auto sto = std::make_shared<bool>(false);
        auto tree_doc = std::make_shared<bool>(false);
        auto out = std::make_shared<OutputOpts>();
        cmd->add_option("input", *input, "instance or tree JSON")->required();
        cmd->add_flag("--sto", *sto, "use the longer stochastic walks");
        cmd->add_flag("--tree", *tree_doc, "input is a scenario tree (implies --sto)");
        out->attach(cmd);
        cmd->callback([input, sto, tree_doc, out]() {
            uc::ValueGrid grid;
            if (*tree_doc) {
                uc::ScenarioTree tree = uc::parse_tree(read_file(*input));
                grid = uc::candidate_set(tree.params, tree.cost, uc::ValueGrid::Variant::sto);
            } else {
                uc::DetInstance inst = uc::parse_instance(read_file(*input));
                grid = uc::candidate_set(
                    inst.params, inst.cost,
                    *sto ? uc::ValueGrid::Variant::sto : uc::ValueGrid::Variant::det);
            }
            ordered_json j;
            j["aleph"] = grid.aleph();
            j["values"] = grid.values;
            std::ostringstream pretty;
            pretty << "aleph " << grid.aleph() << "\n";
            for (double v : grid.values) pretty << "  " << fmt_num(v) << "\n";
            out->emit(j, pretty.str());
        });
    }

    // graph
    {
        auto* cmd = app.add_subcommand("graph", "inspect the state-transition graph");
        auto input = std::make_shared<std::string>();
        auto dump = std::make_shared<bool>(false);
        auto tree_doc = std::make_shared<bool>(false);
        auto out = std::make_shared<OutputOpts>();
        cmd->add_option("input", *input, "instance or tree JSON")->required();
        cmd->add_flag("--dump", *dump, "list every node and arc");
        cmd->add_flag("--tree", *tree_doc, "input is a scenario tree");
        out->attach(cmd);
        cmd->callback([input, dump, tree_doc, out]() {
            uc::GeneratorParams params;
            uc::ValueGrid grid;
            if (*tree_doc) {
                uc::ScenarioTree tree = uc::parse_tree(read_file(*input));
                params = tree.params;
                grid = uc::candidate_set(tree.params, tree.cost, uc::ValueGrid::Variant::sto);
            } else {
                uc::DetInstance inst = uc::parse_instance(read_file(*input));
                params = inst.params;
                grid = uc::candidate_set(inst.params, inst.cost, uc::ValueGrid::Variant::det);
            }
            uc::StateGraph g = uc::build_state_graph(params, grid);
            ordered_json j;
            j["aleph"] = grid.aleph();
            j["nodes"] = g.node_count();
            j["arcs"] = g.arc_count();
            std::ostringstream pretty;
            pretty << "aleph " << grid.aleph() << ", " << g.node_count() << " nodes, "
                   << g.arc_count() << " arcs\n";
            if (*dump) {
                j["node_list"] = ordered_json::array();
                for (const auto& n : g.nodes)
                    j["node_list"].push_back(
                        {{"id", n.id}, {"x", n.x}, {"y", n.y}, {"u", n.u}, {"d", n.d}});
                j["arc_list"] = ordered_json::array();
                for (const auto& [a, b] : g.arcs) j["arc_list"].push_back({a, b});
                for (const auto& n : g.nodes) {
                    char line[96];
                    std::snprintf(line, sizeof(line), "%3d: x=%-8s y=%d u=%d d=%d ->", n.id,
                                  fmt_num(n.x).c_str(), n.y, n.u, n.d);
                    pretty << line;
                    for (int s : g.succ[n.id]) pretty << " " << s;
                    pretty << "\n";
                }
            }
            out->emit(j, pretty.str());
        });
    }

    // export-lp
    {
        auto* cmd = app.add_subcommand("export-lp", "write an LP/MIP model file");
        auto input = std::make_shared<std::string>();
        auto form_name = std::make_shared<std::string>();
        auto tree_doc = std::make_shared<bool>(false);
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("input", *input, "instance or tree JSON")->required();
        cmd->add_option("--form", *form_name,
                        "ext-interval, ext-graph, ext-tree, or original-mip")
            ->required();
        cmd->add_flag("--tree", *tree_doc, "input is a scenario tree");
        cmd->add_option("--out", *out_path, "write to file instead of stdout");
        cmd->callback([input, form_name, tree_doc, out_path]() {
            uc::LpForm form = uc::parse_lp_form(*form_name);
            std::string text;
            if (*tree_doc) {
                uc::ScenarioTree tree = uc::parse_tree(read_file(*input));
                uc::ValueGrid grid =
                    uc::candidate_set(tree.params, tree.cost, uc::ValueGrid::Variant::sto);
                text = uc::emit_lp(form, tree, grid);
            } else {
                uc::DetInstance inst = uc::parse_instance(read_file(*input));
                uc::ValueGrid grid =
                    uc::candidate_set(inst.params, inst.cost, uc::ValueGrid::Variant::det);
                text = uc::emit_lp(form, inst, grid);
            }
            write_output(text, *out_path);
        });
    }

    // verify
    {
        auto* cmd = app.add_subcommand("verify", "cross-check solvers, duals, and oracle");
        auto input = std::make_shared<std::string>();
        auto tree_doc = std::make_shared<bool>(false);
        auto fuzz = std::make_shared<int>(0);
        auto seed = std::make_shared<unsigned long long>(12345);
        cmd->add_option("input", *input, "instance or tree JSON");
        cmd->add_flag("--tree", *tree_doc, "input is a scenario tree");
        cmd->add_option("--fuzz", *fuzz, "also verify N random instances");
        cmd->add_option("--seed", *seed, "fuzz seed");
        cmd->callback([input, tree_doc, fuzz, seed, &rc]() {
            std::vector<std::string> failures;
            int cases = 0;
            if (!input->empty()) {
                if (*tree_doc)
                    verify_tree(uc::parse_tree(read_file(*input)), *input, failures);
                else
                    verify_det(uc::parse_instance(read_file(*input)), *input, failures);
                ++cases;
            } else if (*fuzz == 0) {
                throw CLI::ValidationError("verify", "needs an input file or --fuzz N");
            }
            std::mt19937_64 rng(*seed);
            for (int i = 0; i < *fuzz; ++i) {
                verify_det(uc::random_small_det(rng), "det#" + std::to_string(i), failures);
                verify_tree(uc::random_small_tree(rng), "tree#" + std::to_string(i),
                            failures);
                cases += 2;
            }
            for (const auto& f : failures) std::cerr << "mismatch " << f << "\n";
            if (failures.empty()) {
                std::cout << "verified " << cases << " case" << (cases == 1 ? "" : "s")
                          << "\n";
            } else {
                rc = 2;
            }
        });
    }

    // bench
    {
        auto* cmd = app.add_subcommand("bench", "time the solvers and fit scaling slopes");
        auto algo = std::make_shared<std::string>("all");
        auto sizes = std::make_shared<std::vector<int>>();
        auto reps = std::make_shared<int>(3);
        auto seed = std::make_shared<unsigned long long>(12345);
        auto out = std::make_shared<OutputOpts>();
        cmd->add_option("--algo", *algo, "graph, interval, tree, or all")
            ->check(CLI::IsMember({"graph", "interval", "tree", "all"}));
        cmd->add_option("--sizes", *sizes, "comma-separated T values (tree: depths)")
            ->delimiter(',');
        cmd->add_option("--reps", *reps, "timed repetitions per size");
        cmd->add_option("--seed", *seed, "instance seed");
        out->attach(cmd);
        cmd->callback([algo, sizes, reps, seed, out]() {
            std::vector<uc::BenchReport> reports;
            unsigned s = static_cast<unsigned>(*seed);
            if (*algo == "graph" || *algo == "all")
                reports.push_back(uc::bench_graph_dp(
                    sizes->empty() || *algo == "all"
                        ? std::vector<int>{10000, 20000, 40000, 100000}
                        : *sizes,
                    *reps, s));
            if (*algo == "tree" || *algo == "all")
                reports.push_back(uc::bench_tree_dp(
                    sizes->empty() || *algo == "all" ? std::vector<int>{10, 13, 17} : *sizes,
                    *reps, s));
            if (*algo == "interval" || *algo == "all")
                reports.push_back(uc::bench_interval_dp(
                    sizes->empty() || *algo == "all"
                        ? std::vector<int>{500, 1000, 2000, 4000}
                        : *sizes,
                    *reps, s));
            ordered_json j = ordered_json::array();
            std::ostringstream pretty;
            for (const auto& r : reports) {
                ordered_json pts = ordered_json::array();
                pretty << r.name << " (slope " << fmt_num(r.slope) << ")\n";
                for (const auto& p : r.points) {
                    pts.push_back({{"size", p.size},
                                   {"median_sec", p.median_sec},
                                   {"objective", p.objective}});
                    char line[96];
                    std::snprintf(line, sizeof(line), "  %9lld  %12.6fs  obj %s\n", p.size,
                                  p.median_sec, fmt_num(p.objective).c_str());
                    pretty << line;
                }
                j.push_back({{"name", r.name}, {"slope", r.slope}, {"points", pts}});
            }
            out->emit(j, pretty.str());
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    } catch (const uc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const uc::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
