#include <charconv>
#include <cmath>
#include <cstdlib>

#include "uc/dispatch.hpp"
#include "uc/extform.hpp"

namespace uc {

std::string format_coeff(double v) {
    if (v == 0) return "0";
    char buf[64];
    std::to_chars_result r =
        std::abs(v) >= 1e-5
            ? std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed)
            : std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

LpForm parse_lp_form(const std::string& name) {
    if (name == "ext-interval") return LpForm::ext_interval;
    if (name == "ext-graph") return LpForm::ext_graph;
    if (name == "ext-tree") return LpForm::ext_tree;
    if (name == "original-mip") return LpForm::original_mip;
    throw ValidationError("unknown model form: " + name);
}

namespace {

using Terms = std::vector<std::pair<double, std::string>>;

// Emits one section at a time; rows wrap at a fixed width with continuation
// lines so the output is byte-stable across platforms.
class LpDoc {
  public:
    void section(const char* s) {
        buf_ += s;
        buf_ += '\n';
    }

    void row(const std::string& name, const Terms& terms, const char* op, double rhs) {
        line_ = " " + name + ":";
        bool first = true;
        for (const auto& [c, var] : terms) {
            if (c == 0) continue;
            if (first) {
                if (c < 0) token("-");
            } else {
                token(c < 0 ? "-" : "+");
            }
            token(format_coeff(std::abs(c)));
            token(var);
            first = false;
        }
        if (first) token("0");  // structurally empty row; keep it parseable
        if (op[0] != '\0') {
            token(op);
            token(format_coeff(rhs));
        }
        buf_ += line_;
        buf_ += '\n';
        line_.clear();
    }

    void objective(const Terms& terms) { row("obj", terms, "", 0); }

    void free_var(const std::string& v) {
        buf_ += " " + v + " free\n";
    }

    void upper_bound(const std::string& v, double ub) {
        buf_ += " " + v + " <= " + format_coeff(ub) + "\n";
    }

    void name_list(const std::vector<std::string>& names) {
        for (const auto& n : names) buf_ += " " + n + "\n";
    }

    std::string take() { return std::move(buf_); }

  private:
    void token(const std::string& tok) {
        if (line_.size() + tok.size() + 1 > 120) {
            buf_ += line_;
            buf_ += '\n';
            line_ = "  ";
        }
        line_ += ' ';
        line_ += tok;
    }

    std::string buf_;
    std::string line_;
};

std::string id2(int a, int b) { return std::to_string(a) + "_" + std::to_string(b); }
std::string id3(int a, int b, int c) { return id2(a, b) + "_" + std::to_string(c); }

bool gamma_legal(const GeneratorParams& p, int a, int b) {
    return a >= p.L && a <= p.T - p.ell - 1 && b >= a + p.ell + 1 && b <= p.T;
}

// Model rows for the on-interval formulation. Row counts: 1 start row, T
// start-balance rows, max(0, T-ell-L) gap rows, min(ell+1, T) terminal rows;
// per legal interval [t,k] with n = k-t+1 periods and K pieces each:
// 2n bound rows, 1 or 2 boundary rows, 2(n-1) ramp rows, nK epigraph rows.
// Linking adds 3T rows.
std::string emit_interval_lp(const DetInstance& inst) {
    const auto& p = inst.params;
    const int T = p.T;
    LpDoc doc;
    doc.section("\\ on-interval extended formulation");
    doc.section("Minimize");

    Terms obj;
    for (int t = 1; t <= T; ++t)
        obj.push_back({inst.startup.start_cost(p.s0 + t - 1), "alpha_" + std::to_string(t)});
    for (int t = 1; t <= T; ++t)
        for (int k = t; k <= T - 1; ++k)
            if (interval_legal(p, t, k))
                obj.push_back({inst.startup.stop_cost(k - t + 1), "beta_" + id2(t, k)});
    for (int a = 1; a <= T; ++a)
        for (int b = a; b <= T; ++b)
            if (gamma_legal(p, a, b))
                obj.push_back({inst.startup.start_cost(b - a - 1), "gamma_" + id2(a, b)});
    for (int t = 1; t <= T; ++t)
        for (int k = t; k <= T; ++k)
            if (interval_legal(p, t, k))
                for (int s = t; s <= k; ++s) obj.push_back({1.0, "wcost_" + id3(t, k, s)});
    doc.objective(obj);

    doc.section("Subject To");
    {
        Terms r;
        for (int t = 1; t <= T; ++t) r.push_back({1.0, "alpha_" + std::to_string(t)});
        doc.row("start_total", r, "<=", 1.0);
    }
    for (int t = 1; t <= T; ++t) {
        Terms r{{-1.0, "alpha_" + std::to_string(t)}};
        for (int k = t; k <= T; ++k)
            if (interval_legal(p, t, k)) r.push_back({1.0, "beta_" + id2(t, k)});
        for (int a = 1; a < t; ++a)
            if (gamma_legal(p, a, t)) r.push_back({-1.0, "gamma_" + id2(a, t)});
        doc.row("flow_start_" + std::to_string(t), r, "=", 0.0);
    }
    for (int t = p.L; t <= T - p.ell - 1; ++t) {
        Terms r;
        for (int k = 1; k <= t; ++k)
            if (interval_legal(p, k, t)) r.push_back({-1.0, "beta_" + id2(k, t)});
        for (int b = t + p.ell + 1; b <= T; ++b)
            if (gamma_legal(p, t, b)) r.push_back({1.0, "gamma_" + id2(t, b)});
        doc.row("flow_gap_" + std::to_string(t), r, "<=", 0.0);
    }
    for (int t = std::max(1, T - p.ell); t <= T; ++t) {
        Terms r{{1.0, "theta_" + std::to_string(t)}};
        for (int k = 1; k <= t; ++k)
            if (interval_legal(p, k, t)) r.push_back({-1.0, "beta_" + id2(k, t)});
        doc.row("flow_end_" + std::to_string(t), r, "=", 0.0);
    }
    for (int t = 1; t <= T; ++t) {
        for (int k = t; k <= T; ++k) {
            if (!interval_legal(p, t, k)) continue;
            std::string b = "beta_" + id2(t, k);
            for (int s = t; s <= k; ++s) {
                std::string q = "q_" + id3(t, k, s);
                doc.row("q_min_" + id3(t, k, s), {{1.0, q}, {-p.c_min, b}}, ">=", 0.0);
                doc.row("q_max_" + id3(t, k, s), {{1.0, q}, {-p.c_max, b}}, "<=", 0.0);
            }
            doc.row("q_start_" + id2(t, k), {{1.0, "q_" + id3(t, k, t)}, {-p.v_bar, b}},
                    "<=", 0.0);
            if (k <= T - 1)
                doc.row("q_end_" + id2(t, k), {{1.0, "q_" + id3(t, k, k)}, {-p.v_bar, b}},
                        "<=", 0.0);
            for (int s = t + 1; s <= k; ++s) {
                std::string qs = "q_" + id3(t, k, s), qp = "q_" + id3(t, k, s - 1);
                doc.row("ramp_up_" + id3(t, k, s), {{1.0, qs}, {-1.0, qp}, {-p.v, b}},
                        "<=", 0.0);
                doc.row("ramp_dn_" + id3(t, k, s), {{1.0, qp}, {-1.0, qs}, {-p.v, b}},
                        "<=", 0.0);
            }
            for (int s = t; s <= k; ++s) {
                const auto& pieces = inst.cost.pieces[s - 1];
                for (size_t pc = 0; pc < pieces.size(); ++pc)
                    doc.row("cost_" + id3(t, k, s) + "_" + std::to_string(pc),
                            {{1.0, "wcost_" + id3(t, k, s)},
                             {-pieces[pc].mu, "q_" + id3(t, k, s)},
                             {-pieces[pc].nu, b}},
                            ">=", 0.0);
            }
        }
    }
    for (int s = 1; s <= T; ++s) {
        Terms rx{{1.0, "x_" + std::to_string(s)}};
        Terms ry{{1.0, "y_" + std::to_string(s)}};
        for (int t = 1; t <= s; ++t)
            for (int k = s; k <= T; ++k)
                if (interval_legal(p, t, k)) {
                    rx.push_back({-1.0, "q_" + id3(t, k, s)});
                    ry.push_back({-1.0, "beta_" + id2(t, k)});
                }
        doc.row("link_x_" + std::to_string(s), rx, "=", 0.0);
        doc.row("link_y_" + std::to_string(s), ry, "=", 0.0);
        Terms ru{{1.0, "u_" + std::to_string(s)}, {-1.0, "alpha_" + std::to_string(s)}};
        for (int a = 1; a < s; ++a)
            if (gamma_legal(p, a, s)) ru.push_back({-1.0, "gamma_" + id2(a, s)});
        doc.row("link_u_" + std::to_string(s), ru, "=", 0.0);
    }

    doc.section("Bounds");
    for (int t = 1; t <= T; ++t)
        for (int k = t; k <= T; ++k)
            if (interval_legal(p, t, k))
                for (int s = t; s <= k; ++s) doc.free_var("wcost_" + id3(t, k, s));
    doc.section("End");
    return doc.take();
}

// Shared shape of the flow formulations: one stage per period (deterministic)
// or per tree node (stochastic). stage_label(i) names the stage; parent(i)
// gives the preceding stage, -1 for the first.
struct FlowStage {
    std::string label;
    int parent;
    double weight;       // objective weight (1 deterministic, p_m stochastic)
    bool terminal;       // carries the uncollected stop credit
    double terminal_w;   // weight of that credit
    const std::vector<CostPiece>* pieces;
};

std::string emit_flow_lp(const char* title, double su, double sd,
                         const std::vector<FlowStage>& stages, const StateGraph& g) {
    LpDoc doc;
    doc.section(title);
    doc.section("Minimize");

    Terms obj;
    for (const auto& st : stages) {
        if (su + sd != 0) obj.push_back({st.weight * (su + sd), "u_" + st.label});
        if (st.terminal && sd != 0) obj.push_back({-sd * st.terminal_w, "y_" + st.label});
        obj.push_back({st.weight, "phi_" + st.label});
    }
    doc.objective(obj);

    doc.section("Subject To");
    auto out_terms = [&g](const std::string& label, int i, double sign, Terms& r) {
        for (int a = g.arc_offset[i]; a < g.arc_offset[i + 1]; ++a)
            r.push_back({sign, "w_" + label + "_" + id2(g.arcs[a].first, g.arcs[a].second)});
    };
    int first = -1;
    for (size_t s = 0; s < stages.size(); ++s)
        if (stages[s].parent < 0) first = static_cast<int>(s);
    {
        Terms r;
        out_terms(stages[first].label, StateGraph::source, 1.0, r);
        doc.row("source_out", r, "=", 1.0);
    }
    for (int i = 0; i < g.node_count(); ++i) {
        if (i == StateGraph::source) continue;
        Terms r;
        out_terms(stages[first].label, i, 1.0, r);
        doc.row("stage_one_" + std::to_string(i), r, "=", 0.0);
    }
    for (size_t s = 0; s < stages.size(); ++s) {
        if (stages[s].parent < 0) continue;
        const std::string& up = stages[stages[s].parent].label;
        for (int i = 0; i < g.node_count(); ++i) {
            Terms r;
            out_terms(stages[s].label, i, 1.0, r);
            for (int k : g.pred[i]) r.push_back({-1.0, "w_" + up + "_" + id2(k, i)});
            doc.row("balance_" + stages[s].label + "_" + std::to_string(i), r, "=", 0.0);
        }
    }
    for (const auto& st : stages) {
        Terms rx{{1.0, "x_" + st.label}};
        Terms ry{{1.0, "y_" + st.label}};
        Terms ru{{1.0, "u_" + st.label}};
        for (int a = 0; a < g.arc_count(); ++a) {
            auto [i, j] = g.arcs[a];
            std::string w = "w_" + st.label + "_" + id2(i, j);
            if (g.nodes[j].x != 0) rx.push_back({-g.nodes[j].x, w});
            if (g.nodes[j].y) ry.push_back({-1.0, w});
            if (g.arc_starts(i, j)) ru.push_back({-1.0, w});
        }
        doc.row("link_x_" + st.label, rx, "=", 0.0);
        doc.row("link_y_" + st.label, ry, "=", 0.0);
        doc.row("link_u_" + st.label, ru, "=", 0.0);
    }
    for (const auto& st : stages) {
        const auto& pieces = *st.pieces;
        for (size_t pc = 0; pc < pieces.size(); ++pc)
            doc.row("cost_" + st.label + "_" + std::to_string(pc),
                    {{1.0, "phi_" + st.label},
                     {-pieces[pc].mu, "x_" + st.label},
                     {-pieces[pc].nu, "y_" + st.label}},
                    ">=", 0.0);
    }

    doc.section("Bounds");
    for (const auto& st : stages) doc.free_var("phi_" + st.label);
    doc.section("End");
    return doc.take();
}

// Compact mixed-integer model on (x, y, u) with period-indexed start/stop
// cost variables in table mode. Start-cost rows price a started period by
// bounding su_t from below for every possible preceding gap, which is exact
// only when longer outages never cost less; the emitter rejects decreasing
// tables rather than silently under-pricing.
std::string emit_mip_det(const DetInstance& inst) {
    const auto& p = inst.params;
    const int T = p.T;
    const bool table = inst.startup.mode == StartupProfile::Mode::table;
    if (table)
        for (size_t i = 1; i < inst.startup.su_table.size(); ++i)
            if (inst.startup.su_table[i] < inst.startup.su_table[i - 1] - 1e-12)
                throw ValidationError(
                    "start cost table must be nondecreasing for the start-cost rows");

    LpDoc doc;
    doc.section("\\ compact commitment model");
    doc.section("Minimize");
    Terms obj;
    for (int t = 1; t <= T; ++t) {
        std::string ts = std::to_string(t);
        if (table) {
            obj.push_back({1.0, "su_" + ts});
            if (t >= p.L && t <= T - 1) obj.push_back({1.0, "sd_" + ts});
        } else {
            if (inst.startup.su + inst.startup.sd != 0)
                obj.push_back({inst.startup.su + inst.startup.sd, "u_" + ts});
            if (t == T && inst.startup.sd != 0) obj.push_back({-inst.startup.sd, "y_" + ts});
        }
        obj.push_back({1.0, "phi_" + ts});
    }
    doc.objective(obj);

    doc.section("Subject To");
    for (int t = p.L; t <= T; ++t) {
        Terms r;
        for (int i = t - p.L + 1; i <= t; ++i) r.push_back({1.0, "u_" + std::to_string(i)});
        r.push_back({-1.0, "y_" + std::to_string(t)});
        doc.row("minup_" + std::to_string(t), r, "<=", 0.0);
    }
    for (int t = p.ell; t <= T; ++t) {
        Terms r;
        for (int i = t - p.ell + 1; i <= t; ++i) r.push_back({1.0, "u_" + std::to_string(i)});
        if (t - p.ell >= 1) r.push_back({1.0, "y_" + std::to_string(t - p.ell)});
        doc.row("mindown_" + std::to_string(t), r, "<=", 1.0);
    }
    for (int t = 1; t <= T; ++t) {
        Terms r{{1.0, "y_" + std::to_string(t)}, {-1.0, "u_" + std::to_string(t)}};
        if (t > 1) r.push_back({-1.0, "y_" + std::to_string(t - 1)});
        doc.row("logic_" + std::to_string(t), r, "<=", 0.0);
    }
    for (int t = 1; t <= T; ++t) {
        std::string ts = std::to_string(t);
        doc.row("cap_min_" + ts, {{p.c_min, "y_" + ts}, {-1.0, "x_" + ts}}, "<=", 0.0);
        doc.row("cap_max_" + ts, {{1.0, "x_" + ts}, {-p.c_max, "y_" + ts}}, "<=", 0.0);
    }
    for (int t = 1; t <= T; ++t) {
        std::string ts = std::to_string(t);
        Terms up{{1.0, "x_" + ts}};
        if (t > 1) {
            up.push_back({-1.0, "x_" + std::to_string(t - 1)});
            up.push_back({p.v_bar - p.v, "y_" + std::to_string(t - 1)});
        }
        doc.row("ramp_up_" + ts, up, "<=", p.v_bar);
        Terms dn{{-1.0, "x_" + ts}, {p.v_bar - p.v, "y_" + ts}};
        if (t > 1) dn.push_back({1.0, "x_" + std::to_string(t - 1)});
        doc.row("ramp_dn_" + ts, dn, "<=", p.v_bar);
    }
    for (int t = 1; t <= T; ++t) {
        const auto& pieces = inst.cost.pieces[t - 1];
        std::string ts = std::to_string(t);
        for (size_t pc = 0; pc < pieces.size(); ++pc)
            doc.row("cost_" + ts + "_" + std::to_string(pc),
                    {{1.0, "phi_" + ts},
                     {-pieces[pc].mu, "x_" + ts},
                     {-pieces[pc].nu, "y_" + ts}},
                    ">=", 0.0);
    }
    if (table) {
        for (int t = 1; t <= T; ++t) {
            double c = inst.startup.start_cost(p.s0 + t - 1);
            Terms r{{1.0, "su_" + std::to_string(t)}, {-c, "u_" + std::to_string(t)}};
            for (int s = 1; s < t; ++s) r.push_back({c, "y_" + std::to_string(s)});
            doc.row("su_init_" + std::to_string(t), r, ">=", 0.0);
        }
        for (int t = p.L + p.ell + 1; t <= T; ++t)
            for (int k = p.L; k <= t - p.ell - 1; ++k) {
                double c = inst.startup.start_cost(t - k - 1);
                Terms r{{1.0, "su_" + std::to_string(t)}, {-c, "u_" + std::to_string(t)}};
                for (int s = k + 1; s < t; ++s) r.push_back({c, "y_" + std::to_string(s)});
                doc.row("su_gap_" + id2(t, k), r, ">=", 0.0);
            }
        for (int t = p.L; t <= T - 1; ++t)
            for (int k = 1; k <= t - p.L + 1; ++k) {
                double c = inst.startup.stop_cost(t - k + 1);
                Terms r{{1.0, "sd_" + std::to_string(t)}, {-c, "u_" + std::to_string(k)}};
                for (int s = k; s <= t; ++s) r.push_back({-c, "y_" + std::to_string(s)});
                r.push_back({c, "y_" + std::to_string(t + 1)});
                doc.row("sd_run_" + id2(t, k), r, ">=", -c * (t - k + 1));
            }
    }

    doc.section("Bounds");
    for (int t = 1; t <= T; ++t) doc.upper_bound("y_" + std::to_string(t), 1.0);
    for (int t = 1; t <= T; ++t) doc.upper_bound("u_" + std::to_string(t), 1.0);
    for (int t = 1; t <= T; ++t) doc.free_var("phi_" + std::to_string(t));
    doc.section("Generals");
    {
        std::vector<std::string> names;
        for (int t = 1; t <= T; ++t) names.push_back("y_" + std::to_string(t));
        for (int t = 1; t <= T; ++t) names.push_back("u_" + std::to_string(t));
        doc.name_list(names);
    }
    doc.section("End");
    return doc.take();
}

std::string emit_mip_tree(const ScenarioTree& tree) {
    const auto& p = tree.params;
    const int N = tree.N();
    LpDoc doc;
    doc.section("\\ compact commitment model on a scenario tree");
    doc.section("Minimize");
    Terms obj;
    for (int m = 0; m < N; ++m) {
        std::string ms = std::to_string(m);
        const TreeNode& n = tree.nodes[m];
        if (tree.startup.su + tree.startup.sd != 0)
            obj.push_back({n.p * (tree.startup.su + tree.startup.sd), "u_" + ms});
        if (n.children.empty() && tree.startup.sd != 0)
            obj.push_back({-tree.startup.sd * n.p, "y_" + ms});
        obj.push_back({n.p, "phi_" + ms});
    }
    doc.objective(obj);

    doc.section("Subject To");
    auto ancestor = [&tree](int m, int steps) {
        while (steps-- > 0 && m >= 0) m = tree.nodes[m].parent;
        return m;
    };
    for (int m = 0; m < N; ++m) {
        if (tree.nodes[m].t < p.L) continue;
        Terms r;
        int a = m;
        for (int i = 0; i < p.L; ++i) {
            r.push_back({1.0, "u_" + std::to_string(a)});
            a = tree.nodes[a].parent;
        }
        r.push_back({-1.0, "y_" + std::to_string(m)});
        doc.row("minup_" + std::to_string(m), r, "<=", 0.0);
    }
    for (int m = 0; m < N; ++m) {
        if (tree.nodes[m].t < p.ell) continue;
        Terms r;
        int a = m;
        for (int i = 0; i < p.ell; ++i) {
            r.push_back({1.0, "u_" + std::to_string(a)});
            a = tree.nodes[a].parent;
        }
        int back = ancestor(m, p.ell);
        if (back >= 0) r.push_back({1.0, "y_" + std::to_string(back)});
        doc.row("mindown_" + std::to_string(m), r, "<=", 1.0);
    }
    for (int m = 0; m < N; ++m) {
        Terms r{{1.0, "y_" + std::to_string(m)}, {-1.0, "u_" + std::to_string(m)}};
        if (tree.nodes[m].parent >= 0)
            r.push_back({-1.0, "y_" + std::to_string(tree.nodes[m].parent)});
        doc.row("logic_" + std::to_string(m), r, "<=", 0.0);
    }
    for (int m = 0; m < N; ++m) {
        std::string ms = std::to_string(m);
        doc.row("cap_min_" + ms, {{p.c_min, "y_" + ms}, {-1.0, "x_" + ms}}, "<=", 0.0);
        doc.row("cap_max_" + ms, {{1.0, "x_" + ms}, {-p.c_max, "y_" + ms}}, "<=", 0.0);
    }
    for (int m = 0; m < N; ++m) {
        std::string ms = std::to_string(m);
        int up = tree.nodes[m].parent;
        Terms ru{{1.0, "x_" + ms}};
        if (up >= 0) {
            ru.push_back({-1.0, "x_" + std::to_string(up)});
            ru.push_back({p.v_bar - p.v, "y_" + std::to_string(up)});
        }
        doc.row("ramp_up_" + ms, ru, "<=", p.v_bar);
        Terms rd{{-1.0, "x_" + ms}, {p.v_bar - p.v, "y_" + ms}};
        if (up >= 0) rd.push_back({1.0, "x_" + std::to_string(up)});
        doc.row("ramp_dn_" + ms, rd, "<=", p.v_bar);
    }
    for (int m = 0; m < N; ++m) {
        const auto& pieces = tree.cost.pieces[m];
        std::string ms = std::to_string(m);
        for (size_t pc = 0; pc < pieces.size(); ++pc)
            doc.row("cost_" + ms + "_" + std::to_string(pc),
                    {{1.0, "phi_" + ms},
                     {-pieces[pc].mu, "x_" + ms},
                     {-pieces[pc].nu, "y_" + ms}},
                    ">=", 0.0);
    }

    doc.section("Bounds");
    for (int m = 0; m < N; ++m) doc.upper_bound("y_" + std::to_string(m), 1.0);
    for (int m = 0; m < N; ++m) doc.upper_bound("u_" + std::to_string(m), 1.0);
    for (int m = 0; m < N; ++m) doc.free_var("phi_" + std::to_string(m));
    doc.section("Generals");
    {
        std::vector<std::string> names;
        for (int m = 0; m < N; ++m) names.push_back("y_" + std::to_string(m));
        for (int m = 0; m < N; ++m) names.push_back("u_" + std::to_string(m));
        doc.name_list(names);
    }
    doc.section("End");
    return doc.take();
}

}  // namespace

std::string emit_lp(LpForm form, const DetInstance& inst, const ValueGrid& grid) {
    switch (form) {
        case LpForm::ext_interval:
            return emit_interval_lp(inst);
        case LpForm::ext_graph: {
            if (inst.startup.mode != StartupProfile::Mode::constant)
                throw ValidationError("ext-graph requires constant start/stop costs");
            StateGraph g = build_state_graph(inst.params, grid);
            std::vector<FlowStage> stages;
            for (int t = 1; t <= inst.params.T; ++t)
                stages.push_back({std::to_string(t), t - 2, 1.0, t == inst.params.T, 1.0,
                                  &inst.cost.pieces[t - 1]});
            return emit_flow_lp("\\ state-flow extended formulation", inst.startup.su,
                                inst.startup.sd, stages, g);
        }
        case LpForm::original_mip:
            return emit_mip_det(inst);
        case LpForm::ext_tree:
            throw ValidationError("ext-tree needs a scenario tree input");
    }
    throw ValidationError("unknown model form");
}

std::string emit_lp(LpForm form, const ScenarioTree& tree, const ValueGrid& grid) {
    switch (form) {
        case LpForm::ext_tree: {
            if (grid.variant == ValueGrid::Variant::det)
                throw ValidationError(
                    "ext-tree needs the longer stochastic candidate walks");
            StateGraph g = build_state_graph(tree.params, grid);
            std::vector<FlowStage> stages;
            for (int m = 0; m < tree.N(); ++m)
                stages.push_back({std::to_string(m), tree.nodes[m].parent,
                                  tree.nodes[m].p, tree.nodes[m].children.empty(),
                                  tree.nodes[m].p, &tree.cost.pieces[m]});
            return emit_flow_lp("\\ state-flow extended formulation on a scenario tree",
                                tree.startup.su, tree.startup.sd, stages, g);
        }
        case LpForm::original_mip:
            return emit_mip_tree(tree);
        case LpForm::ext_interval:
        case LpForm::ext_graph:
            throw ValidationError("this form takes a deterministic instance");
    }
    throw ValidationError("unknown model form");
}

}  // namespace uc
