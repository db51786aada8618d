#pragma once

#include <map>
#include <string>
#include <vector>

#include "uc/dp_graph.hpp"
#include "uc/model.hpp"
#include "uc/tree.hpp"

namespace uc {

// Dual of the interval formulation. All containers are 1-based through the
// accessors below; beta/gamma/q are dense T x T with zeros off the legal set.
//   alpha[t]    commitment starts with a run beginning at t
//   beta[t][k]  a run occupies exactly [t,k]
//   gamma[k][t] consecutive runs end at k and restart at t
//   theta[t]    the last run ends at t, t in [T-ell, T]
//   q[t][k][s]  dispatch attached to beta[t][k] at period s in [t,k]
struct IntervalDualSolution {
    int T = 0;
    std::vector<double> alpha;                           // [t-1]
    std::vector<std::vector<double>> beta;               // [t-1][k-1]
    std::vector<std::vector<double>> gamma;              // [k-1][t-1]
    std::vector<double> theta;                           // [t-1]
    std::vector<std::vector<std::vector<double>>> q;     // [t-1][k-1][s-t]
};

// Dual of the flow formulation: one flow value per stage and arc. For a
// deterministic horizon stages are periods 1..T; for a scenario tree they
// are node ids in tree order. w[stage][a] pairs with graph.arcs[a].
struct FlowDualSolution {
    std::vector<std::vector<double>> w;
};

struct RowViolation {
    std::string row;
    double residual = 0.0;
};

IntervalDualSolution build_dual_interval(const Schedule& s, const DetInstance& inst);
FlowDualSolution build_dual_flow(const Schedule& s, const DetInstance& inst,
                                 const StateGraph& graph);
FlowDualSolution build_dual_flow(const TreePolicy& policy, const ScenarioTree& tree,
                                 const StateGraph& graph);

Schedule recover_schedule(const IntervalDualSolution& dual, const DetInstance& inst);
Schedule recover_schedule(const FlowDualSolution& dual, const DetInstance& inst,
                          const StateGraph& graph);
TreePolicy recover_policy(const FlowDualSolution& dual, const ScenarioTree& tree,
                          const StateGraph& graph);

// Row-by-row residual scan; empty result means feasible to within tol.
std::vector<RowViolation> check_feasibility(const IntervalDualSolution& dual,
                                            const DetInstance& inst, double tol = 1e-7);
std::vector<RowViolation> check_feasibility(const FlowDualSolution& dual,
                                            const DetInstance& inst, const StateGraph& graph,
                                            double tol = 1e-7);
std::vector<RowViolation> check_feasibility(const FlowDualSolution& dual,
                                            const ScenarioTree& tree, const StateGraph& graph,
                                            double tol = 1e-7);

bool is_binary(const IntervalDualSolution& dual, double tol = 1e-9);
bool is_binary(const FlowDualSolution& dual, double tol = 1e-9);

double dual_objective(const IntervalDualSolution& dual, const DetInstance& inst);
double dual_objective(const FlowDualSolution& dual, const DetInstance& inst,
                      const StateGraph& graph);
double dual_objective(const FlowDualSolution& dual, const ScenarioTree& tree,
                      const StateGraph& graph);

enum class LpForm { ext_interval, ext_graph, ext_tree, original_mip };

LpForm parse_lp_form(const std::string& name);  // "ext-interval" etc.

std::string emit_lp(LpForm form, const DetInstance& inst, const ValueGrid& grid);
std::string emit_lp(LpForm form, const ScenarioTree& tree, const ValueGrid& grid);

// Named variable assignments matching emit_lp, for checking an emitted model
// against a concrete solution point.
std::map<std::string, double> lp_point(const IntervalDualSolution& dual,
                                       const DetInstance& inst);
std::map<std::string, double> lp_point(const FlowDualSolution& dual, const DetInstance& inst,
                                       const StateGraph& graph);
std::map<std::string, double> lp_point(const FlowDualSolution& dual, const ScenarioTree& tree,
                                       const StateGraph& graph);

// Decimal formatting used by the LP writer: shortest round-trip, fixed
// notation for magnitudes >= 1e-5, no trailing zeros.
std::string format_coeff(double v);

}  // namespace uc
