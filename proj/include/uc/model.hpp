#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace uc {

// Thrown on malformed input documents; carries a byte offset when known.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a document parses but violates a model invariant.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Physical limits of the single generator. Periods are 1-based everywhere.
struct GeneratorParams {
    int T = 0;          // planning horizon
    int L = 1;          // minimum-up periods
    int ell = 1;        // minimum-down periods
    double c_min = 0;   // generation lower bound when on (MW)
    double c_max = 0;   // generation upper bound (MW)
    double v_bar = 0;   // ramp bound on the first/last period of an on-run (MW)
    double v = 0;       // ramp bound between consecutive on-periods (MW/period)
    int s0 = 1;         // offline periods already served before t=1 (>= ell)
};

// Start cost as a function of preceding offline length, stop cost as a function
// of online length. Constant mode ignores the tables.
struct StartupProfile {
    enum class Mode { constant, table };
    Mode mode = Mode::constant;
    double su = 0;
    double sd = 0;
    std::vector<double> su_table;  // su_table[d-1] = start cost after d offline periods, d in [1, s0+T]
    std::vector<double> sd_table;  // sd_table[d-1] = stop cost after d online periods, d in [1, T]

    double start_cost(int offline_len) const;
    double stop_cost(int online_len) const;
};

struct CostPiece {
    double mu = 0;  // slope
    double nu = 0;  // intercept
};

// Per-period (or per-tree-node) generation cost: max over pieces of mu*x + nu,
// zero when offline. Optionally remembers the quadratic it was derived from.
struct CostModel {
    std::vector<std::vector<CostPiece>> pieces;  // pieces[t-1] for period t

    bool from_quadratic = false;
    double qa = 0, qb = 0, qc = 0;
    std::vector<double> prices;
    std::vector<double> abscissas;  // supporting x-values, shared across periods
};

struct DetInstance {
    GeneratorParams params;
    StartupProfile startup;
    CostModel cost;
};

// A committed solution: u[t] = max(y[t]-y[t-1], 0) with y[0] = 0.
struct Schedule {
    std::vector<double> x;  // x[t-1], MW
    std::vector<int> y;     // on/off
    std::vector<int> u;     // start flags
    double objective = 0;
};

DetInstance parse_instance(const std::string& document);
std::string emit_instance(const DetInstance& inst);

void validate_params(const GeneratorParams& p);
void validate_instance(const DetInstance& inst);

// Tangent-line linearization of a*x^2 + b*x + c - q_t*x on K equally spaced
// supporting points spanning [c_min, c_max].
CostModel linearize_quadratic(double a, double b, double c,
                              const std::vector<double>& prices, int K,
                              const GeneratorParams& params);

// max over pieces of mu*x + nu when y=1; exactly 0 when y=0.
double eval_cost(const CostModel& cost, int t, double x, int y);

// Names every violated model constraint (empty == feasible). Tolerance 1e-7.
std::vector<std::string> check_schedule(const DetInstance& inst, const Schedule& s);

// Total cost of a feasible schedule under the instance's cost data.
double schedule_cost(const DetInstance& inst, const Schedule& s);

}  // namespace uc
