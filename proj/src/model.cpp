#include "uc/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace uc {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const json& require(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing key: ") + key);
    return *it;
}

double num(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number()) throw ParseError(std::string(key) + " must be a number");
    return v.get<double>();
}

int integer(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number_integer()) throw ParseError(std::string(key) + " must be an integer");
    return v.get<int>();
}

std::vector<double> num_array(const json& v, const char* what) {
    if (!v.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) throw ParseError(std::string(what) + " entries must be numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<CostPiece> parse_piece_row(const json& row, int t) {
    if (!row.is_array() || row.empty())
        throw ParseError("cost.pieces[" + std::to_string(t) + "] must be a non-empty array");
    std::vector<CostPiece> pieces;
    pieces.reserve(row.size());
    for (const auto& pr : row) {
        if (!pr.is_array() || pr.size() != 2 || !pr[0].is_number() || !pr[1].is_number())
            throw ParseError("cost piece must be a [mu, nu] pair");
        pieces.push_back({pr[0].get<double>(), pr[1].get<double>()});
    }
    return pieces;
}

// Maximal on-runs of y as [start, end] pairs, 1-based.
std::vector<std::pair<int, int>> on_runs(const std::vector<int>& y) {
    std::vector<std::pair<int, int>> runs;
    int T = static_cast<int>(y.size());
    int t = 1;
    while (t <= T) {
        if (y[t - 1] == 0) {
            ++t;
            continue;
        }
        int k = t;
        while (k + 1 <= T && y[k] == 1) ++k;
        runs.push_back({t, k});
        t = k + 1;
    }
    return runs;
}

}  // namespace

double StartupProfile::start_cost(int offline_len) const {
    if (mode == Mode::constant) return su;
    if (offline_len < 1 || offline_len > static_cast<int>(su_table.size()))
        throw ValidationError("start cost lookup outside table: d=" + std::to_string(offline_len));
    return su_table[offline_len - 1];
}

double StartupProfile::stop_cost(int online_len) const {
    if (mode == Mode::constant) return sd;
    if (online_len < 1 || online_len > static_cast<int>(sd_table.size()))
        throw ValidationError("stop cost lookup outside table: d=" + std::to_string(online_len));
    return sd_table[online_len - 1];
}

void validate_params(const GeneratorParams& p) {
    if (p.T < 1) throw ValidationError("T >= 1 violated");
    if (p.L < 1) throw ValidationError("L >= 1 violated");
    if (p.ell < 1) throw ValidationError("ell >= 1 violated");
    if (p.s0 < p.ell) throw ValidationError("s0 >= ell violated");
    if (!(p.c_min >= 0)) throw ValidationError("c_min >= 0 violated");
    if (!(p.c_min <= p.v_bar && p.v_bar <= p.c_max))
        throw ValidationError("c_min <= v_bar <= c_max violated");
    if (!(p.v >= 0)) throw ValidationError("v >= 0 violated");
}

void validate_instance(const DetInstance& inst) {
    validate_params(inst.params);
    const auto& p = inst.params;
    if (inst.startup.mode == StartupProfile::Mode::table) {
        if (static_cast<int>(inst.startup.su_table.size()) < p.s0 + p.T)
            throw ValidationError("su_table must cover offline lengths 1.." +
                                  std::to_string(p.s0 + p.T));
        if (static_cast<int>(inst.startup.sd_table.size()) < p.T)
            throw ValidationError("sd_table must cover online lengths 1.." +
                                  std::to_string(p.T));
    }
    if (static_cast<int>(inst.cost.pieces.size()) != p.T)
        throw ValidationError("cost model must provide one piece list per period");
    for (int t = 1; t <= p.T; ++t)
        if (inst.cost.pieces[t - 1].empty())
            throw ValidationError("period " + std::to_string(t) + " has no cost pieces");
}

DetInstance parse_instance(const std::string& document) {
    json j;
    try {
        j = json::parse(document);
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }

    DetInstance inst;
    const json& jp = require(j, "params");
    inst.params.T = integer(jp, "T");
    inst.params.L = integer(jp, "L");
    inst.params.ell = integer(jp, "ell");
    inst.params.c_min = num(jp, "c_min");
    inst.params.c_max = num(jp, "c_max");
    inst.params.v_bar = num(jp, "v_bar");
    inst.params.v = num(jp, "v");
    inst.params.s0 = integer(jp, "s0");

    const json& js = require(j, "startup");
    std::string mode = require(js, "mode").get<std::string>();
    if (mode == "constant") {
        inst.startup.mode = StartupProfile::Mode::constant;
        inst.startup.su = num(js, "su");
        inst.startup.sd = num(js, "sd");
    } else if (mode == "table") {
        inst.startup.mode = StartupProfile::Mode::table;
        inst.startup.su_table = num_array(require(js, "su_table"), "su_table");
        inst.startup.sd_table = num_array(require(js, "sd_table"), "sd_table");
    } else {
        throw ParseError("startup.mode must be \"constant\" or \"table\"");
    }

    const json& jc = require(j, "cost");
    if (jc.contains("pieces")) {
        const json& rows = jc["pieces"];
        if (!rows.is_array()) throw ParseError("cost.pieces must be an array");
        int t = 0;
        for (const auto& row : rows) inst.cost.pieces.push_back(parse_piece_row(row, t++));
    } else if (jc.contains("quadratic")) {
        const json& q = jc["quadratic"];
        double a = num(q, "a"), b = num(q, "b"), c = num(q, "c");
        std::vector<double> prices = num_array(require(jc, "prices"), "cost.prices");
        int K = integer(jc, "K");
        inst.cost = linearize_quadratic(a, b, c, prices, K, inst.params);
    } else {
        throw ParseError("cost must provide either pieces or quadratic");
    }

    validate_instance(inst);
    return inst;
}

std::string emit_instance(const DetInstance& inst) {
    ordered_json j;
    j["params"] = {{"T", inst.params.T},         {"L", inst.params.L},
                   {"ell", inst.params.ell},     {"c_min", inst.params.c_min},
                   {"c_max", inst.params.c_max}, {"v_bar", inst.params.v_bar},
                   {"v", inst.params.v},         {"s0", inst.params.s0}};
    if (inst.startup.mode == StartupProfile::Mode::constant) {
        j["startup"] = {{"mode", "constant"}, {"su", inst.startup.su}, {"sd", inst.startup.sd}};
    } else {
        j["startup"] = {{"mode", "table"},
                        {"su_table", inst.startup.su_table},
                        {"sd_table", inst.startup.sd_table}};
    }
    ordered_json rows = ordered_json::array();
    for (const auto& row : inst.cost.pieces) {
        ordered_json r = ordered_json::array();
        for (const auto& pc : row) r.push_back({pc.mu, pc.nu});
        rows.push_back(r);
    }
    j["cost"] = {{"pieces", rows}};
    return j.dump(2) + "\n";
}

CostModel linearize_quadratic(double a, double b, double c,
                              const std::vector<double>& prices, int K,
                              const GeneratorParams& params) {
    if (K < 1) throw ValidationError("K >= 1 violated");
    if (static_cast<int>(prices.size()) != params.T)
        throw ValidationError("prices must have one entry per period");
    if (a < 0) throw ValidationError("quadratic cost must be convex (a >= 0)");

    CostModel cost;
    cost.from_quadratic = true;
    cost.qa = a;
    cost.qb = b;
    cost.qc = c;
    cost.prices = prices;

    // Tangent supports at K equally spaced points across [c_min, c_max];
    // the tangent at x~ is (2a*x~ + b - q_t) x + (c - a*x~^2).
    if (K == 1) {
        cost.abscissas.push_back((params.c_min + params.c_max) / 2.0);
    } else {
        double step = (params.c_max - params.c_min) / (K - 1);
        for (int k = 0; k < K; ++k) cost.abscissas.push_back(params.c_min + k * step);
    }
    cost.pieces.resize(params.T);
    for (int t = 1; t <= params.T; ++t) {
        for (double xk : cost.abscissas)
            cost.pieces[t - 1].push_back({2 * a * xk + b - prices[t - 1], c - a * xk * xk});
    }
    return cost;
}

double eval_cost(const CostModel& cost, int t, double x, int y) {
    if (y == 0) return 0.0;
    const auto& row = cost.pieces.at(t - 1);
    double best = row.front().mu * x + row.front().nu;
    for (size_t i = 1; i < row.size(); ++i)
        best = std::max(best, row[i].mu * x + row[i].nu);
    return best;
}

std::vector<std::string> check_schedule(const DetInstance& inst, const Schedule& s) {
    constexpr double tol = 1e-7;
    const auto& p = inst.params;
    std::vector<std::string> out;
    auto fail = [&out](const std::string& m) { out.push_back(m); };

    int T = p.T;
    if (static_cast<int>(s.x.size()) != T || static_cast<int>(s.y.size()) != T ||
        static_cast<int>(s.u.size()) != T) {
        fail("x, y, u must all have length T");
        return out;
    }
    for (int t = 1; t <= T; ++t) {
        int y = s.y[t - 1];
        int yprev = t > 1 ? s.y[t - 2] : 0;
        if (y != 0 && y != 1) fail("y_" + std::to_string(t) + " not binary");
        if (s.u[t - 1] != std::max(y - yprev, 0))
            fail("u_" + std::to_string(t) + " != max(y_t - y_{t-1}, 0)");
        if (y == 0) {
            if (std::abs(s.x[t - 1]) > tol) fail("x_" + std::to_string(t) + " nonzero while off");
        } else {
            if (s.x[t - 1] < p.c_min - tol || s.x[t - 1] > p.c_max + tol)
                fail("x_" + std::to_string(t) + " outside [c_min, c_max]");
        }
    }
    for (int t = 2; t <= T; ++t) {
        if (s.y[t - 2] == 1 && s.y[t - 1] == 1 &&
            std::abs(s.x[t - 1] - s.x[t - 2]) > p.v + tol)
            fail("ramp violated at t=" + std::to_string(t));
    }
    for (const auto& [a, b] : on_runs(s.y)) {
        if (b - a + 1 < p.L && b < T)
            fail("on-run [" + std::to_string(a) + "," + std::to_string(b) +
                 "] shorter than L");
        if (s.x[a - 1] > p.v_bar + tol)
            fail("x_" + std::to_string(a) + " > v_bar at run start");
        if (b < T && s.x[b - 1] > p.v_bar + tol)
            fail("x_" + std::to_string(b) + " > v_bar at run end");
    }
    // Interior off-gaps; the gap before the first run is s0 + t - 1 >= ell by
    // validate_params, trailing gaps may run into the horizon.
    auto runs = on_runs(s.y);
    for (size_t i = 1; i < runs.size(); ++i) {
        int gap = runs[i].first - runs[i - 1].second - 1;
        if (gap < p.ell)
            fail("off-gap before t=" + std::to_string(runs[i].first) + " shorter than ell");
    }
    return out;
}

double schedule_cost(const DetInstance& inst, const Schedule& s) {
    const auto& p = inst.params;
    double total = 0;
    auto runs = on_runs(s.y);
    int prev_end = 0;  // 0 marks "no earlier run"; initial offline is s0
    for (const auto& [a, b] : runs) {
        int offline = prev_end == 0 ? p.s0 + a - 1 : a - prev_end - 1;
        total += inst.startup.start_cost(offline);
        if (b <= p.T - 1) total += inst.startup.stop_cost(b - a + 1);
        prev_end = b;
    }
    for (int t = 1; t <= p.T; ++t) total += eval_cost(inst.cost, t, s.x[t - 1], s.y[t - 1]);
    return total;
}

}  // namespace uc
