#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

// Small reader for the LP files this project writes, used to check emitted
// models against known solution points without an external solver. Parses the
// Minimize / Subject To / Bounds / Generals / End layout with '\' comments.
namespace lptest {

struct Row {
    std::string name;
    std::vector<std::pair<double, std::string>> terms;
    char op = '=';  // '<', '>', '='
    double rhs = 0;
};

struct Bound {
    double lo = 0;
    double hi = 0;  // +inf when free_hi
    bool free_lo = false;
    bool free_hi = true;
};

struct Model {
    std::vector<std::pair<double, std::string>> objective;
    std::vector<Row> rows;
    std::map<std::string, Bound> bounds;     // explicit entries only
    std::vector<std::string> generals;
    std::set<std::string> variables;         // every name referenced anywhere
};

Model parse_lp(const std::string& text);

// Every violated row, bound, integrality requirement, or name mismatch
// between the model and the point. Empty means the point fits at tol.
std::vector<std::string> check_lp_point(const Model& model,
                                        const std::map<std::string, double>& point,
                                        double tol);

double lp_objective(const Model& model, const std::map<std::string, double>& point);

}  // namespace lptest
