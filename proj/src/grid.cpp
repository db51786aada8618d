#include "uc/grid.hpp"

#include <algorithm>
#include <cmath>

namespace uc {

namespace {

constexpr double kMergeTol = 1e-9;

std::vector<double> sorted_dedup(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v)
        if (out.empty() || x - out.back() > kMergeTol) out.push_back(x);
    return out;
}

ValueGrid finish(std::vector<double> raw, ValueGrid::Variant variant) {
    raw.push_back(0.0);
    ValueGrid g;
    g.variant = variant;
    g.values = sorted_dedup(std::move(raw));
    for (double x : g.values)
        if (x > kMergeTol) g.positive_values.push_back(x);
    return g;
}

// Kink abscissas of max over lines, slopes ascending; parallel lines keep the
// higher intercept.
std::vector<double> envelope_kinks(std::vector<CostPiece> row) {
    std::sort(row.begin(), row.end(), [](const CostPiece& a, const CostPiece& b) {
        if (a.mu != b.mu) return a.mu < b.mu;
        return a.nu > b.nu;
    });
    std::vector<CostPiece> hull;
    for (const auto& pc : row) {
        if (!hull.empty() && std::abs(pc.mu - hull.back().mu) <= kMergeTol) continue;
        while (hull.size() >= 2) {
            // pc overtakes hull.back() no later than hull.back() overtakes
            // the line before it: back() never reaches the envelope.
            const CostPiece& b = hull.back();
            const CostPiece& a = hull[hull.size() - 2];
            double x_ab = (a.nu - b.nu) / (b.mu - a.mu);
            double x_bp = (b.nu - pc.nu) / (pc.mu - b.mu);
            if (x_bp <= x_ab + kMergeTol)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pc);
    }
    std::vector<double> kinks;
    for (size_t i = 1; i < hull.size(); ++i)
        kinks.push_back((hull[i - 1].nu - hull[i].nu) / (hull[i].mu - hull[i - 1].mu));
    return kinks;
}

}  // namespace

ValueGrid make_custom_grid(std::vector<double> positive_levels) {
    for (double x : positive_levels)
        if (!(x > 0)) throw ValidationError("custom grid levels must be positive");
    return finish(std::move(positive_levels), ValueGrid::Variant::custom);
}

ValueGrid base_grid(const GeneratorParams& params, int n_max) {
    validate_params(params);
    if (n_max < 1) throw ValidationError("grid walk bound must be >= 1");

    std::vector<double> raw;
    auto walk_up = [&raw, &params, n_max](double from) {
        raw.push_back(from);
        if (params.v == 0) return;
        for (int n = 1; n <= n_max; ++n) {
            double x = from + n * params.v;
            if (x > params.c_max + kMergeTol) break;
            raw.push_back(x);
        }
    };
    walk_up(params.c_min);
    walk_up(params.v_bar);
    raw.push_back(params.c_max);
    for (int n = 1; params.v != 0 && n <= n_max; ++n) {
        double x = params.c_max - n * params.v;
        if (x < params.c_min - kMergeTol) break;
        raw.push_back(x);
    }
    return finish(std::move(raw), ValueGrid::Variant::custom);
}

std::vector<double> breakpoints(const CostModel& cost) {
    if (cost.pieces.empty()) return {};
    if (cost.from_quadratic) {
        // Tangent lines to one convex curve: kinks sit midway between
        // supports regardless of the per-period price shift.
        std::vector<double> kinks;
        for (size_t i = 1; i < cost.abscissas.size(); ++i)
            kinks.push_back((cost.abscissas[i - 1] + cost.abscissas[i]) / 2.0);
        return kinks;
    }
    std::vector<double> first = envelope_kinks(cost.pieces[0]);
    for (size_t t = 1; t < cost.pieces.size(); ++t) {
        std::vector<double> other = envelope_kinks(cost.pieces[t]);
        bool same = other.size() == first.size();
        for (size_t i = 0; same && i < first.size(); ++i)
            same = std::abs(first[i] - other[i]) <= kMergeTol;
        if (!same)
            throw ValidationError("cost breakpoints differ across periods; "
                                  "the candidate grid needs a shared breakpoint set");
    }
    return first;
}

ValueGrid candidate_set(const GeneratorParams& params, const CostModel& cost,
                        ValueGrid::Variant variant) {
    int n_max;
    switch (variant) {
        case ValueGrid::Variant::det: n_max = params.T; break;
        case ValueGrid::Variant::sto: n_max = 2 * params.T; break;
        default: throw ValidationError("candidate_set builds det or sto grids only");
    }
    ValueGrid base = base_grid(params, n_max);
    std::vector<double> raw = base.values;
    for (double a : breakpoints(cost)) {
        for (int n = -n_max; n <= n_max; ++n) {
            double x = a + n * params.v;
            if (x >= params.c_min - kMergeTol && x <= params.c_max + kMergeTol)
                raw.push_back(x);
            if (params.v == 0) break;  // all offsets coincide
        }
    }
    return finish(std::move(raw), variant);
}

}  // namespace uc
