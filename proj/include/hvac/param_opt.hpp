#ifndef HVAC_PARAM_OPT_HPP
#define HVAC_PARAM_OPT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "hvac/errors.hpp"

namespace hvac {

/// Two parametric objective families over a finite feasible set:
///   Type1:  f(x) + lambda * g(x, y)
///   Type2:  lambda * f(x) + g(x, y)
enum class Family { Type1, Type2 };

struct ObjectiveSpec {
    std::vector<std::array<double, 2>> feasible;   // the set S of (x, y) pairs
    std::function<double(double)> f;
    std::function<double(double, double)> g;
    Family family = Family::Type1;

    double objective(double lambda, double x, double y) const {
        return family == Family::Type1 ? f(x) + lambda * g(x, y)
                                       : lambda * f(x) + g(x, y);
    }
};

/// Set-valued argmax with its x-projections.
struct MaximizerSet {
    std::vector<std::array<double, 2>> points;  // all ties
    double value = 0.0;                         // the maximum
    double x_lo = 0.0;                          // min x over points
    double x_hi = 0.0;                          // max x over points
};

/// Exhaustive enumeration. Returns every feasible point whose objective is
/// within tie_tol of the maximum.
inline MaximizerSet solve(const ObjectiveSpec& spec, double lambda, double tie_tol) {
    if (spec.feasible.empty()) throw ArgumentError("solve: empty feasible set");
    if (lambda < 0.0) throw ArgumentError("solve: lambda must be nonnegative");
    if (tie_tol < 0.0) throw ArgumentError("solve: tie tolerance must be nonnegative");

    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> values;
    values.reserve(spec.feasible.size());
    for (const auto& p : spec.feasible) {
        double v = spec.objective(lambda, p[0], p[1]);
        if (!std::isfinite(v)) throw ArgumentError("solve: non-finite objective value");
        values.push_back(v);
        best = std::max(best, v);
    }

    MaximizerSet out;
    out.value = best;
    out.x_lo = std::numeric_limits<double>::infinity();
    out.x_hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= best - tie_tol) {
            out.points.push_back(spec.feasible[i]);
            out.x_lo = std::min(out.x_lo, spec.feasible[i][0]);
            out.x_hi = std::max(out.x_hi, spec.feasible[i][0]);
        }
    }
    return out;
}

struct SweepRow {
    double lambda = 0.0;
    double x_lo = 0.0;
    double x_hi = 0.0;
};

/// Per-lambda projections of the maximizer set; lambda_list must be
/// nonnegative and strictly increasing.
inline std::vector<SweepRow> sweep(const ObjectiveSpec& spec,
                                   const std::vector<double>& lambda_list,
                                   double tie_tol) {
    for (std::size_t i = 0; i < lambda_list.size(); ++i) {
        if (lambda_list[i] < 0.0)
            throw ArgumentError("sweep: lambda values must be nonnegative");
        if (i > 0 && !(lambda_list[i] > lambda_list[i - 1]))
            throw ArgumentError("sweep: lambda values must be strictly increasing");
    }
    std::vector<SweepRow> rows;
    rows.reserve(lambda_list.size());
    for (double lambda : lambda_list) {
        auto set = solve(spec, lambda, tie_tol);
        rows.push_back({lambda, set.x_lo, set.x_hi});
    }
    return rows;
}

enum class Monotonicity { Increasing, Decreasing };

/// Certifies that f is strictly monotone in the claimed direction over every
/// distinct x value of the feasible set. Exhaustive pairwise check.
inline void certify_monotone(const ObjectiveSpec& spec, Monotonicity direction) {
    std::vector<double> xs;
    xs.reserve(spec.feasible.size());
    for (const auto& p : spec.feasible) xs.push_back(p[0]);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        double lo = spec.f(xs[i]), hi = spec.f(xs[i + 1]);
        bool ok = direction == Monotonicity::Increasing ? hi > lo : hi < lo;
        if (!ok)
            throw ArgumentError("check_theorem: f is not strictly " +
                                std::string(direction == Monotonicity::Increasing
                                                ? "increasing"
                                                : "decreasing") +
                                " on the feasible x-grid");
    }
}

struct TheoremVerdict {
    bool pass = true;
    double lambda_a = 0.0;  // violating pair, when pass == false
    double lambda_b = 0.0;
    std::string detail;
};

/// Checks one of the two projection orderings over all consecutive lambda
/// pairs. nonincreasing: x_lo(l1) >= x_hi(l2); otherwise x_hi(l1) <= x_lo(l2).
inline TheoremVerdict check_ordering(const ObjectiveSpec& spec,
                                     const std::vector<double>& lambda_list,
                                     bool nonincreasing, double tie_tol = 0.0) {
    auto rows = sweep(spec, lambda_list, tie_tol);
    TheoremVerdict verdict;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        bool ok = nonincreasing ? rows[i].x_lo >= rows[i + 1].x_hi
                                : rows[i].x_hi <= rows[i + 1].x_lo;
        if (!ok) {
            verdict.pass = false;
            verdict.lambda_a = rows[i].lambda;
            verdict.lambda_b = rows[i + 1].lambda;
            verdict.detail = "ordering violated between lambda=" +
                             std::to_string(rows[i].lambda) + " (x_lo=" +
                             std::to_string(rows[i].x_lo) + ", x_hi=" +
                             std::to_string(rows[i].x_hi) + ") and lambda=" +
                             std::to_string(rows[i + 1].lambda) + " (x_lo=" +
                             std::to_string(rows[i + 1].x_lo) + ", x_hi=" +
                             std::to_string(rows[i + 1].x_hi) + ")";
            return verdict;
        }
    }
    return verdict;
}

/// Verifies the maximizer-projection ordering implied by (family, direction)
/// across all consecutive lambda pairs:
///   Type1 increasing: x_lo(l1) >= x_hi(l2)   (projections nonincreasing)
///   Type1 decreasing: x_hi(l1) <= x_lo(l2)   (nondecreasing)
///   Type2 increasing: x_hi(l1) <= x_lo(l2)   (nondecreasing)
///   Type2 decreasing: x_lo(l1) >= x_hi(l2)   (nonincreasing)
inline TheoremVerdict check_theorem(const ObjectiveSpec& spec,
                                    const std::vector<double>& lambda_list,
                                    Monotonicity direction, double tie_tol = 0.0) {
    certify_monotone(spec, direction);
    bool nonincreasing = (spec.family == Family::Type1) ==
                         (direction == Monotonicity::Increasing);
    return check_ordering(spec, lambda_list, nonincreasing, tie_tol);
}

}  // namespace hvac

#endif
