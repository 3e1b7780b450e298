#ifndef HVAC_AGENTS_HPP
#define HVAC_AGENTS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hvac/errors.hpp"
#include "hvac/param_opt.hpp"
#include "hvac/static_model.hpp"

namespace hvac {

/// Set-valued best response in operating-point coordinates.
struct OperatingSet {
    std::vector<OperatingPoint> points;
    double value = 0.0;
    double s_lo = 0.0, s_hi = 0.0;
    double e_lo = 0.0, e_hi = 0.0;

    /// Tie-break used wherever a single point is needed: lexicographic
    /// maximum on (S, E).
    OperatingPoint representative() const {
        OperatingPoint best = points.front();
        for (const auto& p : points)
            if (p.satisfaction > best.satisfaction ||
                (p.satisfaction == best.satisfaction && p.energy > best.energy))
                best = p;
        return best;
    }
};

namespace detail {

/// Feasible cell centers of a static model as a param-opt feasible set with
/// x = S, y = E.
inline std::vector<std::array<double, 2>> feasible_cells(const StaticModel& model) {
    std::vector<std::array<double, 2>> cells;
    const Grid2D& g = model.grid;
    for (int i = 0; i < g.n_s; ++i)
        for (int j = 0; j < g.n_e; ++j)
            if (model.feasible[static_cast<std::size_t>(g.index(i, j))])
                cells.push_back({g.s_center(i), g.e_center(j)});
    if (cells.empty()) throw ArgumentError("static model has no feasible cells");
    return cells;
}

/// Stored work value of the cell containing (s, e).
inline double cell_work(const StaticModel& model, double s, double e) {
    int i, j;
    if (!model.grid.locate({s, e}, i, j))
        throw DomainError("work lookup outside the grid");
    return model.work[static_cast<std::size_t>(model.grid.index(i, j))];
}

inline OperatingSet to_operating_set(const MaximizerSet& set, bool x_is_satisfaction) {
    OperatingSet out;
    out.value = set.value;
    out.s_lo = out.e_lo = std::numeric_limits<double>::infinity();
    out.s_hi = out.e_hi = -std::numeric_limits<double>::infinity();
    for (const auto& p : set.points) {
        OperatingPoint op = x_is_satisfaction ? OperatingPoint{p[0], p[1]}
                                              : OperatingPoint{p[1], p[0]};
        out.points.push_back(op);
        out.s_lo = std::min(out.s_lo, op.satisfaction);
        out.s_hi = std::max(out.s_hi, op.satisfaction);
        out.e_lo = std::min(out.e_lo, op.energy);
        out.e_hi = std::max(out.e_hi, op.energy);
    }
    return out;
}

/// Default tie tolerance: 1e-9 times the objective range over the feasible set.
inline double auto_tie_tol(const ObjectiveSpec& spec, double lambda) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& p : spec.feasible) {
        double v = spec.objective(lambda, p[0], p[1]);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return 1e-9 * (hi - lo);
}

inline MaximizerSet solve_auto(const ObjectiveSpec& spec, double lambda, double tie_tol) {
    if (tie_tol < 0.0) tie_tol = auto_tie_tol(spec, lambda);
    return solve(spec, lambda, tie_tol);
}

}  // namespace detail

/// Manager utility without incentives: maximize S - lambda * W(S, E).
/// Type1 family with x = S, f(S) = S, g = -W. Pass tie_tol < 0 for the
/// default 1e-9 * objective range.
inline OperatingSet manager_best_response(const StaticModel& model, double lambda,
                                          double tie_tol = -1.0) {
    if (lambda < 0.0) throw ArgumentError("manager_best_response: lambda must be nonnegative");
    ObjectiveSpec spec;
    spec.feasible = detail::feasible_cells(model);
    spec.family = Family::Type1;
    spec.f = [](double s) { return s; };
    spec.g = [&model](double s, double e) { return -detail::cell_work(model, s, e); };
    return detail::to_operating_set(detail::solve_auto(spec, lambda, tie_tol), true);
}

/// The four branches of the owner's closed-form maximizer of S - mu * E.
enum class OwnerCase {
    MaxSatisfactionSegment,  // mu = 0: {(S_max, E) : E_opt <= E <= E_3}
    OptimalPoint,            // 0 < mu < 1/m: (S_max, E_opt)
    LowerBoundarySegment,    // mu = 1/m: {(S, mS + k) : S_min <= S <= S_max}
    MinimumPoint,            // mu > 1/m: (S_min, E_min)
};

struct OwnerOptimum {
    OwnerCase kind = OwnerCase::OptimalPoint;
    std::vector<OperatingPoint> endpoints;  // point, or the segment's endpoints
    double slope = 0.0;      // m = (E_opt - E_min)/(S_max - S_min)
    double intercept = 0.0;  // k = E_min - m S_min
};

inline OwnerOptimum owner_optimum_closed_form(const KeyPoints& kp, double mu) {
    if (mu < 0.0) throw ArgumentError("owner optimum: mu must be nonnegative");
    if (!(kp.s_max > kp.s_min))
        throw ModelShapeError("owner optimum: degenerate model, S_max must exceed S_min");
    OwnerOptimum out;
    out.slope = (kp.e_opt - kp.e_min) / (kp.s_max - kp.s_min);
    out.intercept = kp.e_min - out.slope * kp.s_min;
    double mu_crit = 1.0 / out.slope;
    if (mu == 0.0) {
        out.kind = OwnerCase::MaxSatisfactionSegment;
        out.endpoints = {{kp.s_max, kp.e_opt}, {kp.s_max, kp.e_3}};
    } else if (mu < mu_crit) {
        out.kind = OwnerCase::OptimalPoint;
        out.endpoints = {{kp.s_max, kp.e_opt}};
    } else if (mu == mu_crit) {
        out.kind = OwnerCase::LowerBoundarySegment;
        out.endpoints = {{kp.s_min, kp.e_min}, {kp.s_max, kp.e_opt}};
    } else {
        out.kind = OwnerCase::MinimumPoint;
        out.endpoints = {{kp.s_min, kp.e_min}};
    }
    return out;
}

/// Enumeration oracle for the closed form: maximize S - mu * E over feasible
/// cells.
inline OperatingSet owner_optimum_bruteforce(const StaticModel& model, double mu,
                                             double tie_tol = -1.0) {
    ObjectiveSpec spec;
    spec.feasible = detail::feasible_cells(model);
    spec.family = Family::Type1;
    spec.f = [](double s) { return s; };
    spec.g = [](double, double e) { return -e; };
    return detail::to_operating_set(detail::solve_auto(spec, mu, tie_tol), true);
}

/// Outcome of a two-period incentive scheme. monetary_savings is filled by
/// savings_table (it needs an energy price); zero otherwise.
struct TwoPeriodOutcome {
    OperatingSet period1, period2;
    double payout = 0.0;              // USD/day, from representative points
    double energy_delta = 0.0;        // E*_2 - E*_1
    double satisfaction_delta = 0.0;  // S*_2 - S*_1
    double monetary_savings = 0.0;
};

namespace detail {

inline void fill_deltas(TwoPeriodOutcome& out) {
    OperatingPoint p1 = out.period1.representative();
    OperatingPoint p2 = out.period2.representative();
    out.energy_delta = p2.energy - p1.energy;
    out.satisfaction_delta = p2.satisfaction - p1.satisfaction;
}

}  // namespace detail

/// Baselining scheme gamma * (E_1 - E_2): the objective separates, so period
/// 1 maximizes gamma*E + S - lambda*W (Type2 with x = E) and period 2
/// maximizes S - gamma*E - lambda*W.
inline TwoPeriodOutcome baselining_best_response(const StaticModel& model, double lambda,
                                                double gamma, double tie_tol = -1.0) {
    if (lambda < 0.0 || gamma < 0.0)
        throw ArgumentError("baselining: lambda and gamma must be nonnegative");
    auto cells = detail::feasible_cells(model);

    ObjectiveSpec p1;  // x = E, y = S
    p1.family = Family::Type2;
    p1.feasible.reserve(cells.size());
    for (const auto& c : cells) p1.feasible.push_back({c[1], c[0]});
    p1.f = [](double e) { return e; };
    p1.g = [&model, lambda](double e, double s) {
        return s - lambda * detail::cell_work(model, s, e);
    };

    ObjectiveSpec p2 = p1;
    p2.f = [](double e) { return -e; };

    TwoPeriodOutcome out;
    out.period1 = detail::to_operating_set(detail::solve_auto(p1, gamma, tie_tol), false);
    out.period2 = detail::to_operating_set(detail::solve_auto(p2, gamma, tie_tol), false);
    detail::fill_deltas(out);
    out.payout = gamma * (out.period1.representative().energy -
                          out.period2.representative().energy);
    return out;
}

/// kappa = min(S_min / E_max, (S_max - S_min) / E_max); requires S_min > 0
/// and verifies 0 < kappa < 1/m.
inline double kappa(const KeyPoints& kp) {
    if (!(kp.e_max > 0.0))
        throw CalibrationError("kappa: E_max must be positive");
    if (!(kp.s_min > 0.0))
        throw CalibrationError("kappa: S_min must be positive for a nonnegative bonus");
    double k = std::min(kp.s_min / kp.e_max, (kp.s_max - kp.s_min) / kp.e_max);
    double slope = (kp.e_opt - kp.e_min) / (kp.s_max - kp.s_min);
    if (!(k > 0.0) || (slope > 0.0 && !(k < 1.0 / slope)))
        throw CalibrationError("kappa: computed value violates 0 < kappa < 1/m");
    return k;
}

/// Performance bonus gamma * (S_2 - kappa E_2): period 1 is the plain best
/// response; period 2 maximizes (1 + gamma) S - gamma kappa E - lambda W.
inline TwoPeriodOutcome bonus_best_response(const StaticModel& model, double lambda,
                                            double gamma, double kappa_value,
                                            double tie_tol = -1.0) {
    if (lambda < 0.0 || gamma < 0.0)
        throw ArgumentError("bonus: lambda and gamma must be nonnegative");
    if (!(kappa_value > 0.0)) throw ArgumentError("bonus: kappa must be positive");

    TwoPeriodOutcome out;
    out.period1 = manager_best_response(model, lambda, tie_tol);

    ObjectiveSpec p2;  // x = S, y = E
    p2.family = Family::Type1;
    p2.feasible = detail::feasible_cells(model);
    p2.f = [](double) { return 0.0; };  // entire objective folded into g
    p2.g = [&model, lambda, gamma, kappa_value](double s, double e) {
        return (1.0 + gamma) * s - gamma * kappa_value * e -
               lambda * detail::cell_work(model, s, e);
    };
    out.period2 = detail::to_operating_set(detail::solve_auto(p2, 1.0, tie_tol), true);
    detail::fill_deltas(out);
    OperatingPoint p = out.period2.representative();
    out.payout = gamma * (p.satisfaction - kappa_value * p.energy);
    return out;
}

/// lambda whose best response comes closest (Euclidean, span-normalized
/// coordinates) to the observed operating point; ties go to the smallest
/// lambda.
inline double estimate_lambda(const StaticModel& model, const OperatingPoint& actual,
                              const std::vector<double>& lambda_grid,
                              double tie_tol = -1.0) {
    if (lambda_grid.empty()) throw ArgumentError("estimate_lambda: empty lambda grid");
    double s_span = model.grid.s_hi - model.grid.s_lo;
    double e_span = model.grid.e_hi - model.grid.e_lo;
    double best_dist = std::numeric_limits<double>::infinity();
    double best_lambda = lambda_grid.front();
    for (double lambda : lambda_grid) {
        auto set = manager_best_response(model, lambda, tie_tol);
        double dist = std::numeric_limits<double>::infinity();
        for (const auto& p : set.points)
            dist = std::min(dist,
                            std::hypot((p.satisfaction - actual.satisfaction) / s_span,
                                       (p.energy - actual.energy) / e_span));
        if (dist < best_dist) {
            best_dist = dist;
            best_lambda = lambda;
        }
    }
    return best_lambda;
}

/// Payment elasticity mu = (S*_1 - lambda E*_1) / R_1, as printed in the
/// source analysis.
inline double estimate_elasticity(double s1, double e1, double lambda, double salary) {
    if (!(salary > 0.0)) throw CalibrationError("elasticity: salary must be positive");
    return (s1 - lambda * e1) / salary;
}

/// Variant using the work value instead of the energy value; see README for
/// why both readings exist.
inline double estimate_elasticity_from_work(double s1, double w1, double lambda,
                                            double salary) {
    if (!(salary > 0.0)) throw CalibrationError("elasticity: salary must be positive");
    return (s1 - lambda * w1) / salary;
}

/// gamma = mu_elast * P / (S_max - kappa E_opt).
inline double gamma_for_payout(double max_payout, double mu_elast, const KeyPoints& kp,
                               double kappa_value) {
    double denom = kp.s_max - kappa_value * kp.e_opt;
    if (!(denom > 0.0))
        throw CalibrationError("gamma_for_payout: S_max - kappa*E_opt must be positive");
    return mu_elast * max_payout / denom;
}

/// Doubling search for the lambda beyond which the manager best response
/// stays within one grid cell of (S_omega, E_omega).
inline double detect_lambda_threshold(const StaticModel& model, double tie_tol = -1.0,
                                      double lambda_max = 1e9) {
    const KeyPoints& kp = model.key_points;
    double cs = model.grid.ds(), ce = model.grid.de();
    for (double lambda = 1e-3; lambda <= lambda_max; lambda *= 2.0) {
        auto set = manager_best_response(model, lambda, tie_tol);
        bool near = true;
        for (const auto& p : set.points)
            if (std::abs(p.satisfaction - kp.omega.satisfaction) > cs + 1e-12 ||
                std::abs(p.energy - kp.omega.energy) > ce + 1e-12)
                near = false;
        if (near) return lambda;
    }
    throw CalibrationError("detect_lambda_threshold: no convergence below lambda_max");
}

/// Doubling search for the gamma beyond which the bonus period-2 response
/// stays within one grid cell of (S_max, E_opt).
inline double detect_gamma_threshold(const StaticModel& model, double lambda,
                                     double kappa_value, double tie_tol = -1.0,
                                     double gamma_max = 1e9) {
    const KeyPoints& kp = model.key_points;
    double cs = model.grid.ds(), ce = model.grid.de();
    for (double gamma = 1e-3; gamma <= gamma_max; gamma *= 2.0) {
        auto out = bonus_best_response(model, lambda, gamma, kappa_value, tie_tol);
        bool near = true;
        for (const auto& p : out.period2.points)
            if (std::abs(p.satisfaction - kp.s_max) > cs + 1e-12 ||
                std::abs(p.energy - kp.e_opt) > ce + 1e-12)
                near = false;
        if (near) return gamma;
    }
    throw CalibrationError("detect_gamma_threshold: no convergence below gamma_max");
}

/// 100 values spanning [0, detected threshold]: zero followed by 99
/// log-spaced values. Used to calibrate lambda from an observed point.
inline std::vector<double> calibration_lambda_grid(const StaticModel& model,
                                                   double tie_tol = -1.0) {
    double top = detect_lambda_threshold(model, tie_tol);
    std::vector<double> grid{0.0};
    const int count = 99;
    double lo = std::log(1e-4 * top), hi = std::log(top);
    for (int i = 0; i < count; ++i)
        grid.push_back(std::exp(lo + (hi - lo) * i / (count - 1)));
    return grid;
}

struct SavingsRow {
    double max_payout = 0.0;          // P
    double energy_delta = 0.0;        // E*_2 - E*_1
    double satisfaction_delta = 0.0;  // S*_2 - S*_1
    double payout = 0.0;              // realized money payout
    std::vector<double> savings;      // one entry per energy price
};

/// Savings per day for each maximum payout P: run the bonus scheme with
/// gamma sized for P, then savings = price * (-dE) - realized payout where
/// the realized payout is P * (S_2 - kappa E_2) / (S_max - kappa E_opt).
inline std::vector<SavingsRow> savings_table(const StaticModel& model, double lambda,
                                             const std::vector<double>& payouts,
                                             const std::vector<double>& prices,
                                             double salary, double tie_tol = -1.0) {
    const KeyPoints& kp = model.key_points;
    double kap = kappa(kp);
    OperatingPoint p1 = manager_best_response(model, lambda, tie_tol).representative();
    double mu_elast = estimate_elasticity(p1.satisfaction, p1.energy, lambda, salary);
    if (!(mu_elast > 0.0))
        throw CalibrationError("savings_table: nonpositive payment elasticity");

    std::vector<SavingsRow> rows;
    for (double payout_cap : payouts) {
        double gamma = gamma_for_payout(payout_cap, mu_elast, kp, kap);
        auto outcome = bonus_best_response(model, lambda, gamma, kap, tie_tol);
        OperatingPoint p2 = outcome.period2.representative();
        SavingsRow row;
        row.max_payout = payout_cap;
        row.energy_delta = outcome.energy_delta;
        row.satisfaction_delta = outcome.satisfaction_delta;
        row.payout = payout_cap * (p2.satisfaction - kap * p2.energy) /
                     (kp.s_max - kap * kp.e_opt);
        for (double price : prices)
            row.savings.push_back(price * -row.energy_delta - row.payout);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace hvac
#endif
