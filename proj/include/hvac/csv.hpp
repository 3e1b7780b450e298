#ifndef HVAC_CSV_HPP
#define HVAC_CSV_HPP

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "hvac/agents.hpp"
#include "hvac/param_opt.hpp"
#include "hvac/static_model.hpp"

namespace hvac {

namespace csv_detail {

inline std::string num(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

}  // namespace csv_detail

/// Cloud as `S,E` rows.
inline std::string cloud_csv(const std::vector<OperatingPoint>& points) {
    std::string out = "S,E\n";
    for (const auto& p : points)
        out += csv_detail::num(p.satisfaction) + "," + csv_detail::num(p.energy) + "\n";
    return out;
}

/// Sweep projections as `lambda,x_lo,x_hi` rows.
inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "lambda,x_lo,x_hi\n";
    for (const auto& r : rows)
        out += csv_detail::num(r.lambda) + "," + csv_detail::num(r.x_lo) + "," +
               csv_detail::num(r.x_hi) + "\n";
    return out;
}

/// Single-period trace: per-parameter S and E spans of the best response.
inline std::string single_period_trace_csv(
    const std::vector<std::pair<double, OperatingSet>>& rows) {
    std::string out = "lambda,S_lo,S_hi,E_lo,E_hi\n";
    for (const auto& [param, set] : rows)
        out += csv_detail::num(param) + "," + csv_detail::num(set.s_lo) + "," +
               csv_detail::num(set.s_hi) + "," + csv_detail::num(set.e_lo) + "," +
               csv_detail::num(set.e_hi) + "\n";
    return out;
}

/// Two-period trace: spans for both periods per incentive level.
inline std::string two_period_trace_csv(
    const std::vector<std::pair<double, TwoPeriodOutcome>>& rows) {
    std::string out = "gamma,S1_lo,S1_hi,E1_lo,E1_hi,S2_lo,S2_hi,E2_lo,E2_hi\n";
    for (const auto& [gamma, o] : rows)
        out += csv_detail::num(gamma) + "," + csv_detail::num(o.period1.s_lo) + "," +
               csv_detail::num(o.period1.s_hi) + "," + csv_detail::num(o.period1.e_lo) +
               "," + csv_detail::num(o.period1.e_hi) + "," +
               csv_detail::num(o.period2.s_lo) + "," + csv_detail::num(o.period2.s_hi) +
               "," + csv_detail::num(o.period2.e_lo) + "," +
               csv_detail::num(o.period2.e_hi) + "\n";
    return out;
}

/// Savings table: `P,delta_E,delta_S,savings_<price>...`.
inline std::string savings_csv(const std::vector<SavingsRow>& rows,
                               const std::vector<double>& prices) {
    std::string out = "P,delta_E,delta_S";
    for (double price : prices) out += ",savings_" + csv_detail::num(price);
    out += "\n";
    for (const auto& r : rows) {
        out += csv_detail::num(r.max_payout) + "," + csv_detail::num(r.energy_delta) +
               "," + csv_detail::num(r.satisfaction_delta);
        for (double s : r.savings) out += "," + csv_detail::num(s);
        out += "\n";
    }
    return out;
}

}  // namespace hvac

#endif
