#ifndef HVAC_DYNAMICS_HPP
#define HVAC_DYNAMICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hvac/errors.hpp"

namespace hvac {

/// Dense square matrix, row-major.
struct Matrix {
    int n = 0;
    std::vector<double> data;  // n*n entries

    Matrix() = default;
    explicit Matrix(int size, double fill = 0.0)
        : n(size), data(static_cast<std::size_t>(size) * size, fill) {}

    static Matrix identity(int size) {
        Matrix m(size);
        for (int i = 0; i < size; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(int size, double value) {
        Matrix m(size);
        for (int i = 0; i < size; ++i) m(i, i) = value;
        return m;
    }

    double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * n + j]; }

    std::vector<double> apply(const std::vector<double>& v) const {
        std::vector<double> out(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += (*this)(i, j) * v[static_cast<std::size_t>(j)];
            out[static_cast<std::size_t>(i)] = acc;
        }
        return out;
    }
};

constexpr int kModeCount = 3;

/// Hybrid-mode building model: per-mode thermal matrices, supply-air
/// temperatures, energy coefficients, and comfort parameters.
struct BuildingModel {
    int zones = 0;                              // n
    std::array<Matrix, kModeCount> thermal;     // A<m>: thermal coupling
    std::array<Matrix, kModeCount> flow;        // B<m>: airflow influence
    std::array<Matrix, kModeCount> reheat;      // C<m>: reheat influence
    std::array<double, kModeCount> supply_temp{};  // t_s<m>, degC
    double fan_coeff = 0.0;                     // a, cubic fan term
    double chiller_coeff = 0.0;                 // b, air conditioning term
    double reheat_coeff = 0.0;                  // c, reheat term
    std::vector<double> comfort_band;           // per-zone deadband, degC
    int steps_per_period = 0;                   // K

    void validate() const {
        if (zones <= 0) throw ModelError("building model: zone count must be positive");
        for (int m = 0; m < kModeCount; ++m) {
            if (thermal[m].n != zones || flow[m].n != zones || reheat[m].n != zones)
                throw ModelError("building model: matrix for mode " + std::to_string(m + 1) +
                                 " is not " + std::to_string(zones) + "x" + std::to_string(zones));
        }
        if (!(fan_coeff > 0.0) || !(chiller_coeff > 0.0) || !(reheat_coeff > 0.0))
            throw ModelError("building model: energy coefficients must be positive");
        if (static_cast<int>(comfort_band.size()) != zones)
            throw ModelError("building model: comfort band has wrong length");
        for (double b : comfort_band)
            if (b < 0.0) throw ModelError("building model: comfort band must be nonnegative");
        if (steps_per_period < 1)
            throw ModelError("building model: steps per period must be >= 1");
    }
};

/// One static HVAC configuration: airflow box, setpoints, mode, gains.
struct HvacConfiguration {
    std::vector<double> flow_min;      // F_min
    std::vector<double> flow_max;      // F_max
    std::vector<double> desired_temp;  // T_d, degC
    int mode = 1;                      // m in {1,2,3}
    double flow_gain = 0.0;            // K_F
    double reheat_gain = 0.0;          // K_R
    std::vector<double> reheat_max;    // R_max

    void validate(int zones) const {
        auto check_len = [&](const std::vector<double>& v, const char* name) {
            if (static_cast<int>(v.size()) != zones)
                throw ModelError(std::string("configuration: ") + name + " has wrong length");
        };
        check_len(flow_min, "flow_min");
        check_len(flow_max, "flow_max");
        check_len(desired_temp, "desired_temp");
        check_len(reheat_max, "reheat_max");
        for (int i = 0; i < zones; ++i) {
            if (flow_min[i] < 0.0 || flow_min[i] > flow_max[i])
                throw ModelError("configuration: need 0 <= flow_min <= flow_max in zone " +
                                 std::to_string(i));
            if (reheat_max[i] < 0.0)
                throw ModelError("configuration: reheat_max must be nonnegative in zone " +
                                 std::to_string(i));
        }
        if (mode < 1 || mode > kModeCount)
            throw ModelError("configuration: mode must be in {1,2,3}");
        if (flow_gain < 0.0 || reheat_gain < 0.0)
            throw ModelError("configuration: gains must be nonnegative");
    }
};

/// Exogenous inputs over one period: outside temperature and heating load.
struct DisturbanceTrace {
    std::vector<double> outside_temp;            // o_k, K entries
    std::vector<std::vector<double>> load;       // Q_k, K entries of n zones

    int length() const { return static_cast<int>(outside_temp.size()); }

    void validate(int zones, int steps) const {
        if (static_cast<int>(outside_temp.size()) != steps ||
            static_cast<int>(load.size()) != steps)
            throw ModelError("disturbance: traces must have exactly K entries");
        for (const auto& q : load)
            if (static_cast<int>(q.size()) != zones)
                throw ModelError("disturbance: load vector has wrong zone count");
    }
};

struct SimulationOutput {
    double satisfaction = 0.0;                    // S
    double energy = 0.0;                          // E, energy units per period
    std::vector<std::vector<double>> temperatures;  // post-step states, K entries
};

/// Saturated proportional law: F = clamp(F_min + K_F (T - T_d), F_min, F_max),
/// R = clamp(K_R (T_d - T), 0, R_max).
inline std::pair<std::vector<double>, std::vector<double>>
control_law(const std::vector<double>& temps, const HvacConfiguration& cfg) {
    const auto n = temps.size();
    if (cfg.flow_min.size() != n || cfg.flow_max.size() != n ||
        cfg.desired_temp.size() != n || cfg.reheat_max.size() != n)
        throw ModelError("control law: temperature vector does not match configuration size");
    std::vector<double> flows(n), reheats(n);
    for (std::size_t i = 0; i < n; ++i) {
        double err = temps[i] - cfg.desired_temp[i];
        flows[i] = std::clamp(cfg.flow_min[i] + cfg.flow_gain * err,
                              cfg.flow_min[i], cfg.flow_max[i]);
        reheats[i] = std::clamp(cfg.reheat_gain * -err, 0.0, cfg.reheat_max[i]);
    }
    return {std::move(flows), std::move(reheats)};
}

/// One thermal update T' = A<m> T + B<m> F + C<m> R + Q with given actuation.
inline std::vector<double> thermal_update(const std::vector<double>& temps,
                                          const std::vector<double>& flows,
                                          const std::vector<double>& reheats,
                                          const BuildingModel& model, int mode,
                                          const std::vector<double>& load) {
    if (static_cast<int>(temps.size()) != model.zones ||
        static_cast<int>(load.size()) != model.zones)
        throw ModelError("thermal update: dimension mismatch");
    const int m = mode - 1;
    auto next = model.thermal[m].apply(temps);
    auto bf = model.flow[m].apply(flows);
    auto cr = model.reheat[m].apply(reheats);
    for (int i = 0; i < model.zones; ++i)
        next[i] += bf[i] + cr[i] + load[static_cast<std::size_t>(i)];
    return next;
}

/// One step under the closed-loop control law.
inline std::vector<double> step(const std::vector<double>& temps,
                                const HvacConfiguration& cfg,
                                const BuildingModel& model,
                                const std::vector<double>& load) {
    auto [flows, reheats] = control_law(temps, cfg);
    return thermal_update(temps, flows, reheats, model, cfg.mode, load);
}

/// Per-step energy E_k = a (sum F)^3 + b (t_s<m> - o_k)(sum F) + c (sum R).
inline double energy_step(const std::vector<double>& flows,
                          const std::vector<double>& reheats, int mode,
                          double outside_temp, const BuildingModel& model) {
    double total_flow = 0.0, total_reheat = 0.0;
    for (double f : flows) total_flow += f;
    for (double r : reheats) total_reheat += r;
    double ts = model.supply_temp[mode - 1];
    return model.fan_coeff * total_flow * total_flow * total_flow +
           model.chiller_coeff * (ts - outside_temp) * total_flow +
           model.reheat_coeff * total_reheat;
}

/// S = 1 - (1/(nK)) sum_k sum_i max(|T_ki - T_d_i| - B_i, 0).
inline double satisfaction(const std::vector<std::vector<double>>& trace,
                           const std::vector<double>& desired_temp,
                           const std::vector<double>& comfort_band) {
    if (trace.empty()) throw ArgumentError("satisfaction: empty temperature trace");
    const auto n = desired_temp.size();
    double penalty = 0.0;
    for (const auto& temps : trace) {
        if (temps.size() != n) throw ModelError("satisfaction: trace entry has wrong zone count");
        for (std::size_t i = 0; i < n; ++i)
            penalty += std::max(std::abs(temps[i] - desired_temp[i]) - comfort_band[i], 0.0);
    }
    return 1.0 - penalty / (static_cast<double>(n) * static_cast<double>(trace.size()));
}

/// Closed-loop simulation over one period; the mode is held fixed throughout.
inline SimulationOutput simulate_period(const BuildingModel& model,
                                        const HvacConfiguration& cfg,
                                        const DisturbanceTrace& disturbance,
                                        const std::vector<double>& initial_temp) {
    model.validate();
    cfg.validate(model.zones);
    disturbance.validate(model.zones, model.steps_per_period);
    if (static_cast<int>(initial_temp.size()) != model.zones)
        throw ModelError("simulate_period: initial temperature has wrong length");

    SimulationOutput out;
    out.temperatures.reserve(static_cast<std::size_t>(model.steps_per_period));
    std::vector<double> temps = initial_temp;
    for (int k = 0; k < model.steps_per_period; ++k) {
        auto [flows, reheats] = control_law(temps, cfg);
        out.energy += energy_step(flows, reheats, cfg.mode,
                                  disturbance.outside_temp[k], model);
        temps = thermal_update(temps, flows, reheats, model, cfg.mode,
                               disturbance.load[k]);
        for (double t : temps)
            if (!std::isfinite(t))
                throw SimulationDivergedError(
                    k, "simulation diverged at step " + std::to_string(k));
        out.temperatures.push_back(temps);
    }
    out.satisfaction = satisfaction(out.temperatures, cfg.desired_temp, model.comfort_band);
    return out;
}

}  // namespace hvac

#endif
