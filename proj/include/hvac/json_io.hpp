#ifndef HVAC_JSON_IO_HPP
#define HVAC_JSON_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hvac/dynamics.hpp"
#include "hvac/errors.hpp"
#include "hvac/static_model.hpp"

namespace hvac {

inline constexpr const char* kSchemaVersion = "1";

namespace io_detail {

inline void require_version(const nlohmann::json& j, const std::string& what) {
    if (!j.contains("schema_version"))
        throw SchemaError(what + ": missing schema_version");
    if (j.at("schema_version").get<std::string>() != kSchemaVersion)
        throw SchemaError(what + ": unsupported schema_version " +
                          j.at("schema_version").dump());
}

template <typename T>
T field(const nlohmann::json& j, const std::string& name, const std::string& what) {
    if (!j.contains(name)) throw SchemaError(what + ": missing field '" + name + "'");
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw SchemaError(what + ": field '" + name + "' has the wrong type");
    }
}

inline nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.n; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline Matrix matrix_from_json(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array() || j.empty())
        throw SchemaError(what + ": matrix must be a nonempty nested array");
    Matrix m(static_cast<int>(j.size()));
    for (int i = 0; i < m.n; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != m.n)
            throw SchemaError(what + ": matrix rows must all have length " +
                              std::to_string(m.n));
        for (int k = 0; k < m.n; ++k) m(i, k) = j[i][k].get<double>();
    }
    return m;
}

}  // namespace io_detail

inline nlohmann::json to_json(const BuildingModel& m) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["zones"] = m.zones;
    for (int mode = 0; mode < kModeCount; ++mode) {
        std::string suffix = std::to_string(mode + 1);
        j["thermal_" + suffix] = io_detail::matrix_to_json(m.thermal[mode]);
        j["flow_" + suffix] = io_detail::matrix_to_json(m.flow[mode]);
        j["reheat_" + suffix] = io_detail::matrix_to_json(m.reheat[mode]);
    }
    j["supply_temp"] = m.supply_temp;
    j["fan_coeff"] = m.fan_coeff;
    j["chiller_coeff"] = m.chiller_coeff;
    j["reheat_coeff"] = m.reheat_coeff;
    j["comfort_band"] = m.comfort_band;
    j["steps_per_period"] = m.steps_per_period;
    return j;
}

inline BuildingModel building_model_from_json(const nlohmann::json& j) {
    const std::string what = "building model";
    io_detail::require_version(j, what);
    BuildingModel m;
    m.zones = io_detail::field<int>(j, "zones", what);
    for (int mode = 0; mode < kModeCount; ++mode) {
        std::string suffix = std::to_string(mode + 1);
        auto grab = [&](const std::string& name) {
            if (!j.contains(name)) throw SchemaError(what + ": missing field '" + name + "'");
            return io_detail::matrix_from_json(j.at(name), what + " field '" + name + "'");
        };
        m.thermal[mode] = grab("thermal_" + suffix);
        m.flow[mode] = grab("flow_" + suffix);
        m.reheat[mode] = grab("reheat_" + suffix);
    }
    auto supply = io_detail::field<std::vector<double>>(j, "supply_temp", what);
    if (supply.size() != kModeCount)
        throw SchemaError(what + ": supply_temp needs one entry per mode");
    std::copy(supply.begin(), supply.end(), m.supply_temp.begin());
    m.fan_coeff = io_detail::field<double>(j, "fan_coeff", what);
    m.chiller_coeff = io_detail::field<double>(j, "chiller_coeff", what);
    m.reheat_coeff = io_detail::field<double>(j, "reheat_coeff", what);
    m.comfort_band = io_detail::field<std::vector<double>>(j, "comfort_band", what);
    m.steps_per_period = io_detail::field<int>(j, "steps_per_period", what);
    try {
        m.validate();
    } catch (const ModelError& e) {
        throw SchemaError(std::string(e.what()));
    }
    return m;
}

inline nlohmann::json to_json(const HvacConfiguration& c) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["flow_min"] = c.flow_min;
    j["flow_max"] = c.flow_max;
    j["desired_temp"] = c.desired_temp;
    j["mode"] = c.mode;
    j["flow_gain"] = c.flow_gain;
    j["reheat_gain"] = c.reheat_gain;
    j["reheat_max"] = c.reheat_max;
    return j;
}

inline HvacConfiguration configuration_from_json(const nlohmann::json& j) {
    const std::string what = "configuration";
    io_detail::require_version(j, what);
    HvacConfiguration c;
    c.flow_min = io_detail::field<std::vector<double>>(j, "flow_min", what);
    c.flow_max = io_detail::field<std::vector<double>>(j, "flow_max", what);
    c.desired_temp = io_detail::field<std::vector<double>>(j, "desired_temp", what);
    c.mode = io_detail::field<int>(j, "mode", what);
    c.flow_gain = io_detail::field<double>(j, "flow_gain", what);
    c.reheat_gain = io_detail::field<double>(j, "reheat_gain", what);
    c.reheat_max = io_detail::field<std::vector<double>>(j, "reheat_max", what);
    return c;
}

inline nlohmann::json to_json(const DisturbanceTrace& d) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["outside_temp"] = d.outside_temp;
    j["load"] = d.load;
    return j;
}

inline DisturbanceTrace disturbance_from_json(const nlohmann::json& j) {
    const std::string what = "disturbance";
    io_detail::require_version(j, what);
    DisturbanceTrace d;
    d.outside_temp = io_detail::field<std::vector<double>>(j, "outside_temp", what);
    d.load = io_detail::field<std::vector<std::vector<double>>>(j, "load", what);
    if (d.load.size() != d.outside_temp.size())
        throw SchemaError(what + ": outside_temp and load lengths differ");
    return d;
}

inline nlohmann::json to_json(const SampleSpec& s) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    auto bounds = [](const Bounds& b) { return nlohmann::json{{"lo", b.lo}, {"hi", b.hi}}; };
    j["flow_min"] = bounds(s.flow_min);
    j["flow_max"] = bounds(s.flow_max);
    j["mode"] = bounds(s.mode);
    j["outside_temp"] = bounds(s.outside_temp);
    j["load"] = bounds(s.load);
    j["count"] = s.count;
    j["seed"] = s.seed;
    j["base"] = to_json(s.base);
    return j;
}

inline SampleSpec sample_spec_from_json(const nlohmann::json& j) {
    const std::string what = "sample spec";
    io_detail::require_version(j, what);
    SampleSpec s;
    auto bounds = [&](const std::string& name) {
        auto b = io_detail::field<nlohmann::json>(j, name, what);
        return Bounds{io_detail::field<double>(b, "lo", what + " " + name),
                      io_detail::field<double>(b, "hi", what + " " + name)};
    };
    s.flow_min = bounds("flow_min");
    s.flow_max = bounds("flow_max");
    s.mode = bounds("mode");
    s.outside_temp = bounds("outside_temp");
    s.load = bounds("load");
    s.count = io_detail::field<int>(j, "count", what);
    s.seed = io_detail::field<std::uint64_t>(j, "seed", what);
    s.base = configuration_from_json(io_detail::field<nlohmann::json>(j, "base", what));
    try {
        s.validate();
    } catch (const ArgumentError& e) {
        throw SchemaError(std::string(e.what()));
    }
    return s;
}

inline nlohmann::json to_json(const SimulationOutput& o) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["satisfaction"] = o.satisfaction;
    j["energy"] = o.energy;
    j["temperatures"] = o.temperatures;
    return j;
}

inline nlohmann::json to_json(const KeyPoints& kp) {
    nlohmann::json j;
    j["alpha"] = {{"satisfaction", kp.alpha.satisfaction}, {"energy", kp.alpha.energy}};
    j["omega"] = {{"satisfaction", kp.omega.satisfaction}, {"energy", kp.omega.energy}};
    j["s_min"] = kp.s_min;
    j["s_max"] = kp.s_max;
    j["s_4"] = kp.s_4;
    j["e_min"] = kp.e_min;
    j["e_max"] = kp.e_max;
    j["e_opt"] = kp.e_opt;
    j["e_3"] = kp.e_3;
    return j;
}

inline KeyPoints key_points_from_json(const nlohmann::json& j) {
    const std::string what = "key points";
    KeyPoints kp;
    auto point = [&](const std::string& name) {
        auto p = io_detail::field<nlohmann::json>(j, name, what);
        return OperatingPoint{io_detail::field<double>(p, "satisfaction", what),
                              io_detail::field<double>(p, "energy", what)};
    };
    kp.alpha = point("alpha");
    kp.omega = point("omega");
    kp.s_min = io_detail::field<double>(j, "s_min", what);
    kp.s_max = io_detail::field<double>(j, "s_max", what);
    kp.s_4 = io_detail::field<double>(j, "s_4", what);
    kp.e_min = io_detail::field<double>(j, "e_min", what);
    kp.e_max = io_detail::field<double>(j, "e_max", what);
    kp.e_opt = io_detail::field<double>(j, "e_opt", what);
    kp.e_3 = io_detail::field<double>(j, "e_3", what);
    return kp;
}

/// Mask rows are run-length encoded as alternating run lengths, starting
/// with a (possibly zero) run of infeasible cells.
inline nlohmann::json to_json(const StaticModel& m) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["grid"] = {{"s_lo", m.grid.s_lo}, {"s_hi", m.grid.s_hi},
                 {"e_lo", m.grid.e_lo}, {"e_hi", m.grid.e_hi},
                 {"n_s", m.grid.n_s},   {"n_e", m.grid.n_e}};
    nlohmann::json mask_rows = nlohmann::json::array();
    for (int i = 0; i < m.grid.n_s; ++i) {
        nlohmann::json runs = nlohmann::json::array();
        std::uint8_t current = 0;
        int run = 0;
        for (int j2 = 0; j2 < m.grid.n_e; ++j2) {
            std::uint8_t v = m.feasible[static_cast<std::size_t>(m.grid.index(i, j2))];
            if (v == current) {
                ++run;
            } else {
                runs.push_back(run);
                current = v;
                run = 1;
            }
        }
        runs.push_back(run);
        mask_rows.push_back(runs);
    }
    j["feasible_rle"] = mask_rows;
    j["work"] = m.work;
    j["key_points"] = to_json(m.key_points);
    return j;
}

inline StaticModel static_model_from_json(const nlohmann::json& j) {
    const std::string what = "static model";
    io_detail::require_version(j, what);
    StaticModel m;
    auto grid = io_detail::field<nlohmann::json>(j, "grid", what);
    m.grid.s_lo = io_detail::field<double>(grid, "s_lo", what);
    m.grid.s_hi = io_detail::field<double>(grid, "s_hi", what);
    m.grid.e_lo = io_detail::field<double>(grid, "e_lo", what);
    m.grid.e_hi = io_detail::field<double>(grid, "e_hi", what);
    m.grid.n_s = io_detail::field<int>(grid, "n_s", what);
    m.grid.n_e = io_detail::field<int>(grid, "n_e", what);
    if (m.grid.n_s < 1 || m.grid.n_e < 1)
        throw SchemaError(what + ": grid resolution must be positive");

    auto mask_rows = io_detail::field<nlohmann::json>(j, "feasible_rle", what);
    if (static_cast<int>(mask_rows.size()) != m.grid.n_s)
        throw SchemaError(what + ": feasible_rle needs one row per satisfaction cell");
    m.feasible.assign(static_cast<std::size_t>(m.grid.cells()), 0);
    for (int i = 0; i < m.grid.n_s; ++i) {
        std::uint8_t value = 0;
        int col = 0;
        for (const auto& run : mask_rows[i]) {
            int len = run.get<int>();
            if (len < 0 || col + len > m.grid.n_e)
                throw SchemaError(what + ": feasible_rle row " + std::to_string(i) +
                                  " does not sum to the row length");
            for (int k = 0; k < len; ++k)
                m.feasible[static_cast<std::size_t>(m.grid.index(i, col + k))] = value;
            col += len;
            value = value ? 0 : 1;
        }
        if (col != m.grid.n_e)
            throw SchemaError(what + ": feasible_rle row " + std::to_string(i) +
                              " does not sum to the row length");
    }
    m.work = io_detail::field<std::vector<double>>(j, "work", what);
    if (static_cast<int>(m.work.size()) != m.grid.cells())
        throw SchemaError(what + ": work grid has the wrong size");
    m.key_points = key_points_from_json(io_detail::field<nlohmann::json>(j, "key_points", what));
    return m;
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open input file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("cannot parse " + path + ": " + e.what());
    }
    return j;
}

/// Write-to-temp then atomic rename; never leaves partial output behind.
inline void write_file_atomic(const std::string& path, const std::string& contents) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open output file: " + tmp);
        out << contents;
        if (!out) throw Error("failed writing output file: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error("cannot rename " + tmp + " to " + path);
    }
}

}  // namespace hvac

#endif
