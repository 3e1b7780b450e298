#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "hvac/json_io.hpp"
#include "hvac/static_model.hpp"

using namespace hvac;

namespace {

BuildingModel sample_building() {
    BuildingModel m;
    m.zones = 2;
    for (int mode = 0; mode < kModeCount; ++mode) {
        m.thermal[mode] = Matrix::diagonal(2, 0.7 + 0.05 * mode);
        m.flow[mode] = Matrix::diagonal(2, -0.4 + 0.1 * mode);
        m.reheat[mode] = Matrix::diagonal(2, 0.3);
        m.thermal[mode](0, 1) = 0.05;
    }
    m.supply_temp = {14.0, 13.0, 12.5};
    m.fan_coeff = 0.1;
    m.chiller_coeff = 0.02;
    m.reheat_coeff = 0.05;
    m.comfort_band = {0.5, 0.5};
    m.steps_per_period = 12;
    return m;
}

HvacConfiguration sample_configuration() {
    HvacConfiguration c;
    c.flow_min = {1.0, 1.1};
    c.flow_max = {3.0, 3.2};
    c.desired_temp = {22.0, 21.5};
    c.mode = 2;
    c.flow_gain = 1.0;
    c.reheat_gain = 0.5;
    c.reheat_max = {2.0, 2.5};
    return c;
}

StaticModel sample_static_model() {
    KeyPoints kp;
    kp.s_min = 0.3;
    kp.s_max = 0.9;
    kp.s_4 = 0.5;
    kp.e_min = 2.0;
    kp.e_max = 10.0;
    kp.e_opt = 5.0;
    kp.e_3 = 7.0;
    kp.alpha = {0.45, 4.0};
    kp.omega = {0.75, 6.5};
    return canonical_model(kp, 40, 50);
}

}  // namespace

TEST_CASE("building model JSON round-trips exactly") {
    auto m = sample_building();
    auto j = to_json(m);
    auto back = building_model_from_json(j);
    CHECK(back.zones == m.zones);
    for (int mode = 0; mode < kModeCount; ++mode)
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) {
                CHECK(back.thermal[mode](i, k) == m.thermal[mode](i, k));
                CHECK(back.flow[mode](i, k) == m.flow[mode](i, k));
                CHECK(back.reheat[mode](i, k) == m.reheat[mode](i, k));
            }
    CHECK(back.supply_temp == m.supply_temp);
    CHECK(back.fan_coeff == m.fan_coeff);
    CHECK(back.comfort_band == m.comfort_band);
    CHECK(back.steps_per_period == m.steps_per_period);
}

TEST_CASE("schema version and missing fields are named in errors") {
    auto j = to_json(sample_building());
    auto no_version = j;
    no_version.erase("schema_version");
    CHECK_THROWS_WITH(building_model_from_json(no_version),
                      Catch::Matchers::ContainsSubstring("schema_version"));

    auto wrong_version = j;
    wrong_version["schema_version"] = "99";
    CHECK_THROWS_AS(building_model_from_json(wrong_version), SchemaError);

    auto missing = j;
    missing.erase("fan_coeff");
    CHECK_THROWS_WITH(building_model_from_json(missing),
                      Catch::Matchers::ContainsSubstring("fan_coeff"));

    auto bad_type = j;
    bad_type["zones"] = "two";
    CHECK_THROWS_WITH(building_model_from_json(bad_type),
                      Catch::Matchers::ContainsSubstring("zones"));

    auto ragged = j;
    ragged["thermal_1"] = {{0.5, 0.1}};
    CHECK_THROWS_AS(building_model_from_json(ragged), SchemaError);
}

TEST_CASE("configuration and disturbance JSON round-trip") {
    auto c = sample_configuration();
    auto c2 = configuration_from_json(to_json(c));
    CHECK(c2.flow_min == c.flow_min);
    CHECK(c2.flow_max == c.flow_max);
    CHECK(c2.desired_temp == c.desired_temp);
    CHECK(c2.mode == c.mode);
    CHECK(c2.reheat_max == c.reheat_max);

    DisturbanceTrace d;
    d.outside_temp = {8.0, 9.0, 10.0};
    d.load = {{1.0, 2.0}, {1.5, 2.5}, {2.0, 3.0}};
    auto d2 = disturbance_from_json(to_json(d));
    CHECK(d2.outside_temp == d.outside_temp);
    CHECK(d2.load == d.load);

    auto j = to_json(d);
    j["load"].erase(2);
    CHECK_THROWS_AS(disturbance_from_json(j), SchemaError);
}

TEST_CASE("sample spec JSON round-trips including the embedded base") {
    SampleSpec s;
    s.flow_min = {0.5, 1.0};
    s.flow_max = {1.5, 3.0};
    s.mode = {1, 2};
    s.outside_temp = {6.0, 11.0};
    s.load = {2.0, 5.0};
    s.count = 1234;
    s.seed = 99;
    s.base = sample_configuration();
    auto s2 = sample_spec_from_json(to_json(s));
    CHECK(s2.flow_min.lo == s.flow_min.lo);
    CHECK(s2.flow_max.hi == s.flow_max.hi);
    CHECK(s2.mode.lo == s.mode.lo);
    CHECK(s2.count == s.count);
    CHECK(s2.seed == s.seed);
    CHECK(s2.base.desired_temp == s.base.desired_temp);

    auto j = to_json(s);
    j["mode"] = {{"lo", 0}, {"hi", 2}};
    CHECK_THROWS_AS(sample_spec_from_json(j), SchemaError);
}

TEST_CASE("static model JSON round-trips the mask, work grid and key points") {
    auto m = sample_static_model();
    auto m2 = static_model_from_json(to_json(m));
    CHECK(m2.grid.s_lo == m.grid.s_lo);
    CHECK(m2.grid.e_hi == m.grid.e_hi);
    CHECK(m2.grid.n_s == m.grid.n_s);
    CHECK(m2.grid.n_e == m.grid.n_e);
    CHECK(m2.feasible == m.feasible);
    CHECK(m2.work == m.work);
    CHECK(m2.key_points.alpha.satisfaction == m.key_points.alpha.satisfaction);
    CHECK(m2.key_points.omega.energy == m.key_points.omega.energy);
    CHECK(m2.key_points.e_3 == m.key_points.e_3);

    // The run-length rows always describe full rows.
    auto j = to_json(m);
    j["feasible_rle"][0] = {1000000};
    CHECK_THROWS_AS(static_model_from_json(j), SchemaError);
    j = to_json(m);
    j["work"] = {1.0, 2.0};
    CHECK_THROWS_AS(static_model_from_json(j), SchemaError);
}

TEST_CASE("simulation output serializes its trace") {
    SimulationOutput o;
    o.satisfaction = 0.8;
    o.energy = 5.5;
    o.temperatures = {{22.0, 21.0}, {22.1, 21.2}};
    auto j = to_json(o);
    CHECK(j["satisfaction"] == 0.8);
    CHECK(j["energy"] == 5.5);
    CHECK(j["temperatures"].size() == 2);
}

TEST_CASE("file loading errors name the path") {
    CHECK_THROWS_WITH(load_json_file("/nonexistent/x.json"),
                      Catch::Matchers::ContainsSubstring("/nonexistent/x.json"));
    std::string path = "bad_parse_test.json";
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_WITH(load_json_file(path),
                      Catch::Matchers::ContainsSubstring(path));
    std::remove(path.c_str());
}

TEST_CASE("atomic writes leave no temp file behind") {
    std::string path = "atomic_write_test.json";
    write_file_atomic(path, "{\"a\":1}\n");
    std::ifstream in(path);
    std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(all == "{\"a\":1}\n");
    std::ifstream tmp(path + ".tmp");
    CHECK_FALSE(tmp.good());
    std::remove(path.c_str());
}
