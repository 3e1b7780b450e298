// End-to-end tests of the hvacinc command-line tool: every subcommand is run
// as a subprocess against the shipped data files, checking stdout, produced
// artifacts, exit codes for each error class, and byte-level determinism.
#include <catch2/catch_amalgamated.hpp>

#include "hvac/json_io.hpp"
#include "hvac/static_model.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef HVAC_CLI_PATH
#error "HVAC_CLI_PATH must point at the hvacinc executable"
#endif
#ifndef HVAC_DATA_DIR
#error "HVAC_DATA_DIR must point at the shipped data directory"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // combined stdout + stderr
};

std::string temp_path(const std::string& name) {
    return std::string("/tmp/hvacinc_test_") + name;
}

RunResult run_cli(const std::string& args) {
    const std::string log = temp_path("log.txt");
    const std::string cmd =
        std::string(HVAC_CLI_PATH) + " " + args + " > " + log + " 2>&1";
    int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (raw >= 0) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(log);
    std::ostringstream buf;
    buf << in.rdbuf();
    r.output = buf.str();
    return r;
}

std::string data_file(const std::string& name) {
    return std::string(HVAC_DATA_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << contents;
    REQUIRE(out.good());
}

}  // namespace

TEST_CASE("simulate runs the shipped scenario and writes a result file") {
    const std::string out = temp_path("sim.json");
    std::remove(out.c_str());
    auto r = run_cli("simulate " + data_file("model.json") + " " +
                     data_file("config.json") + " " +
                     data_file("disturbance.json") + " --out " + out);
    INFO(r.output);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("S=") != std::string::npos);
    CHECK(r.output.find("E=") != std::string::npos);

    auto j = hvac::load_json_file(out);
    double s = j.at("satisfaction").get<double>();
    double e = j.at("energy").get<double>();
    CHECK(s <= 1.0);
    CHECK(s > 0.9);  // the shipped configuration regulates into the comfort band
    CHECK(e > 0.0);
}

TEST_CASE("extract builds a valid operating model from the shipped building") {
    const std::string out = temp_path("static.json");
    const std::string cloud = temp_path("cloud.csv");
    auto r = run_cli("extract " + data_file("model.json") + " " +
                     data_file("sample-spec.json") + " --out " + out +
                     " --cloud " + cloud);
    INFO(r.output);
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("alpha") != std::string::npos);
    CHECK(r.output.find("omega") != std::string::npos);

    auto model = hvac::static_model_from_json(hvac::load_json_file(out));
    hvac::validate_static_model(model);
    const auto& kp = model.key_points;
    CHECK(kp.alpha.satisfaction < kp.omega.satisfaction);
    CHECK(kp.alpha.energy < kp.omega.energy);
    CHECK(kp.e_opt <= kp.e_3);

    // Cloud CSV: header plus one row per sample.
    std::istringstream cs(slurp(cloud));
    std::string line;
    REQUIRE(std::getline(cs, line));
    CHECK(line == "S,E");
    int rows = 0;
    while (std::getline(cs, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 10000);
}

TEST_CASE("extract is byte-identical across runs and matches the default seed") {
    const std::string out_a = temp_path("det_a.json");
    const std::string out_b = temp_path("det_b.json");
    const std::string out_c = temp_path("det_c.json");
    const std::string base = "extract " + data_file("model.json") + " " +
                             data_file("sample-spec.json");
    REQUIRE(run_cli(base + " --out " + out_a).exit_code == 0);
    REQUIRE(run_cli(base + " --out " + out_b).exit_code == 0);
    REQUIRE(run_cli("--seed 20240101 " + base + " --out " + out_c).exit_code == 0);
    const std::string a = slurp(out_a);
    CHECK(a == slurp(out_b));
    CHECK(a == slurp(out_c));
}

TEST_CASE("trace sweeps produce well-formed CSV for each scheme") {
    const std::string model = temp_path("static.json");
    REQUIRE(run_cli("extract " + data_file("model.json") + " " +
                    data_file("sample-spec.json") + " --out " + model)
                .exit_code == 0);

    SECTION("single-period weight sweep") {
        const std::string out = temp_path("trace_none.csv");
        auto r = run_cli("trace " + model +
                         " --scheme none --param-list 0,0.005,0.02,0.1 --out " + out);
        INFO(r.output);
        REQUIRE(r.exit_code == 0);
        std::istringstream cs(slurp(out));
        std::string line;
        REQUIRE(std::getline(cs, line));
        CHECK(line == "lambda,S_lo,S_hi,E_lo,E_hi");
        int rows = 0;
        double prev_hi = 2.0;
        while (std::getline(cs, line)) {
            if (line.empty()) continue;
            ++rows;
            double lambda, s_lo, s_hi, e_lo, e_hi;
            REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &lambda,
                                &s_lo, &s_hi, &e_lo, &e_hi) == 5);
            CHECK(s_lo <= s_hi);
            CHECK(e_lo <= e_hi);
            CHECK(s_hi <= prev_hi + 1e-12);  // satisfaction falls as the weight grows
            prev_hi = s_hi;
        }
        CHECK(rows == 4);
    }

    SECTION("two-period schemes") {
        for (const std::string scheme : {"baselining", "bonus"}) {
            const std::string out = temp_path("trace_" + scheme + ".csv");
            auto r = run_cli("trace " + model + " --scheme " + scheme +
                             " --lambda 0.01 --param-list 0,0.5,2 --out " + out);
            INFO(scheme << ": " << r.output);
            REQUIRE(r.exit_code == 0);
            std::istringstream cs(slurp(out));
            std::string line;
            REQUIRE(std::getline(cs, line));
            CHECK(line == "gamma,S1_lo,S1_hi,E1_lo,E1_hi,S2_lo,S2_hi,E2_lo,E2_hi");
        }
    }
}

TEST_CASE("savings reports a nonnegative payout column and zero row at P=0") {
    const std::string model = temp_path("static.json");
    REQUIRE(run_cli("extract " + data_file("model.json") + " " +
                    data_file("sample-spec.json") + " --out " + model)
                .exit_code == 0);
    auto parsed = hvac::static_model_from_json(hvac::load_json_file(model));
    const auto rep = parsed.key_points.omega;

    const std::string out = temp_path("savings.csv");
    char actual[64];
    std::snprintf(actual, sizeof actual, "%.17g,%.17g", rep.satisfaction, rep.energy);
    auto r = run_cli("savings " + model +
                     " --payouts 0,50,200 --prices 20,100 --salary 100 --actual " +
                     std::string(actual) + " --out " + out);
    INFO(r.output);
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("calibrated lambda=") != std::string::npos);

    std::istringstream cs(slurp(out));
    std::string line;
    REQUIRE(std::getline(cs, line));
    CHECK(line == "P,delta_E,delta_S,savings_20,savings_100");
    REQUIRE(std::getline(cs, line));
    double p, de, ds, s20, s100;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &p, &de, &ds, &s20,
                        &s100) == 5);
    CHECK(p == 0.0);
    CHECK(de == 0.0);
    CHECK(ds == 0.0);
}

TEST_CASE("input errors exit with code 2 and name the offending file") {
    auto missing = run_cli("extract " + data_file("model.json") +
                           " /nonexistent/spec.json");
    CHECK(missing.exit_code == 2);
    CHECK(missing.output.find("/nonexistent/spec.json") != std::string::npos);

    const std::string bad = temp_path("bad_schema.json");
    auto j = hvac::load_json_file(data_file("model.json"));
    j["schema_version"] = "999";
    spit(bad, j.dump());
    auto schema = run_cli("simulate " + bad + " " + data_file("config.json") + " " +
                          data_file("disturbance.json"));
    CHECK(schema.exit_code == 2);
}

TEST_CASE("a diverging simulation exits with code 3") {
    const std::string bad = temp_path("unstable_model.json");
    auto j = hvac::load_json_file(data_file("model.json"));
    j["thermal_2"] = {{1.0e6}};  // wildly unstable: temperatures overflow within the period
    spit(bad, j.dump());
    auto r = run_cli("simulate " + bad + " " + data_file("config.json") + " " +
                     data_file("disturbance.json"));
    INFO(r.output);
    CHECK(r.exit_code == 3);
}

TEST_CASE("an extraction that violates the shape invariants exits with code 4") {
    auto r = run_cli("extract " + data_file("model.json") + " " +
                     data_file("sample-spec.json") + " --n 100 --out " +
                     temp_path("sparse.json"));
    INFO(r.output);
    CHECK(r.exit_code == 4);
}

TEST_CASE("trace and savings argument errors exit with code 5") {
    const std::string model = temp_path("static.json");
    REQUIRE(run_cli("extract " + data_file("model.json") + " " +
                    data_file("sample-spec.json") + " --out " + model)
                .exit_code == 0);

    auto scheme = run_cli("trace " + model + " --scheme bogus --param-list 1 --out " +
                          temp_path("x.csv"));
    CHECK(scheme.exit_code == 5);

    auto outside = run_cli("savings " + model +
                           " --payouts 10 --prices 20 --salary 100"
                           " --actual 0.01,1 --out " + temp_path("x.csv"));
    CHECK(outside.exit_code == 5);
}

TEST_CASE("a broken ordering check is caught and its counterexamples replay clean") {
    const std::string report = temp_path("counterexamples.json");
    auto r = run_cli("verify --instances 300 --mutate-family --out " + report);
    INFO(r.output);
    REQUIRE(r.exit_code == 6);
    auto j = hvac::load_json_file(report);
    REQUIRE(j.contains("counterexamples"));
    CHECK(!j["counterexamples"].empty());

    // The recorded instances must reproduce, and pass under the real check.
    auto replay = run_cli("verify --replay " + report);
    INFO(replay.output);
    CHECK(replay.exit_code == 0);
    CHECK(replay.output.find("pass") != std::string::npos);
}

TEST_CASE("verify passes on a healthy run") {
    auto r = run_cli("verify --instances 500");
    INFO(r.output);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("counterexamples=0") != std::string::npos);
}
