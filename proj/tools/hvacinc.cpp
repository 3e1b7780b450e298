// hvacinc: simulate the hybrid HVAC model, extract static operating models
// from Monte Carlo clouds, trace incentive-scheme sweeps, verify the
// ordering theorems, and tabulate monetary savings.
//
// Exit codes:
//   0  success
//   1  bad command line
//   2  input schema error (missing file, bad JSON, wrong field)
//   3  simulation diverged
//   4  static-model extraction / key-point invariant failure
//   5  trace, calibration, or savings error
//   6  theorem verification found a counterexample

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hvac/agents.hpp"
#include "hvac/csv.hpp"
#include "hvac/dynamics.hpp"
#include "hvac/json_io.hpp"
#include "hvac/static_model.hpp"
#include "hvac/verify.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 20240101;

constexpr int kExitUsage = 1;
constexpr int kExitSchema = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitModelShape = 4;
constexpr int kExitTrace = 5;
constexpr int kExitCounterexample = 6;

void print_key_points(const hvac::KeyPoints& kp) {
    std::cout.precision(10);
    std::cout << "alpha    S=" << kp.alpha.satisfaction << " E=" << kp.alpha.energy << "\n"
              << "omega    S=" << kp.omega.satisfaction << " E=" << kp.omega.energy << "\n"
              << "S_min=" << kp.s_min << " S_max=" << kp.s_max << " S_4=" << kp.s_4 << "\n"
              << "E_min=" << kp.e_min << " E_max=" << kp.e_max << " E_opt=" << kp.e_opt
              << " E_3=" << kp.e_3 << "\n";
}

int run_simulate(const std::string& model_path, const std::string& config_path,
                 const std::string& disturbance_path, const std::string& out_path) {
    auto model = hvac::building_model_from_json(hvac::load_json_file(model_path));
    auto config = hvac::configuration_from_json(hvac::load_json_file(config_path));
    auto disturbance = hvac::disturbance_from_json(hvac::load_json_file(disturbance_path));
    auto output = hvac::simulate_period(model, config, disturbance, config.desired_temp);
    hvac::write_file_atomic(out_path, hvac::to_json(output).dump(2) + "\n");
    std::cout << "S=" << output.satisfaction << " E=" << output.energy << "\n";
    return 0;
}

int run_extract(const std::string& model_path, const std::string& spec_path,
                const std::string& out_path, const std::string& cloud_path, int n_override,
                std::uint64_t seed, bool seed_given, int resolution) {
    auto model = hvac::building_model_from_json(hvac::load_json_file(model_path));
    auto spec = hvac::sample_spec_from_json(hvac::load_json_file(spec_path));
    if (n_override > 0) spec.count = n_override;
    if (seed_given) spec.seed = seed;

    auto cloud = hvac::monte_carlo_cloud(model, spec);
    if (!cloud_path.empty())
        hvac::write_file_atomic(cloud_path, hvac::cloud_csv(cloud.points));

    hvac::ExtractionOptions options;
    options.n_s = options.n_e = resolution;
    auto static_model = hvac::build_static_model(cloud.points, options);
    hvac::write_file_atomic(out_path, hvac::to_json(static_model).dump() + "\n");
    std::cout << "samples=" << cloud.points.size() << " diverged=" << cloud.diverged
              << "\n";
    print_key_points(static_model.key_points);
    return 0;
}

int run_trace(const std::string& model_path, const std::string& scheme,
              const std::vector<double>& params, double lambda,
              const std::string& out_path) {
    auto model = hvac::static_model_from_json(hvac::load_json_file(model_path));
    if (params.empty()) throw hvac::ArgumentError("trace: --param-list must be nonempty");

    if (scheme == "none") {
        std::vector<std::pair<double, hvac::OperatingSet>> rows;
        for (double value : params)
            rows.emplace_back(value, hvac::manager_best_response(model, value));
        hvac::write_file_atomic(out_path, hvac::single_period_trace_csv(rows));
    } else if (scheme == "baselining") {
        std::vector<std::pair<double, hvac::TwoPeriodOutcome>> rows;
        for (double value : params)
            rows.emplace_back(value, hvac::baselining_best_response(model, lambda, value));
        hvac::write_file_atomic(out_path, hvac::two_period_trace_csv(rows));
    } else if (scheme == "bonus") {
        double kappa_value = hvac::kappa(model.key_points);
        std::vector<std::pair<double, hvac::TwoPeriodOutcome>> rows;
        for (double value : params)
            rows.emplace_back(
                value, hvac::bonus_best_response(model, lambda, value, kappa_value));
        hvac::write_file_atomic(out_path, hvac::two_period_trace_csv(rows));
    } else {
        throw hvac::ArgumentError("trace: unknown scheme '" + scheme + "'");
    }
    return 0;
}

nlohmann::json instance_to_json(const hvac::VerifyInstance& inst) {
    return {{"family", inst.family == hvac::Family::Type1 ? 1 : 2},
            {"direction",
             inst.direction == hvac::Monotonicity::Increasing ? "increasing" : "decreasing"},
            {"seed", inst.seed},
            {"index", inst.index}};
}

hvac::VerifyInstance instance_from_json(const nlohmann::json& j) {
    hvac::VerifyInstance inst;
    int family = j.at("family").get<int>();
    if (family != 1 && family != 2)
        throw hvac::SchemaError("verify instance: family must be 1 or 2");
    inst.family = family == 1 ? hvac::Family::Type1 : hvac::Family::Type2;
    std::string dir = j.at("direction").get<std::string>();
    if (dir != "increasing" && dir != "decreasing")
        throw hvac::SchemaError("verify instance: bad direction");
    inst.direction =
        dir == "increasing" ? hvac::Monotonicity::Increasing : hvac::Monotonicity::Decreasing;
    inst.seed = j.at("seed").get<std::uint64_t>();
    inst.index = j.at("index").get<std::uint64_t>();
    return inst;
}

int run_verify(std::uint64_t instances, std::uint64_t seed, bool mutate_family,
               const std::string& replay_path, const std::string& out_path) {
    if (!replay_path.empty()) {
        auto j = hvac::load_json_file(replay_path);
        if (!j.contains("counterexamples"))
            throw hvac::SchemaError("replay file: missing field 'counterexamples'");
        bool all_pass = true;
        for (const auto& entry : j.at("counterexamples")) {
            auto inst = instance_from_json(entry.at("instance"));
            auto verdict = hvac::replay_instance(inst);
            std::cout << "replay seed=" << inst.seed << " index=" << inst.index << " "
                      << (verdict.pass ? "pass" : "FAIL") << "\n";
            if (!verdict.pass) all_pass = false;
        }
        return all_pass ? 0 : kExitCounterexample;
    }

    auto report = hvac::run_verification(instances, seed, mutate_family);
    std::cout << "instances=" << report.instances_run
              << " counterexamples=" << report.counterexamples.size() << "\n";
    if (!out_path.empty() || !report.pass()) {
        nlohmann::json j;
        j["schema_version"] = hvac::kSchemaVersion;
        j["instances_run"] = report.instances_run;
        j["counterexamples"] = nlohmann::json::array();
        for (const auto& ce : report.counterexamples)
            j["counterexamples"].push_back(
                {{"instance", instance_to_json(ce.instance)},
                 {"lambda_a", ce.verdict.lambda_a},
                 {"lambda_b", ce.verdict.lambda_b},
                 {"detail", ce.verdict.detail}});
        std::string path = out_path.empty() ? "counterexamples.json" : out_path;
        hvac::write_file_atomic(path, j.dump(2) + "\n");
        if (!report.pass()) std::cout << "counterexamples written to " << path << "\n";
    }
    return report.pass() ? 0 : kExitCounterexample;
}

int run_savings(const std::string& model_path, const std::vector<double>& payouts,
                const std::vector<double>& prices, double salary,
                const std::vector<double>& actual, const std::string& out_path) {
    auto model = hvac::static_model_from_json(hvac::load_json_file(model_path));
    if (actual.size() != 2)
        throw hvac::ArgumentError("savings: --actual needs exactly S,E");
    hvac::OperatingPoint observed{actual[0], actual[1]};
    if (!hvac::membership(model, observed))
        throw hvac::DomainError("savings: --actual point is infeasible for this model");

    double lambda =
        hvac::estimate_lambda(model, observed, hvac::calibration_lambda_grid(model));
    std::cout << "calibrated lambda=" << lambda << "\n";
    auto rows = hvac::savings_table(model, lambda, payouts, prices, salary);
    hvac::write_file_atomic(out_path, hvac::savings_csv(rows, prices));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HVAC incentive analysis toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = kDefaultSeed;
    app.add_option("--seed", seed, "Global RNG seed")->capture_default_str();

    // simulate
    std::string sim_model, sim_config, sim_disturbance, sim_out = "point.json";
    auto* simulate = app.add_subcommand("simulate", "Run one period of the hybrid model");
    simulate->add_option("model", sim_model, "Building model JSON")->required();
    simulate->add_option("config", sim_config, "HVAC configuration JSON")->required();
    simulate->add_option("disturbance", sim_disturbance, "Disturbance trace JSON")->required();
    simulate->add_option("--out", sim_out, "Output point JSON")->capture_default_str();

    // extract
    std::string ext_model, ext_spec, ext_out = "static-model.json", ext_cloud;
    int ext_n = 0, ext_resolution = 200;
    auto* extract = app.add_subcommand("extract", "Monte Carlo cloud to static model");
    extract->add_option("model", ext_model, "Building model JSON")->required();
    extract->add_option("sample-spec", ext_spec, "Sampling specification JSON")->required();
    extract->add_option("--out", ext_out, "Output static-model JSON")->capture_default_str();
    extract->add_option("--cloud", ext_cloud, "Also write the raw cloud CSV here");
    extract->add_option("--n", ext_n, "Override the sample count");
    extract->add_option("--resolution", ext_resolution, "Grid cells per axis")
        ->capture_default_str();

    // trace
    std::string trc_model, trc_scheme = "none", trc_out = "trace.csv";
    std::vector<double> trc_params;
    double trc_lambda = 0.0;
    auto* trace = app.add_subcommand("trace", "Sweep an incentive parameter");
    trace->add_option("static-model", trc_model, "Static model JSON")->required();
    trace->add_option("--scheme", trc_scheme, "none, baselining, or bonus")
        ->capture_default_str();
    trace->add_option("--param-list", trc_params, "Comma-separated sweep values")
        ->required()
        ->delimiter(',');
    trace->add_option("--lambda", trc_lambda, "Manager work-aversion weight")
        ->capture_default_str();
    trace->add_option("--out", trc_out, "Output CSV")->capture_default_str();

    // verify
    std::uint64_t ver_instances = 10000;
    bool ver_mutate = false;
    std::string ver_replay, ver_out;
    auto* verify = app.add_subcommand("verify", "Randomized theorem verification");
    verify->add_option("--instances", ver_instances, "Instances per theorem case")
        ->capture_default_str();
    verify->add_flag("--mutate-family", ver_mutate,
                     "Check the wrong ordering on purpose (harness self-test)");
    verify->add_option("--replay", ver_replay, "Replay a counterexample report JSON");
    verify->add_option("--out", ver_out, "Write the report JSON here");

    // savings
    std::string sav_model, sav_out = "table.csv";
    std::vector<double> sav_payouts, sav_prices, sav_actual;
    double sav_salary = 0.0;
    auto* savings = app.add_subcommand("savings", "Calibrate and tabulate daily savings");
    savings->add_option("static-model", sav_model, "Static model JSON")->required();
    savings->add_option("--payouts", sav_payouts, "Maximum payouts P, comma-separated")
        ->required()
        ->delimiter(',');
    savings->add_option("--prices", sav_prices, "Energy prices, comma-separated")
        ->required()
        ->delimiter(',');
    savings->add_option("--salary", sav_salary, "Manager salary per period")->required();
    savings->add_option("--actual", sav_actual, "Observed operating point S,E")
        ->required()
        ->delimiter(',');
    savings->add_option("--out", sav_out, "Output CSV")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (*simulate) return run_simulate(sim_model, sim_config, sim_disturbance, sim_out);
        if (*extract)
            return run_extract(ext_model, ext_spec, ext_out, ext_cloud, ext_n, seed,
                               app.count("--seed") > 0, ext_resolution);
        if (*trace) return run_trace(trc_model, trc_scheme, trc_params, trc_lambda, trc_out);
        if (*verify) return run_verify(ver_instances, seed, ver_mutate, ver_replay, ver_out);
        if (*savings)
            return run_savings(sav_model, sav_payouts, sav_prices, sav_salary, sav_actual,
                               sav_out);
    } catch (const hvac::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const hvac::SimulationDivergedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDiverged;
    } catch (const hvac::ModelShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitModelShape;
    } catch (const hvac::SamplingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitModelShape;
    } catch (const hvac::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTrace;
    }
    return kExitUsage;
}
