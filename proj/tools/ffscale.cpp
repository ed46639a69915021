// Command-line front end: run a scenario, verify its invariants, or sweep
// the reference duration toward the adiabatic regime.
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure,
// 4 failed verification.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ffscale/csv.hpp"
#include "ffscale/scenario.hpp"
#include "ffscale/verify.hpp"

namespace fs = std::filesystem;
using namespace ffscale;

namespace {

std::vector<double> parse_tref_list(const std::string& arg) {
    std::vector<double> out;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("--tref: cannot parse '" + item + "' as a number");
        }
    }
    if (out.empty()) throw ConfigError("--tref: empty list");
    for (size_t i = 0; i + 1 < out.size(); ++i)
        if (!(out[i] < out[i + 1])) throw ConfigError("--tref: values must be ascending");
    return out;
}

std::ofstream open_output(const fs::path& dir, const std::string& file) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::ofstream os(dir / file, std::ios::binary);
    if (!os) throw ConfigError("cannot write " + (dir / file).string());
    return os;
}

int cmd_run(const std::string& config, const std::string& out_dir) {
    const harness::Scenario sc = harness::load_scenario(config);
    const harness::RunResult run = harness::run_scenario(sc);
    {
        auto os = open_output(out_dir, "trajectory.csv");
        harness::write_trajectory_csv(os, sc, run);
    }
    {
        auto os = open_output(out_dir, "metadata.json");
        harness::write_metadata_json(os, sc, run);
    }
    std::cout << sc.name << ": " << run.fast_forward.times.size() << " grid points, "
              << "max population deviation " << run.stats.max_population_deviation << "\n"
              << "wrote " << (fs::path(out_dir) / "trajectory.csv").string() << "\n";
    return 0;
}

int cmd_verify(const std::string& config) {
    const harness::Scenario sc = harness::load_scenario(config);
    const harness::VerificationReport report = harness::verify_scenario(sc);
    std::cout << report.to_text();
    return report.all_pass() ? 0 : 4;
}

int cmd_sweep(const std::string& config, const std::string& tref_arg, const std::string& out_dir) {
    const harness::Scenario sc = harness::load_scenario(config);
    const std::vector<double> trefs = parse_tref_list(tref_arg);
    const auto rows = harness::sweep_adiabatic(sc, trefs);
    {
        auto os = open_output(out_dir, "sweep.csv");
        harness::write_sweep_csv(os, rows);
    }
    harness::write_sweep_csv(std::cout, rows);
    std::cout << "wrote " << (fs::path(out_dir) / "sweep.csv").string() << "\n";
    for (const auto& r : rows)
        if (r.status != "ok") return 3;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-rescaled driven quantum dynamics"};
    app.require_subcommand(1);

    std::string config, out_dir = "out", tref_arg;

    CLI::App* run = app.add_subcommand("run", "evolve a scenario and write trajectory CSV");
    run->add_option("--config", config, "scenario JSON")->required();
    run->add_option("--out", out_dir, "output directory");

    CLI::App* verify = app.add_subcommand("verify", "evaluate the invariant suite on a scenario");
    verify->add_option("--config", config, "scenario JSON")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "adiabatic-limit sweep over reference durations");
    sweep->add_option("--config", config, "base scenario JSON")->required();
    sweep->add_option("--tref", tref_arg, "comma-separated ascending reference durations")->required();
    sweep->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config, out_dir);
        if (verify->parsed()) return cmd_verify(config);
        if (sweep->parsed()) return cmd_sweep(config, tref_arg, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
