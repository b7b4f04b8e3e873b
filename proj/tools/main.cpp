/**
 * @file main.cpp
 * @brief Command-line driver: configured simulation runs, fire-curve and
 *        constitutive-table dumps, verification reports, and directory
 *        sweeps over configuration files.
 *
 * Exit codes: 0 on success, 1 when a run trips a strict monitor or a
 * verification report fails, 2 for configuration/usage errors.
 */
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hygrotherm/config.hpp"
#include "hygrotherm/fire.hpp"
#include "hygrotherm/materials.hpp"
#include "hygrotherm/output.hpp"
#include "hygrotherm/solver.hpp"
#include "hygrotherm/verify.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitRunFailure = 1;
constexpr int kExitConfigError = 2;

using hygrotherm::config::SimulationConfig;
using ordered_json = nlohmann::ordered_json;
namespace materials = hygrotherm::materials;
namespace fire = hygrotherm::fire;
namespace solver = hygrotherm::solver;
namespace output = hygrotherm::output;
namespace verify = hygrotherm::verify;
namespace config = hygrotherm::config;

/// Nine significant digits, matching the CSV artifact format.
std::string value(double v) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.9g", v);
    return buffer;
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

/// Everything a finished run wants to tell the caller; collected rather than
/// printed so `sweep` can serialise the output of parallel runs.
struct RunOutcome {
    std::string report;                ///< normal output (stdout)
    std::vector<std::string> warnings; ///< monitor findings (stderr)
    bool violation = false;            ///< physicality monitor tripped
};

RunOutcome execute_config(const SimulationConfig& cfg) {
    const solver::RunResult result = solver::run(output::run_request(cfg));
    const std::vector<std::string> files = output::write_run(cfg, result);
    const solver::RunSummary& s = result.summary;

    std::ostringstream out;
    out << "scenario: " << fire::to_string(cfg.scenario) << "\n"
        << "mesh: " << cfg.mesh.elements << " elements over "
        << value(cfg.mesh.length) << " m\n"
        << "time: dt " << value(cfg.dt) << " s, duration "
        << value(cfg.duration) << " s, " << s.steps << " steps\n"
        << "max theta: " << value(s.max_theta) << " K\n"
        << "min w: " << value(s.min_w) << " kg/m^3\n"
        << "min d: " << value(s.min_d) << " kg/m^3\n"
        << "clamp fraction: " << value(s.clamps.clamped_fraction()) << "\n";
    for (const std::string& name : files) {
        out << "wrote " << cfg.output_directory << "/" << name << "\n";
    }

    RunOutcome outcome;
    outcome.report = out.str();
    if (s.clamp_warning) {
        outcome.warnings.push_back(
            "coefficient clamping engaged on " +
            value(100.0 * s.clamps.clamped_fraction()) +
            "% of evaluations (expected under fire exposure; raise the clamp "
            "box to silence)");
    }
    const double w_floor = -1e-10 * cfg.materials.water_saturation_ref;
    if (s.min_w < w_floor) {
        outcome.violation = true;
        outcome.warnings.push_back("moisture fell below the physical floor: "
                                   "min w = " +
                                   value(s.min_w) + " kg/m^3");
    }
    if (s.min_d < 0.0) {
        outcome.violation = true;
        outcome.warnings.push_back(
            "released bound water went negative: min d = " + value(s.min_d) +
            " kg/m^3");
    }
    return outcome;
}

/// Prints the outcome and maps it to an exit code under the config's policy.
int report_outcome(const SimulationConfig& cfg, const RunOutcome& outcome) {
    std::cout << outcome.report;
    const bool strict = cfg.monitor == config::MonitorPolicy::Strict;
    for (const std::string& message : outcome.warnings) {
        std::cerr << (strict && outcome.violation ? "error: " : "warning: ")
                  << message << "\n";
    }
    if (strict && outcome.violation) return kExitRunFailure;
    return kExitSuccess;
}

int cmd_run(const std::string& path) {
    const SimulationConfig cfg = config::parse_file(path);
    return report_outcome(cfg, execute_config(cfg));
}

// ---------------------------------------------------------------------------
// fire-curve
// ---------------------------------------------------------------------------

int cmd_fire_curve(const std::string& name, double duration, double step) {
    fire::Scenario scenario;
    try {
        scenario = fire::scenario_from_string(name);
    } catch (const std::exception& err) {
        throw config::ConfigError(err.what());
    }
    if (!(duration >= 0.0) || !(step > 0.0)) {
        throw config::ConfigError(
            "fire-curve: duration must be >= 0 and step > 0");
    }
    std::ostringstream out;
    out << "t_s,theta_K\n";
    const auto rows = static_cast<long long>(duration / step);
    for (long long k = 0; k <= rows; ++k) {
        const double t = std::min(k * step, duration);
        out << value(t) << "," << value(fire::gas_temperature(scenario, t))
            << "\n";
    }
    std::cout << out.str();
    return kExitSuccess;
}

// ---------------------------------------------------------------------------
// materials dump
// ---------------------------------------------------------------------------

struct GridSpec {
    double theta_min = 273.15, theta_max = 1473.15;
    int theta_count = 121;
    double w_min = 0.0, w_max = 150.0;
    int w_count = 16;
    double h_min = 0.0, h_max = 1.0;
    int h_count = 5;
};

std::vector<double> axis(double lo, double hi, int count) {
    if (count < 1 || !(hi >= lo)) {
        throw config::ConfigError("materials dump: grid bounds must satisfy "
                                  "min <= max and count >= 1");
    }
    std::vector<double> grid(count);
    for (int i = 0; i < count; ++i) {
        grid[i] = (count == 1) ? lo : lo + (hi - lo) * i / (count - 1);
    }
    return grid;
}

int cmd_materials_dump(const std::string& which, const GridSpec& grid,
                       const materials::MaterialParams& mp) {
    std::ostringstream out;
    const auto thetas = axis(grid.theta_min, grid.theta_max, grid.theta_count);
    if (which == "saturation") {
        out << "theta_K,P_sat_Pa\n";
        for (double theta : thetas) {
            out << value(theta) << ","
                << value(materials::saturation_pressure(theta)) << "\n";
        }
    } else if (which == "dehydration") {
        out << "theta_K,d_eq_kgm3\n";
        for (double theta : thetas) {
            out << value(theta) << ","
                << value(materials::dehydration_equilibrium(mp, theta)) << "\n";
        }
    } else if (which == "sorption") {
        out << "theta_K,w_kgm3,P_Pa\n";
        for (double theta : thetas) {
            for (double w : axis(grid.w_min, grid.w_max, grid.w_count)) {
                out << value(theta) << "," << value(w) << ","
                    << value(materials::sorption_pressure(mp, theta, w))
                    << "\n";
            }
        }
    } else if (which == "coefficients") {
        out << "theta_K,w_kgm3,delta_w_m2s,delta_theta_m2s,lambda_WmK\n";
        for (double theta : thetas) {
            for (double w : axis(grid.w_min, grid.w_max, grid.w_count)) {
                const auto tc =
                    materials::transformed_coefficients(mp, theta, w);
                out << value(theta) << "," << value(w) << ","
                    << value(tc.delta_w) << "," << value(tc.delta_theta) << ","
                    << value(tc.lambda) << "\n";
            }
        }
    } else if (which == "permeability") {
        out << "theta_K,h,a_ms\n";
        for (double theta : thetas) {
            for (double h : axis(grid.h_min, grid.h_max, grid.h_count)) {
                const double p = h * materials::saturation_pressure(theta);
                out << value(theta) << "," << value(h) << ","
                    << value(materials::permeability(mp, theta, p)) << "\n";
            }
        }
    } else {
        throw config::ConfigError(
            "materials dump: unknown table \"" + which +
            "\"; expected saturation, dehydration, sorption, coefficients, "
            "or permeability");
    }
    std::cout << out.str();
    return kExitSuccess;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

solver::SnapshotSeries dense_series(fire::Scenario scenario, int elements,
                                    double dt, double duration, double w0) {
    solver::RunRequest request;
    request.scenario = scenario;
    request.mesh.length = 0.12;
    request.mesh.elements = elements;
    request.options.dt = dt;
    request.initial = solver::initial_state(request.mesh, 293.15, w0);
    request.duration = duration;
    request.dense = true;
    return solver::run(request).series;
}

ordered_json check_to_json(const verify::AuditCheck& check) {
    ordered_json j;
    j["name"] = check.name;
    j["passed"] = check.passed;
    j["observed"] = check.observed;
    j["bound"] = check.bound;
    if (!check.witness.empty()) j["witness"] = check.witness;
    return j;
}

int cmd_verify_audit(const materials::MaterialParams& mp) {
    const verify::AuditReport report = verify::assumption_audit(mp);
    ordered_json j;
    j["samples"] = report.samples;
    j["seed"] = report.seed;
    j["lipschitz_estimate"] = report.lipschitz_estimate;
    j["checks"] = ordered_json::array();
    for (const auto& check : report.checks) {
        j["checks"].push_back(check_to_json(check));
    }
    j["passed"] = report.passed();
    std::cout << j.dump(2) << "\n";
    return report.passed() ? kExitSuccess : kExitRunFailure;
}

ordered_json convergence_to_json(const verify::ConvergenceReport& report,
                                 double required_order) {
    ordered_json j;
    j["levels"] = ordered_json::array();
    for (const auto& level : report.levels) {
        ordered_json l;
        l["h"] = level.h;
        l["dt"] = level.dt;
        l["error_theta"] = level.errors.theta;
        l["error_w"] = level.errors.w;
        j["levels"].push_back(l);
    }
    j["order_theta"] = report.order_theta;
    j["order_w"] = report.order_w;
    j["monotone"] = report.monotone;
    j["required_order"] = required_order;
    j["passed"] = report.monotone && report.order_theta >= required_order &&
                  report.order_w >= required_order;
    return j;
}

int cmd_verify_mms() {
    const auto spatial = verify::mms_spatial_study(
        verify::standard_mms_case(0.12, true), {16, 32, 64}, 5e-6, 0.5);
    const auto temporal = verify::mms_temporal_study(
        verify::standard_mms_case(0.12, false), 64, {0.25, 0.125, 0.0625},
        2.0);
    ordered_json j;
    j["spatial"] = convergence_to_json(spatial, 1.9);
    j["temporal"] = convergence_to_json(temporal, 0.9);
    const bool passed = j["spatial"]["passed"].get<bool>() &&
                        j["temporal"]["passed"].get<bool>();
    j["passed"] = passed;
    std::cout << j.dump(2) << "\n";
    return passed ? kExitSuccess : kExitRunFailure;
}

ordered_json entry_to_json(const verify::WeakFormEntry& entry) {
    ordered_json j;
    j["equation"] = entry.equation;
    j["space"] = entry.space;
    j["time"] = entry.time;
    j["residual"] = entry.residual;
    j["scale"] = entry.scale;
    j["relative"] = entry.relative();
    return j;
}

int cmd_verify_weakform() {
    const materials::MaterialParams mp;
    const fire::BoundaryParams bp;
    solver::Mesh1D mesh;
    mesh.length = 0.12;

    ordered_json j;

    // An equilibrated wall is an exact weak solution; every residual must
    // vanish relative to the magnitudes summed to compute it.
    {
        const double w_eq = materials::moisture_at_pressure(
            mp, 293.15, bp.ambient_vapor_pressure);
        mesh.elements = 60;
        const auto entries = verify::weak_form_residual(
            mp, bp, fire::Scenario::ConstantAmbient, mesh,
            dense_series(fire::Scenario::ConstantAmbient, 60, 1.0, 120.0,
                         w_eq));
        double worst = 0.0;
        ordered_json list = ordered_json::array();
        for (const auto& entry : entries) {
            worst = std::max(worst, entry.relative());
            list.push_back(entry_to_json(entry));
        }
        j["equilibrium"] = {{"entries", list},
                            {"worst_relative", worst},
                            {"tolerance", 1e-8},
                            {"passed", worst <= 1e-8}};
    }

    // Refining an exposed run in space and time together must shrink every
    // residual by the first-order factor.
    {
        mesh.elements = 60;
        const auto coarse = verify::weak_form_residual(
            mp, bp, fire::Scenario::Iso834, mesh,
            dense_series(fire::Scenario::Iso834, 60, 1.0, 600.0, 71.01));
        mesh.elements = 120;
        const auto fine = verify::weak_form_residual(
            mp, bp, fire::Scenario::Iso834, mesh,
            dense_series(fire::Scenario::Iso834, 120, 0.5, 600.0, 71.01));
        double worst = 0.0;
        ordered_json list = ordered_json::array();
        for (std::size_t i = 0; i < coarse.size(); ++i) {
            const double ratio = fine[i].residual / coarse[i].residual;
            worst = std::max(worst, ratio);
            ordered_json e;
            e["equation"] = coarse[i].equation;
            e["space"] = coarse[i].space;
            e["time"] = coarse[i].time;
            e["coarse"] = coarse[i].residual;
            e["fine"] = fine[i].residual;
            e["ratio"] = ratio;
            list.push_back(e);
        }
        const double bound = 1.0 / 1.8;
        j["refinement"] = {{"entries", list},
                           {"worst_ratio", worst},
                           {"bound", bound},
                           {"passed", worst <= bound}};
    }

    const bool passed = j["equilibrium"]["passed"].get<bool>() &&
                        j["refinement"]["passed"].get<bool>();
    j["passed"] = passed;
    std::cout << j.dump(2) << "\n";
    return passed ? kExitSuccess : kExitRunFailure;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

int cmd_sweep(const std::string& directory, int jobs) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(directory)) {
        throw config::ConfigError("sweep: \"" + directory +
                                  "\" is not a directory");
    }
    std::vector<fs::path> configs;
    for (const auto& entry : fs::directory_iterator(directory)) {
        if (entry.is_regular_file() && entry.path().extension() == ".cfg") {
            configs.push_back(entry.path());
        }
    }
    std::sort(configs.begin(), configs.end());
    if (configs.empty()) {
        throw config::ConfigError("sweep: no .cfg files in \"" + directory +
                                  "\"");
    }

    struct SweepResult {
        int code = kExitSuccess;
        std::string line;
        std::vector<std::string> warnings;
    };
    auto one = [](const fs::path& path) {
        SweepResult r;
        try {
            const SimulationConfig cfg = config::parse_file(path.string());
            const RunOutcome outcome = execute_config(cfg);
            const bool strict = cfg.monitor == config::MonitorPolicy::Strict;
            if (strict && outcome.violation) r.code = kExitRunFailure;
            r.line = path.filename().string() + ": " +
                     (r.code == kExitSuccess ? "ok" : "monitor failure") +
                     ", outputs in " + cfg.output_directory;
            for (const auto& w : outcome.warnings) {
                r.warnings.push_back(path.filename().string() + ": " + w);
            }
        } catch (const config::ConfigError& err) {
            r.code = kExitConfigError;
            r.line = path.filename().string() +
                     ": config error: " + err.what();
        } catch (const std::exception& err) {
            r.code = kExitRunFailure;
            r.line = path.filename().string() + ": run error: " + err.what();
        }
        return r;
    };

    std::vector<SweepResult> results(configs.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < configs.size(); ++i) {
            results[i] = one(configs[i]);
        }
    } else {
        // Runs are pure and write to their own output directories; a bounded
        // batch of std::async tasks is all the parallelism needed.
        for (std::size_t begin = 0; begin < configs.size();
             begin += static_cast<std::size_t>(jobs)) {
            const std::size_t end = std::min(
                configs.size(), begin + static_cast<std::size_t>(jobs));
            std::vector<std::future<SweepResult>> batch;
            for (std::size_t i = begin; i < end; ++i) {
                batch.push_back(std::async(std::launch::async, one,
                                           std::cref(configs[i])));
            }
            for (std::size_t i = begin; i < end; ++i) {
                results[i] = batch[i - begin].get();
            }
        }
    }

    int worst = kExitSuccess;
    for (const auto& r : results) {
        std::cout << r.line << "\n";
        for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
        worst = std::max(worst, r.code);
    }
    return worst;
}

materials::MaterialParams load_materials(const std::string& config_path) {
    if (config_path.empty()) return {};
    return config::parse_file(config_path).materials;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Coupled heat and moisture transport in a concrete wall exposed to "
        "fire"};
    app.require_subcommand(1);
    int exit_code = kExitSuccess;

    std::string run_config;
    auto* run_cmd =
        app.add_subcommand("run", "Run one configured simulation");
    run_cmd->add_option("config", run_config, "configuration file")
        ->required();
    run_cmd->callback([&] { exit_code = cmd_run(run_config); });

    std::string curve_scenario;
    double curve_duration = 1800.0, curve_step = 1.0;
    auto* curve_cmd = app.add_subcommand(
        "fire-curve", "Tabulate a gas-temperature history as CSV");
    curve_cmd
        ->add_option("scenario", curve_scenario, "ISO, HC, PM, or constant")
        ->required();
    curve_cmd->add_option("duration", curve_duration, "history length [s]")
        ->required();
    curve_cmd->add_option("--step", curve_step, "sampling step [s]");
    curve_cmd->callback([&] {
        exit_code = cmd_fire_curve(curve_scenario, curve_duration, curve_step);
    });

    auto* materials_cmd =
        app.add_subcommand("materials", "Constitutive-model tables");
    std::string dump_which, dump_config;
    GridSpec grid;
    auto* dump_cmd = materials_cmd->add_subcommand(
        "dump", "Tabulate a constitutive function over a grid as CSV");
    dump_cmd
        ->add_option("which", dump_which,
                     "saturation, dehydration, sorption, coefficients, or "
                     "permeability")
        ->required();
    dump_cmd->add_option("--config", dump_config,
                         "take material parameters from this configuration");
    dump_cmd->add_option("--theta-min", grid.theta_min, "grid start [K]");
    dump_cmd->add_option("--theta-max", grid.theta_max, "grid end [K]");
    dump_cmd->add_option("--theta-count", grid.theta_count, "grid points");
    dump_cmd->add_option("--w-min", grid.w_min, "moisture start [kg/m^3]");
    dump_cmd->add_option("--w-max", grid.w_max, "moisture end [kg/m^3]");
    dump_cmd->add_option("--w-count", grid.w_count, "moisture points");
    dump_cmd->add_option("--h-min", grid.h_min, "humidity start [-]");
    dump_cmd->add_option("--h-max", grid.h_max, "humidity end [-]");
    dump_cmd->add_option("--h-count", grid.h_count, "humidity points");
    materials_cmd->require_subcommand(1);
    dump_cmd->callback([&] {
        exit_code = cmd_materials_dump(dump_which, grid,
                                       load_materials(dump_config));
    });

    auto* verify_cmd =
        app.add_subcommand("verify", "Independent verification reports (JSON)");
    verify_cmd->require_subcommand(1);
    std::string audit_config;
    auto* audit_cmd = verify_cmd->add_subcommand(
        "audit", "Sample the constitutive bounds and sign conditions");
    audit_cmd->add_option("--config", audit_config,
                          "audit material parameters from this configuration");
    audit_cmd->callback(
        [&] { exit_code = cmd_verify_audit(load_materials(audit_config)); });
    verify_cmd
        ->add_subcommand("mms",
                         "Manufactured-solution convergence orders "
                         "(space and time)")
        ->callback([&] { exit_code = cmd_verify_mms(); });
    verify_cmd
        ->add_subcommand("weakform",
                         "Variational-identity residuals on equilibrium and "
                         "refined exposed runs")
        ->callback([&] { exit_code = cmd_verify_weakform(); });

    std::string sweep_dir;
    int sweep_jobs = 1;
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "Run every .cfg configuration in a directory");
    sweep_cmd->add_option("directory", sweep_dir, "directory of .cfg files")
        ->required();
    sweep_cmd->add_option("--jobs", sweep_jobs,
                          "parallel runs (configs must use distinct output "
                          "directories)");
    sweep_cmd->callback([&] { exit_code = cmd_sweep(sweep_dir, sweep_jobs); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitSuccess : kExitConfigError;
    } catch (const config::ConfigError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitRunFailure;
    }
    return exit_code;
}
