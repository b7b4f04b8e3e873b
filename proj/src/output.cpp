#include "hygrotherm/output.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hygrotherm::output {

namespace {

constexpr char kSnapshotHeader[] = "x_m,theta_K,P_Pa,w_kgm3,d_kgm3";

/// Nine significant digits, shortest form ('%g' drops trailing zeros).
std::string value(double v) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.9g", v);
    return buffer;
}

std::string hex64(std::uint64_t v) {
    char buffer[24];
    std::snprintf(buffer, sizeof(buffer), "%016llx",
                  static_cast<unsigned long long>(v));
    return buffer;
}

} // namespace

std::string time_label(double t) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.15g", t);
    return buffer;
}

std::string snapshot_filename(double t) {
    return "snapshot_" + time_label(t) + "s.csv";
}

std::string snapshot_csv(const materials::MaterialParams& mp,
                         const solver::Mesh1D& mesh,
                         const Eigen::VectorXd& theta,
                         const Eigen::VectorXd& w,
                         const Eigen::VectorXd& d) {
    const int n = mesh.nodes();
    if (theta.size() != n || w.size() != n || d.size() != n) {
        throw std::invalid_argument("snapshot_csv: field size does not match the mesh");
    }
    std::string out(kSnapshotHeader);
    out += '\n';
    const double h = mesh.spacing();
    for (int i = 0; i < n; ++i) {
        const double x = (i == n - 1) ? mesh.length : i * h;
        out += value(x);
        out += ',';
        out += value(theta[i]);
        out += ',';
        out += value(materials::sorption_pressure(mp, theta[i], w[i]));
        out += ',';
        out += value(w[i]);
        out += ',';
        out += value(d[i]);
        out += '\n';
    }
    return out;
}

std::string probes_csv(const std::vector<double>& probe_positions,
                       const solver::ProbeSeries& probes) {
    const std::size_t n_probes = probe_positions.size();
    if (probes.theta.size() != n_probes || probes.w.size() != n_probes ||
        probes.d.size() != n_probes || probes.pressure.size() != n_probes) {
        throw std::invalid_argument("probes_csv: probe count mismatch");
    }
    std::string out = "t_s";
    for (const double x : probe_positions) {
        const std::string tag = "_x" + time_label(x);
        out += ",theta_K" + tag + ",P_Pa" + tag + ",w_kgm3" + tag + ",d_kgm3" + tag;
    }
    out += '\n';
    for (std::size_t row = 0; row < probes.times.size(); ++row) {
        out += value(probes.times[row]);
        for (std::size_t p = 0; p < n_probes; ++p) {
            out += ',';
            out += value(probes.theta[p][row]);
            out += ',';
            out += value(probes.pressure[p][row]);
            out += ',';
            out += value(probes.w[p][row]);
            out += ',';
            out += value(probes.d[p][row]);
        }
        out += '\n';
    }
    return out;
}

std::string manifest_json(const config::SimulationConfig& cfg,
                          const solver::RunSummary& summary,
                          const std::vector<std::string>& files) {
    nlohmann::ordered_json doc;
    doc["config_hash"] = hex64(config::fnv1a(config::serialize(cfg)));
    doc["scenario"] = fire::to_string(cfg.scenario);
    doc["mesh"] = {{"length_m", cfg.mesh.length}, {"elements", cfg.mesh.elements}};
    doc["time"] = {{"dt_s", cfg.dt},
                   {"duration_s", cfg.duration},
                   {"steps", summary.steps}};
    doc["monitors"] = {
        {"min_w_kgm3", summary.min_w},
        {"min_d_kgm3", summary.min_d},
        {"max_theta_K", summary.max_theta},
        {"clamp_evaluations", summary.clamps.evaluations},
        {"clamp_events", summary.clamps.total_clamped()},
        {"clamp_fraction", summary.clamps.clamped_fraction()},
        {"clamp_warning", summary.clamp_warning},
    };
    doc["norm_bounds"] = {
        {"moisture_residual_sup", summary.max_moisture_residual},
        {"energy_residual_sup", summary.max_energy_residual},
    };
    doc["files"] = files;
    return doc.dump(2) + "\n";
}

solver::State profile_from_csv(const std::string& text,
                               const solver::Mesh1D& mesh) {
    std::istringstream stream(text);
    std::string line;
    if (!std::getline(stream, line)) {
        throw std::runtime_error("profile: empty file");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSnapshotHeader) {
        throw std::runtime_error(std::string("profile: expected header \"") +
                                 kSnapshotHeader + "\", got \"" + line + "\"");
    }
    std::vector<double> xs, thetas, ws, ds;
    int line_number = 1;
    while (std::getline(stream, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double x = 0.0, theta = 0.0, pressure = 0.0, w = 0.0, d = 0.0;
        char trailing = '\0';
        const int got = std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf%c",
                                    &x, &theta, &pressure, &w, &d, &trailing);
        if (got != 5) {
            throw std::runtime_error("profile: malformed row at line " +
                                     std::to_string(line_number));
        }
        if (!xs.empty() && !(x > xs.back())) {
            throw std::runtime_error("profile: positions must increase (line " +
                                     std::to_string(line_number) + ")");
        }
        xs.push_back(x);
        thetas.push_back(theta);
        ws.push_back(w);
        ds.push_back(d);
    }
    if (xs.size() < 2) {
        throw std::runtime_error("profile: need at least two rows to interpolate");
    }

    auto interpolate = [&xs](const std::vector<double>& ys, double x) {
        if (x <= xs.front()) return ys.front();
        if (x >= xs.back()) return ys.back();
        const auto upper = std::upper_bound(xs.begin(), xs.end(), x);
        const std::size_t j = static_cast<std::size_t>(upper - xs.begin());
        const double frac = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
        return ys[j - 1] + frac * (ys[j] - ys[j - 1]);
    };

    solver::State state;
    state.time = 0.0;
    const int n = mesh.nodes();
    state.theta.resize(n);
    state.w.resize(n);
    state.d.resize(n);
    const double h = mesh.spacing();
    for (int i = 0; i < n; ++i) {
        const double x = (i == n - 1) ? mesh.length : i * h;
        state.theta[i] = interpolate(thetas, x);
        state.w[i] = interpolate(ws, x);
        state.d[i] = interpolate(ds, x);
    }
    return state;
}

solver::RunRequest run_request(const config::SimulationConfig& cfg) {
    solver::RunRequest request;
    request.materials = cfg.materials;
    request.boundary = cfg.boundary;
    request.scenario = cfg.scenario;
    request.mesh = cfg.mesh;
    request.options.dt = cfg.dt;
    request.options.upwind_advection = cfg.upwind;
    request.duration = cfg.duration;
    request.snapshot_times = cfg.snapshot_times;
    request.probe_positions = cfg.probe_positions;
    request.dense = cfg.dense;
    if (cfg.initial_profile.empty()) {
        request.initial =
            solver::initial_state(cfg.mesh, cfg.initial_theta, cfg.initial_w);
    } else {
        std::ifstream stream(cfg.initial_profile, std::ios::binary);
        if (!stream) {
            throw config::ConfigError("[initial] profile: cannot open \"" +
                                      cfg.initial_profile + "\"");
        }
        std::ostringstream text;
        text << stream.rdbuf();
        try {
            request.initial = profile_from_csv(text.str(), cfg.mesh);
        } catch (const std::exception& err) {
            throw config::ConfigError("[initial] profile \"" +
                                      cfg.initial_profile +
                                      "\": " + err.what());
        }
    }
    return request;
}

std::vector<std::string> write_run(const config::SimulationConfig& cfg,
                                   const solver::RunResult& result) {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.output_directory);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory \"" +
                                 cfg.output_directory + "\": " + ec.message());
    }

    auto emit = [&dir](const std::string& name, const std::string& body) {
        const fs::path path = dir / name;
        std::ofstream stream(path, std::ios::binary | std::ios::trunc);
        stream << body;
        if (!stream) {
            throw std::runtime_error("cannot write \"" + path.string() + "\"");
        }
    };

    std::vector<std::string> files;
    for (std::size_t k = 0; k < result.series.times.size(); ++k) {
        const std::string name = snapshot_filename(result.series.times[k]);
        emit(name, snapshot_csv(cfg.materials, cfg.mesh, result.series.theta[k],
                                result.series.w[k], result.series.d[k]));
        files.push_back(name);
    }
    emit("probes.csv", probes_csv(cfg.probe_positions, result.probes));
    files.push_back("probes.csv");
    emit("manifest.json", manifest_json(cfg, result.summary, files));
    files.push_back("manifest.json");
    return files;
}

} // namespace hygrotherm::output
