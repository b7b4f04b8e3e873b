#include "hygrotherm/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace hygrotherm::config {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

/// Strict double parse: the whole token must be consumed and finite.
double parse_double(const std::string& key, const std::string& value,
                    const char* domain) {
    const std::string token = trim(value);
    if (!token.empty()) {
        char* end = nullptr;
        const double parsed = std::strtod(token.c_str(), &end);
        if (end == token.c_str() + token.size() && std::isfinite(parsed)) {
            return parsed;
        }
    }
    throw ConfigError(key + ": expected " + domain + ", got \"" + value + "\"");
}

double parse_positive(const std::string& key, const std::string& value,
                      const char* domain) {
    const double parsed = parse_double(key, value, domain);
    if (!(parsed > 0.0)) {
        throw ConfigError(key + ": expected " + domain + ", got \"" + value + "\"");
    }
    return parsed;
}

long parse_integer(const std::string& key, const std::string& value,
                   const char* domain) {
    const double parsed = parse_double(key, value, domain);
    if (std::abs(parsed) > 1e9) {
        throw ConfigError(key + ": expected " + domain + ", got \"" + value + "\"");
    }
    const long rounded = std::lround(parsed);
    if (parsed != static_cast<double>(rounded)) {
        throw ConfigError(key + ": expected " + domain + ", got \"" + value + "\"");
    }
    return rounded;
}

bool parse_bool(const std::string& key, const std::string& value) {
    const std::string token = trim(value);
    if (token == "true") return true;
    if (token == "false") return false;
    throw ConfigError(key + ": expected true or false, got \"" + value + "\"");
}

std::vector<double> parse_list(const std::string& key, const std::string& value,
                               const char* domain) {
    std::vector<double> items;
    std::string token;
    std::istringstream stream(value);
    while (std::getline(stream, token, ',')) {
        items.push_back(parse_double(key, token, domain));
    }
    if (items.empty()) {
        throw ConfigError(key + ": expected a comma-separated list of " +
                          domain + ", got \"" + value + "\"");
    }
    return items;
}

std::string format_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

std::string format_list(const std::vector<double>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i != 0) out += ",";
        out += format_double(items[i]);
    }
    return out;
}

/// Raw `section.key -> value` pairs in file order; duplicates rejected.
std::map<std::string, std::string> tokenize(const std::string& text) {
    std::map<std::string, std::string> entries;
    std::istringstream stream(text);
    std::string line;
    std::string section;
    int line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError("line " + std::to_string(line_number) +
                                  ": malformed section header \"" + line + "\"");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t equals = line.find('=');
        if (equals == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_number) +
                              ": expected key = value, got \"" + line + "\"");
        }
        const std::string key = trim(line.substr(0, equals));
        const std::string value = trim(line.substr(equals + 1));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(line_number) +
                              ": empty key before '='");
        }
        if (section.empty()) {
            throw ConfigError("line " + std::to_string(line_number) + ": key \"" +
                              key + "\" appears before any [section] header");
        }
        const std::string full = section + "." + key;
        if (!entries.emplace(full, value).second) {
            throw ConfigError("[" + section + "] " + key +
                              ": key given more than once");
        }
    }
    return entries;
}

} // namespace

void SimulationConfig::validate() const {
    if (!(mesh.length > 0.0)) {
        throw ConfigError("[geometry] length: expected a positive thickness in metres");
    }
    if (mesh.elements < 2) {
        throw ConfigError("[mesh] elements: expected an integer of at least 2");
    }
    if (!(dt > 0.0)) {
        throw ConfigError("[time] dt: expected a positive step in seconds");
    }
    if (!(duration >= 0.0)) {
        throw ConfigError("[time] duration: expected a non-negative duration in seconds");
    }
    if (!(initial_theta > 0.0)) {
        throw ConfigError("[initial] theta: expected a positive temperature in kelvin");
    }
    if (!(initial_w >= 0.0)) {
        throw ConfigError("[initial] w: expected a non-negative moisture content");
    }
    for (const double t : snapshot_times) {
        if (!(t >= 0.0) || t > duration) {
            throw ConfigError("[output] snapshots: expected times within [0, duration], got " +
                              format_double(t));
        }
    }
    for (const double x : probe_positions) {
        if (!(x >= 0.0) || x > mesh.length) {
            throw ConfigError("[output] probes: expected positions within [0, length], got " +
                              format_double(x));
        }
    }
    try {
        boundary.validate();
        materials.validate();
    } catch (const std::exception& err) {
        throw ConfigError(err.what());
    }
}

SimulationConfig parse_text(const std::string& text) {
    SimulationConfig cfg;
    auto entries = tokenize(text);

    auto take = [&entries](const char* key) -> const std::string* {
        const auto it = entries.find(key);
        if (it == entries.end()) return nullptr;
        return &it->second;
    };
    auto consume = [&entries](const char* key) { entries.erase(key); };

    // Scenario first so the convection default can depend on it.
    if (const auto* v = take("fire.scenario")) {
        try {
            cfg.scenario = fire::scenario_from_string(trim(*v));
        } catch (const std::exception&) {
            throw ConfigError("[fire] scenario: expected one of ISO, HC, PM, constant, got \"" +
                              *v + "\"");
        }
        consume("fire.scenario");
    }
    cfg.boundary.convection_coeff = fire::default_convection(cfg.scenario);

    struct Field {
        const char* key;
        std::function<void(const std::string&)> assign;
    };
    // Compact binder helpers: each field row names its key once and states
    // the expected domain used in error messages.
    auto bind_dbl = [](const char* key, double& slot, const char* domain) {
        return Field{key, [&slot, key, domain](const std::string& value) {
                         slot = parse_double(key, value, domain);
                     }};
    };
    auto bind_pos = [](const char* key, double& slot, const char* domain) {
        return Field{key, [&slot, key, domain](const std::string& value) {
                         slot = parse_positive(key, value, domain);
                     }};
    };
    auto bind_bool = [](const char* key, bool& slot) {
        return Field{key, [&slot, key](const std::string& value) {
                         slot = parse_bool(key, value);
                     }};
    };

    bool snapshots_given = false;
    bool probes_given = false;

    const Field fields[] = {
        bind_pos("geometry.length", cfg.mesh.length, "a positive thickness in metres"),
        {"mesh.elements",
         [&cfg](const std::string& value) {
             const long n = parse_integer("mesh.elements", value,
                                          "an integer of at least 2");
             if (n < 2) {
                 throw ConfigError("mesh.elements: expected an integer of at least 2, got \"" +
                                   value + "\"");
             }
             cfg.mesh.elements = static_cast<int>(n);
         }},
        bind_pos("time.dt", cfg.dt, "a positive step in seconds"),
        {"time.duration",
         [&cfg](const std::string& value) {
             cfg.duration = parse_double("time.duration", value,
                                         "a non-negative duration in seconds");
             if (!(cfg.duration >= 0.0)) {
                 throw ConfigError("time.duration: expected a non-negative duration in seconds, got \"" +
                                   value + "\"");
             }
         }},
        bind_pos("fire.convection_coeff", cfg.boundary.convection_coeff,
                 "a positive film coefficient in W/(m^2 K)"),
        bind_dbl("fire.emissivity", cfg.boundary.emissivity,
                 "a surface emissivity in (0, 1]"),
        bind_pos("fire.stefan_boltzmann", cfg.boundary.stefan_boltzmann,
                 "a positive radiation constant"),
        bind_pos("fire.mass_exchange_coeff", cfg.boundary.mass_exchange_coeff,
                 "a positive surface mass-exchange coefficient"),
        bind_pos("fire.ambient_vapor_pressure", cfg.boundary.ambient_vapor_pressure,
                 "a positive vapour pressure in Pa"),
        bind_pos("material.rho_solid", cfg.materials.rho_solid,
                 "a positive density in kg/m^3"),
        bind_pos("material.heat_capacity_solid", cfg.materials.heat_capacity_solid,
                 "a positive specific heat in J/(kg K)"),
        bind_pos("material.heat_capacity_water", cfg.materials.heat_capacity_water,
                 "a positive specific heat in J/(kg K)"),
        bind_pos("material.dehydration_heat", cfg.materials.dehydration_heat,
                 "a positive latent heat in J/kg"),
        bind_pos("material.dehydration_timescale", cfg.materials.dehydration_timescale,
                 "a positive relaxation time in seconds"),
        bind_pos("material.dehydration_scale", cfg.materials.dehydration_scale,
                 "a positive bound-water capacity in kg/m^3"),
        bind_pos("material.conductivity_ref", cfg.materials.conductivity_ref,
                 "a positive conductivity in W/(m K)"),
        bind_dbl("material.conductivity_slope", cfg.materials.conductivity_slope,
                 "a conductivity-temperature slope in W/(m K^2)"),
        bind_pos("material.theta_ref", cfg.materials.theta_ref,
                 "a positive reference temperature in kelvin"),
        bind_dbl("material.porosity_ref", cfg.materials.porosity_ref,
                 "a reference porosity in (0, 1)"),
        bind_pos("material.permeability_ref", cfg.materials.permeability_ref,
                 "a positive hydraulic permeability in m/s"),
        bind_pos("material.gravity", cfg.materials.gravity,
                 "a positive gravitational acceleration in m/s^2"),
        bind_pos("material.cement_content", cfg.materials.cement_content,
                 "a positive cement content in kg/m^3"),
        bind_pos("material.water_saturation_ref", cfg.materials.water_saturation_ref,
                 "a positive saturation moisture content in kg/m^3"),
        bind_pos("material.delta_min", cfg.materials.delta_min,
                 "a positive lower moisture-diffusivity clamp"),
        bind_pos("material.delta_max", cfg.materials.delta_max,
                 "a positive upper moisture-diffusivity clamp"),
        bind_pos("material.lambda_min", cfg.materials.lambda_min,
                 "a positive lower conductivity clamp"),
        bind_pos("material.lambda_max", cfg.materials.lambda_max,
                 "a positive upper conductivity clamp"),
        bind_pos("initial.theta", cfg.initial_theta,
                 "a positive temperature in kelvin"),
        bind_dbl("initial.w", cfg.initial_w,
                 "a non-negative moisture content in kg/m^3"),
        {"initial.profile",
         [&cfg](const std::string& value) { cfg.initial_profile = trim(value); }},
        {"output.directory",
         [&cfg](const std::string& value) { cfg.output_directory = trim(value); }},
        {"output.snapshots",
         [&cfg, &snapshots_given](const std::string& value) {
             cfg.snapshot_times = parse_list("output.snapshots", value,
                                             "times in seconds");
             snapshots_given = true;
         }},
        {"output.probes",
         [&cfg, &probes_given](const std::string& value) {
             cfg.probe_positions = parse_list("output.probes", value,
                                              "positions in metres");
             probes_given = true;
         }},
        bind_bool("output.dense", cfg.dense),
        bind_bool("solver.upwind", cfg.upwind),
        {"solver.monitor",
         [&cfg](const std::string& value) {
             const std::string token = trim(value);
             if (token == "warn") {
                 cfg.monitor = MonitorPolicy::Warn;
             } else if (token == "strict") {
                 cfg.monitor = MonitorPolicy::Strict;
             } else {
                 throw ConfigError("solver.monitor: expected warn or strict, got \"" +
                                   value + "\"");
             }
         }},
    };

    for (const Field& field : fields) {
        if (const auto* value = take(field.key)) {
            field.assign(*value);
            consume(field.key);
        }
    }

    if (!entries.empty()) {
        const auto& offender = *entries.begin();
        const std::size_t dot = offender.first.find('.');
        throw ConfigError("unknown key \"" + offender.first.substr(dot + 1) +
                          "\" in section [" + offender.first.substr(0, dot) +
                          "]; see the documented schema for recognised keys");
    }

    if (!snapshots_given) {
        for (const double t : {900.0, 1800.0}) {
            if (t <= cfg.duration) cfg.snapshot_times.push_back(t);
        }
        if (cfg.snapshot_times.empty()) cfg.snapshot_times.push_back(cfg.duration);
    }
    if (!probes_given) {
        cfg.probe_positions.push_back(cfg.mesh.length);
        if (cfg.mesh.length > 0.01) {
            cfg.probe_positions.push_back(cfg.mesh.length - 0.01);
        }
    }

    cfg.validate();
    return cfg;
}

SimulationConfig parse_file(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw ConfigError("cannot open configuration file \"" + path + "\"");
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return parse_text(buffer.str());
}

std::string serialize(const SimulationConfig& cfg) {
    std::ostringstream out;
    out << "[geometry]\n"
        << "length = " << format_double(cfg.mesh.length) << "\n"
        << "\n[mesh]\n"
        << "elements = " << cfg.mesh.elements << "\n"
        << "\n[time]\n"
        << "dt = " << format_double(cfg.dt) << "\n"
        << "duration = " << format_double(cfg.duration) << "\n"
        << "\n[fire]\n"
        << "scenario = " << fire::to_string(cfg.scenario) << "\n"
        << "convection_coeff = " << format_double(cfg.boundary.convection_coeff) << "\n"
        << "emissivity = " << format_double(cfg.boundary.emissivity) << "\n"
        << "stefan_boltzmann = " << format_double(cfg.boundary.stefan_boltzmann) << "\n"
        << "mass_exchange_coeff = " << format_double(cfg.boundary.mass_exchange_coeff) << "\n"
        << "ambient_vapor_pressure = " << format_double(cfg.boundary.ambient_vapor_pressure) << "\n"
        << "\n[material]\n"
        << "rho_solid = " << format_double(cfg.materials.rho_solid) << "\n"
        << "heat_capacity_solid = " << format_double(cfg.materials.heat_capacity_solid) << "\n"
        << "heat_capacity_water = " << format_double(cfg.materials.heat_capacity_water) << "\n"
        << "dehydration_heat = " << format_double(cfg.materials.dehydration_heat) << "\n"
        << "dehydration_timescale = " << format_double(cfg.materials.dehydration_timescale) << "\n"
        << "dehydration_scale = " << format_double(cfg.materials.dehydration_scale) << "\n"
        << "conductivity_ref = " << format_double(cfg.materials.conductivity_ref) << "\n"
        << "conductivity_slope = " << format_double(cfg.materials.conductivity_slope) << "\n"
        << "theta_ref = " << format_double(cfg.materials.theta_ref) << "\n"
        << "porosity_ref = " << format_double(cfg.materials.porosity_ref) << "\n"
        << "permeability_ref = " << format_double(cfg.materials.permeability_ref) << "\n"
        << "gravity = " << format_double(cfg.materials.gravity) << "\n"
        << "cement_content = " << format_double(cfg.materials.cement_content) << "\n"
        << "water_saturation_ref = " << format_double(cfg.materials.water_saturation_ref) << "\n"
        << "delta_min = " << format_double(cfg.materials.delta_min) << "\n"
        << "delta_max = " << format_double(cfg.materials.delta_max) << "\n"
        << "lambda_min = " << format_double(cfg.materials.lambda_min) << "\n"
        << "lambda_max = " << format_double(cfg.materials.lambda_max) << "\n"
        << "\n[initial]\n"
        << "theta = " << format_double(cfg.initial_theta) << "\n"
        << "w = " << format_double(cfg.initial_w) << "\n";
    if (!cfg.initial_profile.empty()) {
        out << "profile = " << cfg.initial_profile << "\n";
    }
    out << "\n[output]\n"
        << "directory = " << cfg.output_directory << "\n"
        << "snapshots = " << format_list(cfg.snapshot_times) << "\n"
        << "probes = " << format_list(cfg.probe_positions) << "\n"
        << "dense = " << (cfg.dense ? "true" : "false") << "\n"
        << "\n[solver]\n"
        << "upwind = " << (cfg.upwind ? "true" : "false") << "\n"
        << "monitor = " << (cfg.monitor == MonitorPolicy::Strict ? "strict" : "warn")
        << "\n";
    return out.str();
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t hash = 14695981039346656037ull;
    for (const char c : data) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ull;
    }
    return hash;
}

} // namespace hygrotherm::config
