/**
 * @file config.hpp
 * @brief Simulation configuration: INI-style parsing, validation, canonical
 *        serialisation, and hashing.
 *
 * The format is line-based: `[section]` headers, `key = value` pairs, `#` or
 * `;` comments, blank lines ignored.  Every key is optional — an empty file
 * yields the default ISO exposure of a 120 mm wall — but unknown sections,
 * unknown keys, duplicates, and malformed values are rejected with an error
 * naming the offender.  serialize() emits every field with full double
 * precision in a fixed order, so parse(serialize(cfg)) reproduces cfg
 * exactly and the serialised text is a stable input for hashing.
 */
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hygrotherm/fire.hpp"
#include "hygrotherm/materials.hpp"
#include "hygrotherm/solver.hpp"

namespace hygrotherm::config {

/// Schema or I/O violation while reading a configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// What a tripped run-time monitor should do.
enum class MonitorPolicy {
    Warn,   ///< print warnings, keep exit status 0
    Strict, ///< physicality violations fail the run (exit status 1)
};

/// Fully resolved run description.
struct SimulationConfig {
    solver::Mesh1D mesh;             ///< [geometry] length, [mesh] elements
    double dt = 0.5;                 ///< [time] dt [s]
    double duration = 1800.0;        ///< [time] duration [s]

    fire::Scenario scenario = fire::Scenario::Iso834; ///< [fire] scenario
    fire::BoundaryParams boundary;   ///< [fire] exchange parameters

    materials::MaterialParams materials; ///< [material] overrides

    double initial_theta = 293.15;   ///< [initial] theta [K]
    double initial_w = 71.01;        ///< [initial] w [kg/m^3]
    std::string initial_profile;     ///< [initial] profile CSV path ("" = uniform)

    std::string output_directory = "out";   ///< [output] directory
    std::vector<double> snapshot_times;     ///< [output] snapshots
    std::vector<double> probe_positions;    ///< [output] probes
    bool dense = false;                     ///< [output] dense

    bool upwind = true;                     ///< [solver] upwind
    MonitorPolicy monitor = MonitorPolicy::Warn; ///< [solver] monitor

    /// Throws ConfigError on any invariant violation (duplicated here from
    /// the component validators so the offending key is named).
    void validate() const;
};

/// Parses configuration text; fills defaults, validates.  The default
/// snapshot schedule is {900 s, 1800 s} clipped to the duration ({duration}
/// when the intersection is empty); the default probes sit at the exposed
/// face and 10 mm behind it.
SimulationConfig parse_text(const std::string& text);

/// parse_text over the contents of a file; missing file → ConfigError.
SimulationConfig parse_file(const std::string& path);

/// Canonical full-precision rendering; parse_text(serialize(c)) == c.
std::string serialize(const SimulationConfig& cfg);

/// 64-bit FNV-1a over a byte string (used for the manifest's config hash).
std::uint64_t fnv1a(const std::string& data);

} // namespace hygrotherm::config
