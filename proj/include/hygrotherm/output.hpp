/**
 * @file output.hpp
 * @brief Run artifacts: snapshot/probe CSV rendering, the manifest JSON, and
 *        profile re-import.
 *
 * All renderers return plain strings assembled with fixed formats ('%.9g'
 * values, '.' decimal separator, LF line endings, no timestamps), so two runs
 * of the same configuration on the same build produce byte-identical files.
 * The file writer is a thin wrapper that dumps those strings to disk.
 */
#pragma once

#include <string>
#include <vector>

#include "hygrotherm/config.hpp"
#include "hygrotherm/solver.hpp"

namespace hygrotherm::output {

/// Compact time label used in snapshot filenames: "900" for 900.0 s,
/// "12.5" for 12.5 s.
std::string time_label(double t);

/// "snapshot_<label>s.csv" for the given snapshot time.
std::string snapshot_filename(double t);

/// One snapshot as CSV: header `x_m,theta_K,P_Pa,w_kgm3,d_kgm3`, one row per
/// node from the unexposed face (x = 0) to the exposed face, vapour pressure
/// derived from the stored fields.
std::string snapshot_csv(const materials::MaterialParams& mp,
                         const solver::Mesh1D& mesh,
                         const Eigen::VectorXd& theta,
                         const Eigen::VectorXd& w,
                         const Eigen::VectorXd& d);

/// Probe history as CSV: a `t_s` column followed by one column group
/// (theta/P/w/d, suffixed with the probe position) per probe.
std::string probes_csv(const std::vector<double>& probe_positions,
                       const solver::ProbeSeries& probes);

/// Run manifest JSON: configuration hash, scenario and discretisation echo,
/// extremal-value monitors, residual norm bounds, and the emitted file list.
std::string manifest_json(const config::SimulationConfig& cfg,
                          const solver::RunSummary& summary,
                          const std::vector<std::string>& files);

/// Parses snapshot-format CSV text back into an initial state (the pressure
/// column is ignored; it is derived).  Positions must be strictly increasing;
/// values are interpolated linearly onto the mesh nodes and held constant
/// beyond the tabulated range.  Malformed text → std::runtime_error.
solver::State profile_from_csv(const std::string& text,
                               const solver::Mesh1D& mesh);

/// Builds the solver request for a configuration: discretisation, scenario,
/// schedules, solver switches, and the initial state — uniform fields, or the
/// configured profile CSV interpolated onto the mesh.  An unreadable or
/// malformed profile throws config::ConfigError naming the path.
solver::RunRequest run_request(const config::SimulationConfig& cfg);

/// Writes every artifact of a completed run (snapshots, probes.csv,
/// manifest.json) into cfg.output_directory, creating it if needed.
/// Returns the emitted filenames in manifest order.
std::vector<std::string> write_run(const config::SimulationConfig& cfg,
                                   const solver::RunResult& result);

} // namespace hygrotherm::output
