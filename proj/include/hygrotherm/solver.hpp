/**
 * @file solver.hpp
 * @brief Semi-implicit finite-volume stepper for the coupled
 *        moisture/temperature system on a one-dimensional wall section.
 *
 * The wall occupies [0, length] with the exposed (fired) face at x = length
 * and an insulated, impermeable face at x = 0.  Fields live on a uniform
 * node grid; control volumes are the usual half/full cells of a lumped
 * linear finite-element discretisation.
 *
 * Each step advances the state in three staggered stages with the nonlinear
 * transport coefficients frozen at the previous time level:
 *
 *   1. released bound water d: exact per-node relaxation step;
 *   2. water content w: implicit diffusion with the thermally driven vapor
 *      flux of the old temperature field as a source, and the surface
 *      exchange linearised in w around the old state;
 *   3. temperature theta: implicit conduction with lumped capacity of the
 *      fresh water field, sign-upwinded advective transport by the moisture
 *      flux, the dehydration heat sink, and the linearised
 *      radiative/convective surface exchange.
 *
 * Both linear solves are strictly diagonally dominant tridiagonal systems
 * (the advective term is assembled only on interior rows and upwinded by the
 * sign of the local flux), solved by the Thomas algorithm.
 */
#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "hygrotherm/dehydration.hpp"
#include "hygrotherm/fire.hpp"
#include "hygrotherm/materials.hpp"
#include "hygrotherm/tridiagonal.hpp"

namespace hygrotherm::solver {

/// Uniform one-dimensional node grid on [0, length].
struct Mesh1D {
    double length = 0.12; ///< wall thickness [m]
    int elements = 240;   ///< number of cells; nodes = elements + 1

    int nodes() const { return elements + 1; }
    double spacing() const { return length / elements; }

    /// Node coordinates, 0 to length inclusive.
    Eigen::VectorXd node_positions() const;
    /// Lumped control-volume widths: h/2 at the two faces, h inside.
    Eigen::VectorXd node_masses() const;
    /// Throws std::invalid_argument unless length > 0 and elements >= 2.
    void validate() const;
};

/// Discrete fields at one time level.
struct State {
    double time = 0.0;     ///< [s]
    Eigen::VectorXd theta; ///< temperature [K]
    Eigen::VectorXd w;     ///< free water content [kg/m^3]
    Eigen::VectorXd d;     ///< released bound water [kg/m^3]
};

/// Uniform initial condition with no released bound water.
State initial_state(const Mesh1D& mesh, double theta0, double w0);

/// Switches controlling the discrete operators (defaults are the production
/// scheme; the alternatives exist for verification studies).
struct SolverOptions {
    double dt = 0.5;              ///< time step [s]
    bool upwind_advection = true; ///< false: centered advective differences
    bool constant_coefficients = false; ///< freeze transport coefficients
    /// Coefficient values used when constant_coefficients is set.
    materials::TransformedCoefficients fixed{1e-13, 1e-13, 1.3863};
    /// Drop all surface exchange (both faces zero-flux); used with
    /// manufactured sources.
    bool insulated = false;
    /// Optional manufactured volumetric sources s(x, t): water [kg/m^3/s]
    /// and heat [W/m^3], evaluated at the new time level.
    std::function<double(double, double)> source_w;
    std::function<double(double, double)> source_theta;

    void validate() const;
};

/// Per-step monitor record.
struct StepReport {
    double time = 0.0;            ///< time after the step [s]
    double min_w = 0.0;           ///< field extrema after the step
    double min_d = 0.0;
    double max_theta = 0.0;
    double surface_theta = 0.0;   ///< exposed-face values after the step
    double surface_w = 0.0;
    double surface_pressure = 0.0;
    double moisture_flux_out = 0.0; ///< linearised exchange flux [kg/m^2/s]
    double heat_flux_out = 0.0;     ///< surface heat flux [W/m^2]
    double moisture_residual = 0.0; ///< ||Ax-b||_inf of the two solves
    double energy_residual = 0.0;
    materials::ClampStats clamps;   ///< coefficient clamp counters this step
};

/**
 * @brief Advances the state by one step of options.dt.
 *
 * The gas temperature is evaluated at the new time level.  Throws on
 * inconsistent field sizes or invalid options.
 */
StepReport step(const materials::MaterialParams& mp,
                const fire::BoundaryParams& bp, fire::Scenario scenario,
                const Mesh1D& mesh, const SolverOptions& options, State& state);

/// Stored time levels of a run (the requested snapshots, or every level in
/// dense mode; always includes the initial condition).
struct SnapshotSeries {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> theta;
    std::vector<Eigen::VectorXd> w;
    std::vector<Eigen::VectorXd> d;
};

/// Time series sampled at fixed probe positions (one inner vector per probe,
/// indexed like probe_positions).
struct ProbeSeries {
    std::vector<double> times;
    std::vector<std::vector<double>> theta;
    std::vector<std::vector<double>> w;
    std::vector<std::vector<double>> d;
    std::vector<std::vector<double>> pressure;
};

/// Aggregate monitors over a run.
struct RunSummary {
    int steps = 0;
    double min_w = 0.0;   ///< minimum over every step of the run
    double min_d = 0.0;
    double max_theta = 0.0;
    double max_moisture_residual = 0.0;
    double max_energy_residual = 0.0;
    materials::ClampStats clamps;
    /// True when the clamp fraction exceeded 0.1% of evaluations.
    bool clamp_warning = false;
};

/// Full description of a simulation run.
struct RunRequest {
    materials::MaterialParams materials;
    fire::BoundaryParams boundary;
    fire::Scenario scenario = fire::Scenario::Iso834;
    Mesh1D mesh;
    SolverOptions options;
    State initial;               ///< must match mesh.nodes()
    double duration = 1800.0;    ///< [s], counted from initial.time = 0
    std::vector<double> snapshot_times; ///< stored levels; within [0, duration]
    std::vector<double> probe_positions;///< x locations sampled every step
    bool dense = false;          ///< store every time level in the series
};

struct RunResult {
    SnapshotSeries series;
    ProbeSeries probes;
    RunSummary summary;
    State final_state;
};

/**
 * @brief Runs the stepper from the initial condition to the duration.
 *
 * Snapshot times are matched to the nearest step index; requesting a time
 * outside [0, duration] throws std::invalid_argument.  Probe values are
 * linearly interpolated between the two bracketing nodes.
 */
RunResult run(const RunRequest& request);

/// Derived pore pressure field for a stored level.
Eigen::VectorXd pressure_field(const materials::MaterialParams& mp,
                               const Eigen::Ref<const Eigen::VectorXd>& theta,
                               const Eigen::Ref<const Eigen::VectorXd>& w);

} // namespace hygrotherm::solver
