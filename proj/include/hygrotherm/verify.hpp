/**
 * @file verify.hpp
 * @brief Independent checks of the solver and constitutive stack: a
 *        reference ODE integrator for the bound-water kinetics, a weak-form
 *        residual evaluator, manufactured-solution convergence studies, and
 *        a property audit of the constitutive assumptions.
 *
 * Everything here is deliberately built from first principles (classical RK4,
 * trapezoidal quadrature, central differences) rather than from the solver's
 * own discretisation, so agreement between the two is evidence, not
 * tautology.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hygrotherm/dehydration.hpp"
#include "hygrotherm/fire.hpp"
#include "hygrotherm/materials.hpp"
#include "hygrotherm/solver.hpp"

namespace hygrotherm::verify {

// ---------------------------------------------------------------------------
// Bound-water kinetics oracle
// ---------------------------------------------------------------------------

/**
 * @brief Classical fourth-order one-step integration of
 *        d' = -(d - d_eq(theta(t))) / tau from d(0) = 0.
 *
 * @param theta_of_t smooth temperature history [K]
 * @param t_end      integration horizon [s]
 * @param n_substeps number of RK4 steps; fewer than 10^4 → std::invalid_argument
 */
double dehydration_oracle(const materials::MaterialParams& mp,
                          const std::function<double(double)>& theta_of_t,
                          double t_end, int n_substeps);

// ---------------------------------------------------------------------------
// Weak-form residual
// ---------------------------------------------------------------------------

/// Spatial or temporal test-function factor with its exact derivative.
struct TestShape {
    std::string label;
    std::function<double(double)> value;
    std::function<double(double)> slope;
};

/// Residual bookkeeping for one (phi, psi) test pair.  Pairs are built with
/// exactly one nonzero component, so each entry attributes its residual to a
/// single equation.
struct WeakFormEntry {
    std::string equation;   ///< "moisture" or "energy"
    std::string space;      ///< spatial factor label
    std::string time;       ///< temporal factor label
    double residual = 0.0;  ///< |LHS - RHS| of the variational identity
    double scale = 0.0;     ///< sum of |elementary quadrature contributions|
    double boundary = 0.0;  ///< contribution of the surface-exchange groups

    double relative() const { return residual / (scale > 0.0 ? scale : 1.0); }
};

/**
 * @brief Evaluates the variational identity satisfied by a weak solution
 *        against a stored dense time series, by trapezoidal quadrature in
 *        space and time with analytically differentiated test functions.
 *
 * The series must contain every computed level (uniform spacing); a sparse
 * series throws std::domain_error.  Test functions vanish at the final time
 * by construction of the supplied factors.
 */
std::vector<WeakFormEntry> weak_form_residual(
    const materials::MaterialParams& mp, const fire::BoundaryParams& bp,
    fire::Scenario scenario, const solver::Mesh1D& mesh,
    const solver::SnapshotSeries& series,
    const std::vector<TestShape>& space_factors,
    const std::vector<TestShape>& time_factors);

/// The standard catalog: spatial factors {1, cos(k pi x / l)} for k <= 3.
std::vector<TestShape> standard_space_factors(double length);

/// Temporal factors {(1 - t/T), (1 - t/T)^2}; both vanish at t = T and have
/// polynomial derivatives integrated exactly by the trapezoidal rule, which
/// keeps the equilibrium residual at rounding level.
std::vector<TestShape> standard_time_factors(double duration);

/// Convenience overload using the standard catalog.
std::vector<WeakFormEntry> weak_form_residual(
    const materials::MaterialParams& mp, const fire::BoundaryParams& bp,
    fire::Scenario scenario, const solver::Mesh1D& mesh,
    const solver::SnapshotSeries& series);

// ---------------------------------------------------------------------------
// Manufactured-solution convergence
// ---------------------------------------------------------------------------

/// Closed-form target fields with the source terms that make them satisfy
/// the transformed equations; boundary data are zero-flux by construction.
struct MmsCase {
    std::function<double(double, double)> theta;        ///< theta*(x, t)
    std::function<double(double, double)> w;            ///< w*(x, t)
    std::function<double(double, double)> source_w;     ///< moisture forcing
    std::function<double(double, double)> source_theta; ///< energy forcing
    materials::MaterialParams materials;
    bool constant_coefficients = true;
    materials::TransformedCoefficients fixed{1e-13, 1e-13, 1.3863};
    bool upwind = false;
};

/// Discrete L2 errors against the targets at the final time.
struct MmsErrors {
    double theta = 0.0;
    double w = 0.0;
};

/// Runs the solver on [0, duration] with the case's sources injected and no
/// surface exchange; initial data are the targets at t = 0.
MmsErrors mms_run(const MmsCase& mms, int elements, double dt, double duration);

/// One refinement level of a convergence study.
struct ConvergenceLevel {
    double h = 0.0;
    double dt = 0.0;
    MmsErrors errors;
};

/// Observed-order report; slopes are least-squares fits of log(error)
/// against log(h) or log(dt).  Non-monotone decay flags the report instead
/// of throwing.
struct ConvergenceReport {
    std::vector<ConvergenceLevel> levels;
    double order_theta = 0.0;
    double order_w = 0.0;
    bool monotone = false;
};

/// Cosine-mode targets theta* = 293.15 + 10 cos(pi x / l) e^-t and
/// w* = 71.01 + 5 cos(pi x / l) e^-t with hand-derived sources (see the
/// implementation for the derivation), in the requested coefficient mode.
MmsCase standard_mms_case(double length, bool constant_coefficients);

/// Spatial study: centered differences, frozen coefficients, a time step
/// small enough that the temporal error is negligible at every level.
ConvergenceReport mms_spatial_study(const MmsCase& mms,
                                    const std::vector<int>& element_counts,
                                    double dt, double duration);

/// Temporal study: fixed mesh, halved time steps, errors measured against a
/// reference run of the same mesh at dt_ref = smallest dt / 32 (measures the
/// time-stepping order in isolation, including the full nonlinear path).
ConvergenceReport mms_temporal_study(const MmsCase& mms, int elements,
                                     const std::vector<double>& dts,
                                     double duration);

// ---------------------------------------------------------------------------
// Constitutive-assumption audit
// ---------------------------------------------------------------------------

/// One audited property with its verdict and, when violated, a witness point.
struct AuditCheck {
    std::string name;
    bool passed = false;
    double observed = 0.0; ///< extremal sampled value of the audited quantity
    double bound = 0.0;    ///< documented admissible bound
    std::string witness;   ///< "(theta, w)" of the worst sample when failing
};

struct AuditReport {
    int samples = 0;
    std::uint64_t seed = 0;
    double lipschitz_estimate = 0.0; ///< empirical Lipschitz constant of P
    std::vector<AuditCheck> checks;

    bool passed() const;
};

/// Sampling controls; the isotherm hook exists so tests can plant a broken
/// pressure law and confirm the audit reports it.
struct AuditOptions {
    int n_samples = 20000;              ///< at least 10^4
    std::uint64_t seed = 0x5eed5eedull; ///< deterministic sampling
    double theta_min = 273.15, theta_max = 1473.15;
    double w_min = 0.0, w_max = 150.0;
    double w_signed_min = -50.0; ///< lower limit for the signed-moisture check
    std::function<double(const materials::MaterialParams&, double, double)>
        isotherm; ///< empty → the production pressure law
};

/**
 * @brief Samples the admissible box and audits the constitutive bounds:
 *        positivity of the scalar parameters, the diffusivity/conductivity
 *        boxes with their derivative bounds, the bound-water equilibrium
 *        bounds, the sign condition P(theta, w) * w >= 0 on signed moisture,
 *        positivity of the furnace forcing, and consistency of the isotherm
 *        derivatives with central differences at smooth points.
 *
 * n_samples below 10^4 → std::invalid_argument.
 */
AuditReport assumption_audit(const materials::MaterialParams& mp,
                             const AuditOptions& options = {});

} // namespace hygrotherm::verify
