/**
 * @file dehydration.hpp
 * @brief First-order relaxation of chemically bound water release.
 *
 * The released-water density d [kg/m^3] relaxes towards its
 * temperature-dependent equilibrium with a fixed time constant:
 *
 *     d' = -(d - d_eq(theta)) / tau.
 *
 * Because the equation is linear in d, a step holding theta frozen has the
 * exact solution used by dehydration_step, and a piecewise-constant
 * temperature history has the exact compounded solution used by
 * dehydration_exact.  Both preserve 0 <= d <= dehydration_scale whenever the
 * input does.
 */
#pragma once

#include <vector>

#include <Eigen/Core>

#include "hygrotherm/materials.hpp"

namespace hygrotherm::dehydration {

/**
 * @brief Advance d over one step of length dt [s] with theta held constant.
 *
 * Exact integrator: d_new = m*d_old + (1-m)*d_eq(theta), m = exp(-dt/tau).
 * Throws std::domain_error for negative or non-finite dt.
 */
double dehydration_step(const materials::MaterialParams& mp, double d_old,
                        double theta, double dt);

/// Vectorised form of dehydration_step over nodal fields (in place).
void dehydration_step_inplace(const materials::MaterialParams& mp,
                              Eigen::VectorXd& d,
                              const Eigen::Ref<const Eigen::VectorXd>& theta,
                              double dt);

/// One segment of a piecewise-constant temperature history: theta holds from
/// t_start until the next segment begins (or until the evaluation time).
struct TemperatureSegment {
    double t_start; ///< [s]
    double theta;   ///< [K]
};

/**
 * @brief Exact solution d(t) for a piecewise-constant temperature history.
 *
 * The history must start at t_start = 0 and be strictly increasing in time;
 * violations throw std::invalid_argument.  d0 is the state at t = 0.
 */
double dehydration_exact(const materials::MaterialParams& mp,
                         const std::vector<TemperatureSegment>& history,
                         double t, double d0 = 0.0);

} // namespace hygrotherm::dehydration
