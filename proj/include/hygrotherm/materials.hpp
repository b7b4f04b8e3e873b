/**
 * @file materials.hpp
 * @brief Constitutive relations for moist concrete at high temperature.
 *
 * Provides the material parameter set and the pointwise constitutive stack
 * used by the transport solver:
 *
 *   - saturation pressure of water P_sat(theta) and its derivative,
 *   - sorption relation P(theta, w) = P_sat(theta) * Phi(theta, w) linking
 *     pore water content to pore pressure,
 *   - thermal conductivity, porosity, liquid saturation degree,
 *   - pressure-driven moisture mobility kappa(theta, P),
 *   - equilibrium dehydration mass d_eq(theta),
 *   - the transformed diffusion coefficients (delta_w, delta_theta, lambda)
 *     obtained by chain-ruling P out of the moisture flux, clamped into
 *     admissible bounds with clamp accounting.
 *
 * Units are SI throughout: K, kg/m^3, Pa, W/(m K), J/(kg K), m/s, s.
 * All functions are pure; concurrent evaluation is safe. Clamp accounting
 * is written to a caller-owned ClampStats, never to shared state.
 */
#pragma once

#include <cstdint>

namespace hygrotherm::materials {

// ===========================================================================
// Parameter set
// ===========================================================================

/**
 * @brief Material constants for a cement-based wall plus coefficient clamps.
 *
 * Defaults describe a normal-strength concrete wall (density 2400 kg/m^3,
 * initial porosity 0.1, reference permeability 1e-13 m/s).
 */
struct MaterialParams {
    // --- solid and water phase ---
    double rho_solid = 2400.0;            ///< solid skeleton density [kg/m^3]
    double heat_capacity_solid = 900.0;   ///< C_S [J/(kg K)]
    double heat_capacity_water = 2080.0;  ///< C_w [J/(kg K)]

    // --- dehydration of chemically bound water ---
    double dehydration_heat = 2.5e6;      ///< h_d, latent heat of dehydration [J/kg]
    double dehydration_timescale = 10800.0; ///< tau, relaxation time [s]
    double dehydration_scale = 330.0;     ///< plateau of releasable bound water [kg/m^3]

    // --- dry thermal conductivity, linear in temperature ---
    double conductivity_ref = 1.3863;     ///< Lambda at theta_ref, dry [W/(m K)]
    double conductivity_slope = -0.0007272; ///< relative slope A [1/K]
    double theta_ref = 293.15;            ///< reference temperature [K]

    // --- pore space and transport ---
    double porosity_ref = 0.1;            ///< porosity at theta_ref [-]
    double permeability_ref = 1.0e-13;    ///< hydraulic permeability a_0 [m/s]
    double gravity = 9.81;                ///< g [m/s^2]; mobility kappa = a/g

    // --- sorption isotherm scale masses ---
    double cement_content = 250.0;        ///< anhydrous cement mass c [kg/m^3]
    double water_saturation_ref = 100.0;  ///< free water at saturation, theta_ref [kg/m^3]

    // --- clamp bounds for the transformed coefficients ---
    double delta_min = 1.0e-16;           ///< lower clamp for delta_w, delta_theta [m^2/s]
    double delta_max = 1.0e-4;            ///< upper clamp for delta_w, delta_theta [m^2/s]
    double lambda_min = 0.05;             ///< lower clamp for lambda [W/(m K)]
    double lambda_max = 10.0;             ///< upper clamp for lambda [W/(m K)]

    /// Throws std::invalid_argument naming the offending field if any
    /// constant is non-positive where positivity is required or the clamp
    /// intervals are empty.
    void validate() const;
};

// ===========================================================================
// Clamp accounting
// ===========================================================================

/// Counts of coefficient evaluations that hit a clamp bound. Accumulated by
/// transformed_coefficients() into a caller-owned instance.
struct ClampStats {
    std::int64_t evaluations = 0;
    std::int64_t delta_w_low = 0;
    std::int64_t delta_w_high = 0;
    std::int64_t delta_theta_low = 0;
    std::int64_t delta_theta_high = 0;
    std::int64_t lambda_low = 0;
    std::int64_t lambda_high = 0;

    std::int64_t total_clamped() const {
        return delta_w_low + delta_w_high + delta_theta_low +
               delta_theta_high + lambda_low + lambda_high;
    }
    /// Fraction of individual coefficient evaluations (3 per call) that
    /// were clamped; 0 when nothing has been evaluated.
    double clamped_fraction() const {
        return evaluations > 0
                   ? static_cast<double>(total_clamped()) /
                         static_cast<double>(3 * evaluations)
                   : 0.0;
    }
    void merge(const ClampStats& other);
};

// ===========================================================================
// Water properties
// ===========================================================================

/**
 * @brief Saturation pressure of water [Pa].
 *
 * Industrial-standard region-4 saturation equation (quartic-in-reduced-
 * temperature fit, valid 273.15 K to the critical point 647.096 K),
 * continued linearly and C^1 above the critical temperature so the
 * function stays strictly increasing on [273.15 K, infinity).
 *
 * @throws std::domain_error if theta is not finite and positive.
 */
double saturation_pressure(double theta);

/// Analytic derivative dP_sat/dtheta [Pa/K] of saturation_pressure().
double saturation_pressure_derivative(double theta);

// ===========================================================================
// Sorption relation
// ===========================================================================

/**
 * @brief Pore pressure P(theta, w) = P_sat(theta) * Phi(theta, w) [Pa].
 *
 * Phi is a relative-humidity isotherm with three humidity regimes:
 *
 *   h <= 0.96        unsaturated branch: temperature-blended combination of
 *                    the classical power-law isotherm
 *                    w = c * ((w_sat/c) * h)^(1/m(theta)) and the ideal-gas
 *                    vapor line w = h * n(theta) P_sat(theta) / (R_v theta);
 *                    the gas line takes over smoothly between 373.15 K and
 *                    the critical temperature, where free water can no
 *                    longer be adsorbed liquid.
 *   0.96 < h < 1.04  monotone cubic Hermite blend in h (C^1 junction).
 *   h >= 1.04        oversaturated branch, linear in h with slope
 *                    0.12 * w(1.04) per unit humidity.
 *
 * Below a small water content w_lin = 0.5 kg/m^3 the inverse isotherm is
 * replaced by a C^1 quadratic through the origin, which keeps dP/dw bounded
 * (the raw power law has unbounded slope at w -> 0 for m < 1).  For w < 0
 * the relation is extended linearly with the origin slope, so that
 * P(theta, w) * w >= 0 holds for every w.
 *
 * @throws std::domain_error if theta is not finite/positive or w not finite.
 */
double sorption_pressure(const MaterialParams& mp, double theta, double w);

/// Partial derivatives of sorption_pressure.
struct SorptionDerivatives {
    double dP_dtheta = 0.0; ///< [Pa/K]
    double dP_dw = 0.0;     ///< [Pa m^3/kg]
};

/**
 * @brief Central-difference partial derivatives of the sorption pressure.
 *
 * Steps are 1e-6 relative (floored at 1e-6 kg/m^3 in w), small enough that
 * the result matches any reasonable finite-difference oracle of the smooth
 * branches to ~1e-9 relative.  Exactly at a regime knot the value is the
 * symmetric average of the one-sided derivatives, which coincide up to the
 * C^1 junction error.
 */
SorptionDerivatives sorption_pressure_derivatives(const MaterialParams& mp,
                                                  double theta, double w);

/**
 * @brief Inverse isotherm: the moisture content w with
 *        sorption_pressure(theta, w) = pressure.
 *
 * Bisection on w in [0, 1000] (the isotherm is strictly increasing in w),
 * run to the last representable midpoint, so the round trip through
 * sorption_pressure reproduces the target to rounding.  A pressure outside
 * the bracketed range throws std::domain_error.
 */
double moisture_at_pressure(const MaterialParams& mp, double theta,
                            double pressure);

// ===========================================================================
// Thermal and pore-structure properties
// ===========================================================================

/**
 * @brief Thermal conductivity Lambda(theta, p) [W/(m K)] (unclamped).
 *
 * Dry part linear in temperature, Lambda_dry = Lambda_ref * (1 + A*(theta -
 * theta_ref)), multiplied by a moisture enhancement
 * 1 + 4 n S rho_liq / ((1 - n) rho_solid) that vanishes with the liquid
 * saturation degree S(theta, p).
 */
double thermal_conductivity(const MaterialParams& mp, double theta, double p);

/**
 * @brief Porosity n(theta) [-]: equals porosity_ref at theta_ref, rises
 * C^2-smoothly and monotonically to 3x the reference value at 1073.15 K
 * (thermal decomposition opens pore space), constant above.
 */
double porosity(const MaterialParams& mp, double theta);

/**
 * @brief Liquid saturation degree S(theta, p) in [0, 1].
 *
 * Smoothstep of the relative humidity p / P_sat(theta): 0 with no vapor
 * pressure, 1 at and above saturation, nondecreasing in p.
 */
double saturation_degree(const MaterialParams& mp, double theta, double p);

/**
 * @brief Pressure-flux mobility kappa(theta, p) [s]; moisture mass flux is
 * kappa * grad P.
 *
 * kappa = a(theta, p) / g with a = a_0 * f_humidity * f_arrhenius in the
 * humidity-controlled regime below ~95 C and a = a_0 * f_arrhenius * f_hot
 * above, where f_hot saturates two orders of magnitude above 1 (structural
 * microcracking).  The two regimes are joined by a logistic blend of width
 * ~5 K centred at 368.15 K.
 */
double permeability(const MaterialParams& mp, double theta, double p);

/**
 * @brief Equilibrium dehydrated mass d_eq(theta) [kg/m^3].
 *
 * Zero at and below the onset 378.15 K, then a C^2-smoothed linear ramp
 * reaching the full scale mass at 973.15 K, constant above.  The smoothing
 * at each knot spans 10 K and never steepens the ramp, so
 * |d_eq'| <= dehydration_scale / 585 K everywhere.
 */
double dehydration_equilibrium(const MaterialParams& mp, double theta);

// ===========================================================================
// Transformed diffusion coefficients
// ===========================================================================

/// Effective coefficients of the (theta, w) system after eliminating P.
struct TransformedCoefficients {
    double delta_w = 0.0;     ///< kappa * dP/dw, clamped [m^2/s]
    double delta_theta = 0.0; ///< kappa * dP/dtheta, clamped [m^2/s]
    double lambda = 0.0;      ///< Lambda(theta, P), clamped [W/(m K)]
};

/**
 * @brief Evaluates (delta_w, delta_theta, lambda) at a state point.
 *
 * Raw products are clamped into [delta_min, delta_max] respectively
 * [lambda_min, lambda_max]; each clamp event is counted in @p stats when a
 * non-null pointer is passed.
 */
TransformedCoefficients transformed_coefficients(const MaterialParams& mp,
                                                 double theta, double w,
                                                 ClampStats* stats = nullptr);

} // namespace hygrotherm::materials
