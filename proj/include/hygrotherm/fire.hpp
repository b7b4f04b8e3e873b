/**
 * @file fire.hpp
 * @brief Gas-phase temperature histories for the exposed face and the
 *        associated boundary fluxes.
 *
 * Three standard design-fire curves are provided (cellulosic, hydrocarbon,
 * ventilation-parameterised natural fire with a cooling branch) plus a
 * constant-ambient history used by equilibrium tests.  All temperatures are
 * absolute [K], all times are measured in seconds from ignition.
 *
 * The boundary flux helpers deliberately share one code path for the
 * radiative term, so that surface and gas contributions cancel bitwise when
 * the surface sits at the gas temperature.
 */
#pragma once

#include <string>

namespace hygrotherm::fire {

/// Selects which gas-temperature history drives the exposed face.
enum class Scenario {
    Iso834,          ///< cellulosic standard curve, logarithmic growth
    Hydrocarbon,     ///< fast hydrocarbon pool-fire curve, bounded at 1080 K rise
    Parametric,      ///< natural fire with heating and linear cooling branches
    ConstantAmbient, ///< constant 293.15 K; exercises equilibrium behaviour
};

/// Parses a scenario keyword ("ISO", "HC", "PM", "constant"; the long forms
/// "iso834", "hydrocarbon", "parametric" are accepted as synonyms); throws
/// std::invalid_argument on anything else.
Scenario scenario_from_string(const std::string& name);

/// Inverse of scenario_from_string.
std::string to_string(Scenario scenario);

/// Default film coefficient [W/m^2/K] prescribed per scenario.
double default_convection(Scenario scenario);

/**
 * @brief Gas temperature [K] at time t [s] for the given scenario.
 *
 * Negative times throw std::domain_error.  The parametric curve peaks at the
 * end of its fuel-controlled heating phase (20 min) and then cools linearly
 * until it is floored at ambient.
 */
double gas_temperature(Scenario scenario, double t);

/// Radiative/convective exchange parameters of the exposed face.
struct BoundaryParams {
    double convection_coeff = 25.0;        ///< film coefficient [W/m^2/K]
    double emissivity = 0.7;               ///< resultant emissivity [-]
    double stefan_boltzmann = 5.67e-8;     ///< radiation constant [W/m^2/K^4]
    double mass_exchange_coeff = 0.019;    ///< vapor exchange [kg/(m^2 s Pa)] scale
    double ambient_vapor_pressure = 1754.2;///< far-field vapor pressure [Pa]

    /// Throws std::invalid_argument when a coefficient is non-physical.
    void validate() const;
};

/**
 * @brief Linearised radiation coefficient e*sigma*|T|^3 [W/m^2/K].
 *
 * Exposed so that an implicit surface row can be assembled with exactly the
 * same floating-point operations as thermal_load / heat_flux_out use.
 */
double radiative_linear_coeff(const BoundaryParams& bp, double theta);

/**
 * @brief Combined convective+radiative load (alpha + e*sigma*|T|^3)*T
 *        evaluated at the gas temperature [W/m^2].
 */
double thermal_load(const BoundaryParams& bp, double theta_gas);

/**
 * @brief Net heat flux [W/m^2] leaving the wall through the exposed face.
 *
 * Positive when the surface is hotter than the gas.  Evaluates to exactly
 * zero (bitwise) when theta_surface == theta_gas.
 */
double heat_flux_out(const BoundaryParams& bp, double theta_surface,
                     double theta_gas);

/**
 * @brief Net moisture flux [kg/(m^2 s)] leaving the wall through the exposed
 *        face: mass_exchange_coeff * (p_surface - ambient_vapor_pressure).
 */
double moisture_flux_out(const BoundaryParams& bp, double p_surface);

} // namespace hygrotherm::fire
