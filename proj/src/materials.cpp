/**
 * @file materials.cpp
 * @brief Constitutive relations for moist concrete at high temperature.
 */
#include "hygrotherm/materials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hygrotherm::materials {

namespace {

// ===========================================================================
// Physical constants (not material parameters)
// ===========================================================================

constexpr double kCriticalTemperature = 647.096; // K, critical point of water
constexpr double kVaporGasConstant = 461.5;      // J/(kg K), R of water vapor
constexpr double kLiquidWaterDensity = 1000.0;   // kg/m^3

// Region-4 saturation-pressure fit coefficients (industrial steam tables).
constexpr double kN1 = 0.11670521452767e4;
constexpr double kN2 = -0.72421316703206e6;
constexpr double kN3 = -0.17073846940092e2;
constexpr double kN4 = 0.12020824702470e5;
constexpr double kN5 = -0.32325550322333e7;
constexpr double kN6 = 0.14915108613530e2;
constexpr double kN7 = -0.48232657361591e4;
constexpr double kN8 = 0.40511340542057e6;
constexpr double kN9 = -0.23855557567849;
constexpr double kN10 = 0.65017534844798e3;

// Sorption isotherm shape constants.
constexpr double kHumidityLow = 0.96;   // end of the unsaturated branch
constexpr double kHumidityHigh = 1.04;  // start of the oversaturated branch
constexpr double kOversatSlopeFactor = 0.12; // dw/dh = 0.12 * w(1.04) above
constexpr double kLowMoistureW = 0.5;   // kg/m^3, quadratic repair below this
constexpr double kVaporBlendOnset = 373.15;  // K, gas line starts to take over

// Permeability shape constants.
constexpr double kArrheniusTemperature = 2700.0; // Q/R [K]
constexpr double kPermTransitionCenter = 368.15; // K (95 C)
constexpr double kPermTransitionWidth = 1.25;    // K, logistic scale (~5 K band)

// ===========================================================================
// Validation helpers
// ===========================================================================

void require_positive(double value, const char* name) {
    if (!(std::isfinite(value) && value > 0.0)) {
        throw std::invalid_argument(std::string("MaterialParams: ") + name +
                                    " must be finite and positive");
    }
}

void require_state(double theta, double w, const char* where) {
    if (!(std::isfinite(theta) && theta > 0.0)) {
        throw std::domain_error(std::string(where) +
                                ": theta must be finite and positive");
    }
    if (!std::isfinite(w)) {
        throw std::domain_error(std::string(where) + ": w must be finite");
    }
}

// ===========================================================================
// Saturation pressure (region-4 fit + linear supercritical continuation)
// ===========================================================================

double if97_saturation_pressure(double theta) {
    const double t = theta + kN9 / (theta - kN10);
    const double a = t * t + kN1 * t + kN2;
    const double b = kN3 * t * t + kN4 * t + kN5;
    const double c = kN6 * t * t + kN7 * t + kN8;
    const double root = std::sqrt(b * b - 4.0 * a * c);
    const double x = 2.0 * c / (-b + root);
    const double x2 = x * x;
    return 1.0e6 * x2 * x2; // fit yields MPa
}

double if97_saturation_pressure_derivative(double theta) {
    const double denom = theta - kN10;
    const double t = theta + kN9 / denom;
    const double dt_dtheta = 1.0 - kN9 / (denom * denom);
    const double a = t * t + kN1 * t + kN2;
    const double b = kN3 * t * t + kN4 * t + kN5;
    const double c = kN6 * t * t + kN7 * t + kN8;
    const double da = 2.0 * t + kN1;
    const double db = 2.0 * kN3 * t + kN4;
    const double dc = 2.0 * kN6 * t + kN7;
    const double root = std::sqrt(b * b - 4.0 * a * c);
    const double droot = (b * db - 2.0 * (da * c + a * dc)) / root;
    const double d = -b + root;
    const double dd = -db + droot;
    const double x = 2.0 * c / d;
    const double dx = (2.0 * dc * d - 2.0 * c * dd) / (d * d);
    return 1.0e6 * 4.0 * x * x * x * dx * dt_dtheta;
}

struct CriticalAnchor {
    double pressure;
    double slope;
};

const CriticalAnchor& critical_anchor() {
    static const CriticalAnchor anchor{
        if97_saturation_pressure(kCriticalTemperature),
        if97_saturation_pressure_derivative(kCriticalTemperature)};
    return anchor;
}

// ===========================================================================
// Smooth shape helpers
// ===========================================================================

double smoothstep01(double x) {
    const double t = std::clamp(x, 0.0, 1.0);
    return t * t * (3.0 - 2.0 * t);
}

/**
 * C^2 ramp: 0 below x_on, y_max at and above x_plateau, linear in between.
 * Each corner is blended over a 10 K window by a quintic whose slope never
 * exceeds the interior slope s = y_max / (x_plateau - x_on - 10).
 */
double smoothed_ramp(double x, double x_on, double x_plateau, double y_max) {
    constexpr double W = 10.0; // corner blend width
    const double s = y_max / (x_plateau - x_on - W);
    const auto corner = [s](double u) { // 0..W, C^2 from flat into slope s
        return s * u * u * u * (W - 0.5 * u) / (W * W * W);
    };
    const double ux = x - x_on;
    if (ux <= 0.0) {
        return 0.0;
    }
    if (ux <= W) {
        return corner(ux);
    }
    if (x <= x_plateau - W) {
        return s * (ux - 0.5 * W);
    }
    if (x < x_plateau) {
        return y_max - corner(x_plateau - x);
    }
    return y_max;
}

// ===========================================================================
// Sorption isotherm internals
// ===========================================================================

/// Temperature exponent of the power-law isotherm; decreases from ~1.04
/// near freezing towards 0.04 at very high temperature.
double humidity_exponent(double theta) {
    const double t10 = theta - 273.15 + 10.0;
    return 1.04 - t10 * t10 / (22.3 * 35.0 * 35.0 + t10 * t10);
}

/// Weight of the ideal-gas vapor line within the unsaturated branch:
/// 0 below 373.15 K, 1 above the critical temperature.
double vapor_blend(double theta) {
    return smoothstep01((theta - kVaporBlendOnset) /
                        (kCriticalTemperature - kVaporBlendOnset));
}

/// Water mass per unit relative humidity when all pore water is vapor:
/// w = h * n * P_sat / (R_v * theta).
double gas_line_mass(const MaterialParams& mp, double theta, double psat) {
    return porosity(mp, theta) * psat / (kVaporGasConstant * theta);
}

struct BranchPoint {
    double w;     // water content on the branch [kg/m^3]
    double dw_dh; // branch slope in humidity [kg/m^3 per unit h]
};

/// Unsaturated branch w_u(h): blend of the power-law isotherm and the
/// ideal-gas vapor line, strictly increasing in h.
BranchPoint unsaturated_branch(const MaterialParams& mp, double theta,
                               double psat, double h) {
    const double m = humidity_exponent(theta);
    const double u1 = mp.water_saturation_ref / mp.cement_content;
    const double w_pow = mp.cement_content * std::pow(u1 * h, 1.0 / m);
    const double dw_pow = w_pow / (m * h);
    const double beta = vapor_blend(theta);
    const double gas = gas_line_mass(mp, theta, psat);
    return {(1.0 - beta) * w_pow + beta * gas * h,
            (1.0 - beta) * dw_pow + beta * gas};
}

/// Solves f(h).w = w_target on [lo, hi] by Newton iteration with bisection
/// safeguard; f(h).w must be strictly increasing.
template <typename F>
double invert_increasing(F&& f, double lo, double hi, double w_target) {
    if (f(lo).w - w_target >= 0.0) {
        return lo;
    }
    if (f(hi).w - w_target <= 0.0) {
        return hi;
    }
    double h = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const BranchPoint b = f(h);
        const double res = b.w - w_target;
        if (std::abs(res) <= 1.0e-15 * (std::abs(w_target) + 1.0)) {
            return h;
        }
        if (res > 0.0) {
            hi = h;
        } else {
            lo = h;
        }
        double next = h - res / b.dw_dh;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi); // Newton left the bracket: bisect
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
            break;
        }
        h = next;
    }
    return 0.5 * (lo + hi);
}

struct PhiPoint {
    double phi;     // relative humidity at (theta, w)
    double dphi_dw; // slope in water content
};

/// Inverse isotherm Phi(theta, w) for w >= kLowMoistureW: picks the humidity
/// regime from the branch masses w(0.96) and w(1.04) and inverts it.
PhiPoint phi_main(const MaterialParams& mp, double theta, double psat,
                  double w) {
    const auto unsat = [&](double h) {
        return unsaturated_branch(mp, theta, psat, h);
    };
    const BranchPoint b96 = unsat(kHumidityLow);
    if (w <= b96.w) {
        const double h = invert_increasing(unsat, 1.0e-12, kHumidityLow, w);
        return {h, 1.0 / unsat(h).dw_dh};
    }
    const BranchPoint b104 = unsat(kHumidityHigh);
    const double oversat_slope = kOversatSlopeFactor * b104.w;
    if (w >= b104.w) {
        return {kHumidityHigh + (w - b104.w) / oversat_slope,
                1.0 / oversat_slope};
    }
    // Cubic Hermite in h across the transition band, C^1 against both
    // neighbouring branches.  Branch slopes stay below ~1.1x the secant for
    // every temperature, so the cubic is strictly increasing
    // (Fritsch-Carlson condition).
    const double dh = kHumidityHigh - kHumidityLow;
    const auto hermite = [&](double h) -> BranchPoint {
        const double t = (h - kHumidityLow) / dh;
        const double h00 = (2.0 * t - 3.0) * t * t + 1.0;
        const double h10 = ((t - 2.0) * t + 1.0) * t;
        const double h01 = (3.0 - 2.0 * t) * t * t;
        const double h11 = (t - 1.0) * t * t;
        const double value = b96.w * h00 + dh * b96.dw_dh * h10 +
                             b104.w * h01 + dh * oversat_slope * h11;
        const double d00 = 6.0 * t * (t - 1.0);
        const double d10 = (3.0 * t - 4.0) * t + 1.0;
        const double d01 = 6.0 * t * (1.0 - t);
        const double d11 = (3.0 * t - 2.0) * t;
        const double slope = (b96.w * d00 + b104.w * d01) / dh +
                             b96.dw_dh * d10 + oversat_slope * d11;
        return {value, slope};
    };
    const double h = invert_increasing(hermite, kHumidityLow, kHumidityHigh, w);
    return {h, 1.0 / hermite(h).dw_dh};
}

/// Coefficients of the C^1 low-moisture repair Phi = lin*w + quad*w^2 on
/// [0, kLowMoistureW], matching value and slope of phi_main at the junction.
struct LowMoistureCoeffs {
    double lin;
    double quad;
};

LowMoistureCoeffs low_moisture_coeffs(const MaterialParams& mp, double theta,
                                      double psat) {
    const PhiPoint p = phi_main(mp, theta, psat, kLowMoistureW);
    return {2.0 * p.phi / kLowMoistureW - p.dphi_dw,
            (p.dphi_dw - p.phi / kLowMoistureW) / kLowMoistureW};
}

} // namespace

// ===========================================================================
// Public API
// ===========================================================================

void MaterialParams::validate() const {
    require_positive(rho_solid, "rho_solid");
    require_positive(heat_capacity_solid, "heat_capacity_solid");
    require_positive(heat_capacity_water, "heat_capacity_water");
    require_positive(dehydration_heat, "dehydration_heat");
    require_positive(dehydration_timescale, "dehydration_timescale");
    require_positive(dehydration_scale, "dehydration_scale");
    require_positive(conductivity_ref, "conductivity_ref");
    require_positive(theta_ref, "theta_ref");
    require_positive(permeability_ref, "permeability_ref");
    require_positive(gravity, "gravity");
    require_positive(cement_content, "cement_content");
    require_positive(water_saturation_ref, "water_saturation_ref");
    if (!std::isfinite(conductivity_slope)) {
        throw std::invalid_argument(
            "MaterialParams: conductivity_slope must be finite");
    }
    if (!(std::isfinite(porosity_ref) && porosity_ref > 0.0 &&
          porosity_ref < 1.0 / 3.0)) {
        throw std::invalid_argument(
            "MaterialParams: porosity_ref must lie in (0, 1/3) so the "
            "thermally expanded pore space stays below 1");
    }
    require_positive(delta_min, "delta_min");
    require_positive(lambda_min, "lambda_min");
    if (!(std::isfinite(delta_max) && delta_max > delta_min)) {
        throw std::invalid_argument(
            "MaterialParams: delta clamp interval is empty (delta_max must "
            "exceed delta_min)");
    }
    if (!(std::isfinite(lambda_max) && lambda_max > lambda_min)) {
        throw std::invalid_argument(
            "MaterialParams: lambda clamp interval is empty (lambda_max must "
            "exceed lambda_min)");
    }
}

void ClampStats::merge(const ClampStats& other) {
    evaluations += other.evaluations;
    delta_w_low += other.delta_w_low;
    delta_w_high += other.delta_w_high;
    delta_theta_low += other.delta_theta_low;
    delta_theta_high += other.delta_theta_high;
    lambda_low += other.lambda_low;
    lambda_high += other.lambda_high;
}

double saturation_pressure(double theta) {
    if (!(std::isfinite(theta) && theta > 0.0)) {
        throw std::domain_error(
            "saturation_pressure: theta must be finite and positive");
    }
    if (theta <= kCriticalTemperature) {
        return if97_saturation_pressure(theta);
    }
    const CriticalAnchor& c = critical_anchor();
    return c.pressure + c.slope * (theta - kCriticalTemperature);
}

double saturation_pressure_derivative(double theta) {
    if (!(std::isfinite(theta) && theta > 0.0)) {
        throw std::domain_error(
            "saturation_pressure_derivative: theta must be finite and "
            "positive");
    }
    if (theta <= kCriticalTemperature) {
        return if97_saturation_pressure_derivative(theta);
    }
    return critical_anchor().slope;
}

double sorption_pressure(const MaterialParams& mp, double theta, double w) {
    require_state(theta, w, "sorption_pressure");
    const double psat = saturation_pressure(theta);
    if (w >= kLowMoistureW) {
        return psat * phi_main(mp, theta, psat, w).phi;
    }
    const LowMoistureCoeffs lc = low_moisture_coeffs(mp, theta, psat);
    if (w >= 0.0) {
        return psat * (lc.lin + lc.quad * w) * w;
    }
    // Linear sign-preserving extension: P and w keep the same sign, so the
    // product P*w stays nonnegative for every argument.
    return psat * lc.lin * w;
}

SorptionDerivatives sorption_pressure_derivatives(const MaterialParams& mp,
                                                  double theta, double w) {
    require_state(theta, w, "sorption_pressure_derivatives");
    const double hw = 1.0e-6 * std::max(std::abs(w), 1.0);
    const double ht = 1.0e-6 * theta;
    SorptionDerivatives d;
    d.dP_dw = (sorption_pressure(mp, theta, w + hw) -
               sorption_pressure(mp, theta, w - hw)) /
              (2.0 * hw);
    d.dP_dtheta = (sorption_pressure(mp, theta + ht, w) -
                   sorption_pressure(mp, theta - ht, w)) /
                  (2.0 * ht);
    return d;
}

double moisture_at_pressure(const MaterialParams& mp, double theta,
                            double pressure) {
    require_state(theta, pressure, "moisture_at_pressure");
    double lo = 0.0, hi = 1000.0;
    if (pressure < sorption_pressure(mp, theta, lo) ||
        pressure > sorption_pressure(mp, theta, hi)) {
        throw std::domain_error(
            "moisture_at_pressure: pressure outside the invertible range");
    }
    // ~60 halvings exhaust double precision; a few extra are harmless.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (sorption_pressure(mp, theta, mid) < pressure ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double thermal_conductivity(const MaterialParams& mp, double theta, double p) {
    require_state(theta, p, "thermal_conductivity");
    const double lam_dry =
        mp.conductivity_ref *
        (1.0 + mp.conductivity_slope * (theta - mp.theta_ref));
    const double n = porosity(mp, theta);
    const double s = saturation_degree(mp, theta, p);
    const double enhancement =
        4.0 * n * s * kLiquidWaterDensity / ((1.0 - n) * mp.rho_solid);
    return lam_dry * (1.0 + enhancement);
}

double porosity(const MaterialParams& mp, double theta) {
    if (!(std::isfinite(theta) && theta > 0.0)) {
        throw std::domain_error("porosity: theta must be finite and positive");
    }
    // Pore space opens from n_ref to 3*n_ref as the matrix decomposes
    // between theta_ref and 1073.15 K.
    return mp.porosity_ref +
           smoothed_ramp(theta, mp.theta_ref, mp.theta_ref + 780.0,
                         2.0 * mp.porosity_ref);
}

double saturation_degree(const MaterialParams& mp, double theta, double p) {
    require_state(theta, p, "saturation_degree");
    (void)mp;
    return smoothstep01(p / saturation_pressure(theta));
}

double permeability(const MaterialParams& mp, double theta, double p) {
    require_state(theta, p, "permeability");
    const double h = std::clamp(p / saturation_pressure(theta), 0.0, 1.0);
    // Humidity factor: drops to 0.05 in dry pores, 1 at saturation.
    const double q = 4.0 * (1.0 - h);
    const double q2 = q * q;
    const double f_humidity = 0.05 + 0.95 / (1.0 + q2 * q2);
    // Arrhenius temperature factor, equal to 1 at theta_ref.
    const double f_arrhenius = std::exp(kArrheniusTemperature *
                                        (1.0 / mp.theta_ref - 1.0 / theta));
    // Above ~95 C microcracking raises the intrinsic permeability by up to
    // two orders of magnitude; saturating exponential in Celsius excess.
    const double tc = theta - 273.15;
    const double f_hot =
        tc > 95.0 ? std::exp((tc - 95.0) / (0.881 + 0.214 * (tc - 95.0)))
                  : 1.0;
    // Logistic switch between the humidity-controlled and hot regimes.
    const double z = (theta - kPermTransitionCenter) / kPermTransitionWidth;
    const double blend = 1.0 / (1.0 + std::exp(-z));
    const double a = mp.permeability_ref * f_arrhenius *
                     ((1.0 - blend) * f_humidity + blend * f_hot);
    return a / mp.gravity;
}

double dehydration_equilibrium(const MaterialParams& mp, double theta) {
    if (!(std::isfinite(theta) && theta > 0.0)) {
        throw std::domain_error(
            "dehydration_equilibrium: theta must be finite and positive");
    }
    return smoothed_ramp(theta, 378.15, 973.15, mp.dehydration_scale);
}

TransformedCoefficients transformed_coefficients(const MaterialParams& mp,
                                                 double theta, double w,
                                                 ClampStats* stats) {
    const double p = sorption_pressure(mp, theta, w);
    const SorptionDerivatives d = sorption_pressure_derivatives(mp, theta, w);
    const double kappa = permeability(mp, theta, p);
    const double raw_dw = kappa * d.dP_dw;
    const double raw_dtheta = kappa * d.dP_dtheta;
    const double raw_lambda = thermal_conductivity(mp, theta, p);

    TransformedCoefficients tc;
    tc.delta_w = std::clamp(raw_dw, mp.delta_min, mp.delta_max);
    tc.delta_theta = std::clamp(raw_dtheta, mp.delta_min, mp.delta_max);
    tc.lambda = std::clamp(raw_lambda, mp.lambda_min, mp.lambda_max);
    if (stats != nullptr) {
        ++stats->evaluations;
        stats->delta_w_low += raw_dw < mp.delta_min;
        stats->delta_w_high += raw_dw > mp.delta_max;
        stats->delta_theta_low += raw_dtheta < mp.delta_min;
        stats->delta_theta_high += raw_dtheta > mp.delta_max;
        stats->lambda_low += raw_lambda < mp.lambda_min;
        stats->lambda_high += raw_lambda > mp.lambda_max;
    }
    return tc;
}

} // namespace hygrotherm::materials
