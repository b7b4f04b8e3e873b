/**
 * @file dehydration.cpp
 * @brief Exact integrators for the bound-water release relaxation.
 */
#include "hygrotherm/dehydration.hpp"

#include <cmath>
#include <stdexcept>

namespace hygrotherm::dehydration {

double dehydration_step(const materials::MaterialParams& mp, double d_old,
                        double theta, double dt) {
    if (!(dt >= 0.0) || !std::isfinite(dt)) {
        throw std::domain_error("dehydration_step: dt must be finite and >= 0");
    }
    const double memory = std::exp(-dt / mp.dehydration_timescale);
    const double target = materials::dehydration_equilibrium(mp, theta);
    return memory * d_old + (1.0 - memory) * target;
}

void dehydration_step_inplace(const materials::MaterialParams& mp,
                              Eigen::VectorXd& d,
                              const Eigen::Ref<const Eigen::VectorXd>& theta,
                              double dt) {
    if (d.size() != theta.size()) {
        throw std::invalid_argument(
            "dehydration_step_inplace: field size mismatch");
    }
    if (!(dt >= 0.0) || !std::isfinite(dt)) {
        throw std::domain_error(
            "dehydration_step_inplace: dt must be finite and >= 0");
    }
    const double memory = std::exp(-dt / mp.dehydration_timescale);
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        const double target = materials::dehydration_equilibrium(mp, theta[i]);
        d[i] = memory * d[i] + (1.0 - memory) * target;
    }
}

double dehydration_exact(const materials::MaterialParams& mp,
                         const std::vector<TemperatureSegment>& history,
                         double t, double d0) {
    if (history.empty()) {
        throw std::invalid_argument("dehydration_exact: empty history");
    }
    if (history.front().t_start != 0.0) {
        throw std::invalid_argument(
            "dehydration_exact: history must start at t = 0");
    }
    for (std::size_t i = 1; i < history.size(); ++i) {
        if (!(history[i].t_start > history[i - 1].t_start)) {
            throw std::invalid_argument(
                "dehydration_exact: history times must be strictly increasing");
        }
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::domain_error("dehydration_exact: t must be finite and >= 0");
    }

    double d = d0;
    for (std::size_t i = 0; i < history.size(); ++i) {
        const double seg_start = history[i].t_start;
        if (seg_start >= t) break;
        const double seg_end =
            (i + 1 < history.size()) ? std::min(history[i + 1].t_start, t) : t;
        d = dehydration_step(mp, d, history[i].theta, seg_end - seg_start);
    }
    return d;
}

} // namespace hygrotherm::dehydration
