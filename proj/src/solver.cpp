/**
 * @file solver.cpp
 * @brief Semi-implicit staggered stepping of the coupled moisture/temperature
 *        system with lumped finite volumes.
 */
#include "hygrotherm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hygrotherm::solver {

// ---------------------------------------------------------------------------
// Mesh
// ---------------------------------------------------------------------------

void Mesh1D::validate() const {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument("Mesh1D: length must be positive");
    }
    if (elements < 2) {
        throw std::invalid_argument("Mesh1D: need at least 2 elements");
    }
}

Eigen::VectorXd Mesh1D::node_positions() const {
    validate();
    const double h = spacing();
    Eigen::VectorXd x(nodes());
    for (int i = 0; i < nodes(); ++i) {
        x[i] = h * i;
    }
    x[elements] = length; // exact endpoint regardless of rounding in h*i
    return x;
}

Eigen::VectorXd Mesh1D::node_masses() const {
    validate();
    const double h = spacing();
    Eigen::VectorXd m = Eigen::VectorXd::Constant(nodes(), h);
    m[0] = 0.5 * h;
    m[elements] = 0.5 * h;
    return m;
}

State initial_state(const Mesh1D& mesh, double theta0, double w0) {
    mesh.validate();
    if (!(theta0 > 0.0) || !std::isfinite(theta0)) {
        throw std::invalid_argument("initial_state: theta0 must be positive");
    }
    if (!std::isfinite(w0) || w0 < 0.0) {
        throw std::invalid_argument("initial_state: w0 must be non-negative");
    }
    State s;
    s.time = 0.0;
    s.theta = Eigen::VectorXd::Constant(mesh.nodes(), theta0);
    s.w = Eigen::VectorXd::Constant(mesh.nodes(), w0);
    s.d = Eigen::VectorXd::Zero(mesh.nodes());
    return s;
}

void SolverOptions::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("SolverOptions: dt must be positive");
    }
    if (constant_coefficients) {
        if (!(fixed.delta_w > 0.0) || !(fixed.delta_theta >= 0.0) ||
            !(fixed.lambda > 0.0)) {
            throw std::invalid_argument(
                "SolverOptions: frozen coefficients must be positive");
        }
    }
}

Eigen::VectorXd pressure_field(const materials::MaterialParams& mp,
                               const Eigen::Ref<const Eigen::VectorXd>& theta,
                               const Eigen::Ref<const Eigen::VectorXd>& w) {
    if (theta.size() != w.size()) {
        throw std::invalid_argument("pressure_field: field size mismatch");
    }
    Eigen::VectorXd p(theta.size());
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        p[i] = materials::sorption_pressure(mp, theta[i], w[i]);
    }
    return p;
}

// ---------------------------------------------------------------------------
// One time step
// ---------------------------------------------------------------------------

StepReport step(const materials::MaterialParams& mp,
                const fire::BoundaryParams& bp, fire::Scenario scenario,
                const Mesh1D& mesh, const SolverOptions& options,
                State& state) {
    mesh.validate();
    options.validate();
    const int n = mesh.nodes();
    if (state.theta.size() != n || state.w.size() != n || state.d.size() != n) {
        throw std::invalid_argument("step: state does not match the mesh");
    }

    const double h = mesh.spacing();
    const double dt = options.dt;
    const double t_new = state.time + dt;
    const Eigen::VectorXd mass = mesh.node_masses();
    const Eigen::VectorXd x = mesh.node_positions();
    const int last = n - 1;

    StepReport report;
    report.time = t_new;

    // -- transport coefficients frozen at the old level ---------------------
    Eigen::VectorXd delta_w(n), delta_theta(n), lambda(n);
    if (options.constant_coefficients) {
        delta_w.setConstant(options.fixed.delta_w);
        delta_theta.setConstant(options.fixed.delta_theta);
        lambda.setConstant(options.fixed.lambda);
    } else {
        for (int i = 0; i < n; ++i) {
            const auto tc = materials::transformed_coefficients(
                mp, state.theta[i], state.w[i], &report.clamps);
            delta_w[i] = tc.delta_w;
            delta_theta[i] = tc.delta_theta;
            lambda[i] = tc.lambda;
        }
    }

    // Surface exchange linearisation data from the old level.
    double p_surface_old = 0.0;
    double dpdw_surface = 0.0;
    double theta_gas = 0.0;
    if (!options.insulated) {
        p_surface_old =
            materials::sorption_pressure(mp, state.theta[last], state.w[last]);
        dpdw_surface = materials::sorption_pressure_derivatives(
                           mp, state.theta[last], state.w[last])
                           .dP_dw;
        theta_gas = fire::gas_temperature(scenario, t_new);
    }

    // -- stage 1: bound-water release (exact relaxation) --------------------
    // On cooling the relaxation runs backwards (water re-binds chemically),
    // which consumes free water.  The re-binding is starved when the node is
    // dry: one step may re-bind at most a quarter of the locally available
    // moisture, so the moisture equation's right-hand side stays positive.
    Eigen::VectorXd d_new(n);
    for (int i = 0; i < n; ++i) {
        double dn = dehydration::dehydration_step(mp, state.d[i],
                                                  state.theta[i], dt);
        if (dn < state.d[i]) {
            dn = std::max(dn, state.d[i] - 0.25 * std::max(state.w[i], 0.0));
        }
        d_new[i] = dn;
    }

    // -- stage 2: implicit moisture solve -----------------------------------
    // Face coefficients between nodes i and i+1.  The main diffusion uses the
    // arithmetic mean; the thermally driven flux takes the coefficient of the
    // hotter node (the one it drains), so the flux shuts down together with
    // the donor's moisture, mirroring the continuum behaviour at drying
    // fronts.
    Eigen::VectorXd face_dw(n - 1), face_dtheta(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
        face_dw[i] = 0.5 * (delta_w[i] + delta_w[i + 1]);
        const bool right_hotter = state.theta[i + 1] > state.theta[i];
        double dth = right_hotter ? delta_theta[i + 1] : delta_theta[i];
        // Explicit-flux limiter: one face may drain at most a quarter of the
        // donor node's moisture within the step (the re-binding stage above
        // may take another quarter, leaving the right-hand side positive).
        // Together with the M-matrix structure of the implicit part this
        // keeps w_new >= 0 by construction; the limiter is inactive wherever
        // the continuum solution is resolved, because there the coefficient
        // already shuts down as the donor dries.
        const double grad = std::abs(state.theta[i + 1] - state.theta[i]) / h;
        if (dth * grad > 0.0) {
            const int donor = right_hotter ? i + 1 : i;
            const double budget =
                0.25 * mass[donor] * std::max(state.w[donor], 0.0) / dt;
            dth = std::min(dth, budget / grad);
        }
        face_dtheta[i] = dth;
    }

    linalg::TridiagonalSystem moisture;
    moisture.lower = Eigen::VectorXd::Zero(n - 1);
    moisture.upper = Eigen::VectorXd::Zero(n - 1);
    moisture.diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd rhs_w(n);

    for (int i = 0; i < n; ++i) {
        double diag = mass[i] / dt;
        double rhs = mass[i] / dt * state.w[i] +
                     mass[i] * (d_new[i] - state.d[i]) / dt;
        if (i > 0) {
            diag += face_dw[i - 1] / h;
            moisture.lower[i - 1] -= face_dw[i - 1] / h;
            rhs -= face_dtheta[i - 1] * (state.theta[i] - state.theta[i - 1]) / h;
        }
        if (i < last) {
            diag += face_dw[i] / h;
            moisture.upper[i] -= face_dw[i] / h;
            rhs -= face_dtheta[i] * (state.theta[i] - state.theta[i + 1]) / h;
        }
        if (options.source_w) {
            rhs += mass[i] * options.source_w(x[i], t_new);
        }
        moisture.diag[i] = diag;
        rhs_w[i] = rhs;
    }
    if (!options.insulated) {
        // Robin exchange linearised around the old surface state:
        // flux_out = beta*(P_old - P_inf) + beta*dP/dw*(w_new - w_old).
        moisture.diag[last] += bp.mass_exchange_coeff * dpdw_surface;
        rhs_w[last] += -fire::moisture_flux_out(bp, p_surface_old) +
                       bp.mass_exchange_coeff * dpdw_surface * state.w[last];
    }

    const Eigen::VectorXd w_new = linalg::tridiagonal_solve(moisture, rhs_w);
    report.moisture_residual =
        (linalg::tridiagonal_multiply(moisture, w_new) - rhs_w)
            .lpNorm<Eigen::Infinity>();

    // -- stage 3: implicit energy solve -------------------------------------
    linalg::TridiagonalSystem energy;
    energy.lower = Eigen::VectorXd::Zero(n - 1);
    energy.upper = Eigen::VectorXd::Zero(n - 1);
    energy.diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd rhs_t(n);

    const double rho_cap = mp.rho_solid * mp.heat_capacity_solid;
    for (int i = 0; i < n; ++i) {
        const double capacity = mp.heat_capacity_water * w_new[i] + rho_cap;
        if (!(capacity > 0.0)) {
            throw std::runtime_error("step: thermal capacity collapsed");
        }
        double diag = mass[i] * capacity / dt;
        double rhs = mass[i] * capacity / dt * state.theta[i] -
                     mass[i] * (mp.heat_capacity_water * state.theta[i] +
                                mp.dehydration_heat) *
                         (d_new[i] - state.d[i]) / dt;
        if (i > 0) {
            const double lam_face = 0.5 * (lambda[i - 1] + lambda[i]) / h;
            diag += lam_face;
            energy.lower[i - 1] -= lam_face;
        }
        if (i < last) {
            const double lam_face = 0.5 * (lambda[i] + lambda[i + 1]) / h;
            diag += lam_face;
            energy.upper[i] -= lam_face;
        }
        // Advective transport by the moisture flux, interior rows only; the
        // half cells at the faces are dominated by their boundary terms.
        if (i > 0 && i < last) {
            const double grad_w = (w_new[i + 1] - w_new[i - 1]) / (2.0 * h);
            const double grad_t =
                (state.theta[i + 1] - state.theta[i - 1]) / (2.0 * h);
            const double vel = mp.heat_capacity_water *
                               (delta_w[i] * grad_w + delta_theta[i] * grad_t);
            const double a = mass[i] * vel / h;
            if (options.upwind_advection) {
                if (vel >= 0.0) {
                    diag += a;
                    energy.upper[i] -= a;
                } else {
                    diag -= a;
                    energy.lower[i - 1] += a;
                }
            } else {
                energy.upper[i] -= 0.5 * a;
                energy.lower[i - 1] += 0.5 * a;
            }
        }
        if (options.source_theta) {
            rhs += mass[i] * options.source_theta(x[i], t_new);
        }
        energy.diag[i] = diag;
        rhs_t[i] = rhs;
    }

    double mass_flux = 0.0;
    if (!options.insulated) {
        // Radiative/convective exchange, linearised with the old surface
        // temperature in the |T|^3 factor.
        energy.diag[last] += bp.convection_coeff +
                             fire::radiative_linear_coeff(bp, state.theta[last]);
        rhs_t[last] += fire::thermal_load(bp, theta_gas);

        // Enthalpy carried by the surface moisture exchange.  The flux is the
        // same linearised expression the moisture stage just used, so it is
        // small (the actual exchanged mass) rather than the raw pressure
        // imbalance.  Outflow multiplies the unknown (stabilising); inflow is
        // treated explicitly to keep the matrix an M-matrix.
        const double p_lin =
            p_surface_old + dpdw_surface * (w_new[last] - state.w[last]);
        mass_flux = fire::moisture_flux_out(bp, p_lin);
        if (mass_flux >= 0.0) {
            energy.diag[last] += mp.heat_capacity_water * mass_flux;
        } else {
            rhs_t[last] -=
                mp.heat_capacity_water * mass_flux * state.theta[last];
        }
    }

    const Eigen::VectorXd theta_new = linalg::tridiagonal_solve(energy, rhs_t);
    report.energy_residual =
        (linalg::tridiagonal_multiply(energy, theta_new) - rhs_t)
            .lpNorm<Eigen::Infinity>();

    // -- monitors and commit -------------------------------------------------
    report.min_w = w_new.minCoeff();
    report.min_d = d_new.minCoeff();
    report.max_theta = theta_new.maxCoeff();
    report.surface_theta = theta_new[last];
    report.surface_w = w_new[last];
    report.surface_pressure =
        options.constant_coefficients
            ? 0.0
            : materials::sorption_pressure(mp, theta_new[last], w_new[last]);
    report.moisture_flux_out = mass_flux;
    report.heat_flux_out =
        options.insulated ? 0.0
                          : fire::heat_flux_out(bp, theta_new[last], theta_gas);

    state.time = t_new;
    state.w = w_new;
    state.theta = theta_new;
    state.d = std::move(d_new);
    return report;
}

// ---------------------------------------------------------------------------
// Run driver
// ---------------------------------------------------------------------------

namespace {

// Linear interpolation of a nodal field at position xq; positions within
// rounding distance of a node return that nodal value exactly.
double sample_field(const Eigen::VectorXd& field, const Mesh1D& mesh,
                    double xq) {
    const double h = mesh.spacing();
    const auto nearest = static_cast<int>(std::llround(xq / h));
    if (nearest >= 0 && nearest <= mesh.elements &&
        std::abs(xq - nearest * h) <= 1e-9 * h) {
        return field[nearest];
    }
    const int cell = std::clamp(static_cast<int>(std::floor(xq / h)), 0,
                                mesh.elements - 1);
    const double lam = std::clamp((xq - cell * h) / h, 0.0, 1.0);
    return (1.0 - lam) * field[cell] + lam * field[cell + 1];
}

} // namespace

RunResult run(const RunRequest& request) {
    request.mesh.validate();
    request.options.validate();
    request.materials.validate();
    request.boundary.validate();
    const int n = request.mesh.nodes();
    if (request.initial.theta.size() != n || request.initial.w.size() != n ||
        request.initial.d.size() != n) {
        throw std::invalid_argument("run: initial state does not match mesh");
    }
    if (!(request.duration >= 0.0) || !std::isfinite(request.duration)) {
        throw std::invalid_argument("run: duration must be >= 0");
    }

    const double dt = request.options.dt;
    const auto steps_ll = static_cast<long long>(
        std::llround(request.duration / dt));
    if (std::abs(steps_ll * dt - request.duration) >
        1e-6 * std::max(dt, request.duration)) {
        throw std::invalid_argument(
            "run: duration must be an integer multiple of dt");
    }
    const int n_steps = static_cast<int>(steps_ll);

    // Map snapshot times to step indices.
    std::vector<int> snap_indices;
    for (double t : request.snapshot_times) {
        if (!(t >= 0.0) || t > request.duration + 1e-9) {
            throw std::invalid_argument(
                "run: snapshot time outside [0, duration]");
        }
        const auto k = static_cast<long long>(std::llround(t / dt));
        if (std::abs(k * dt - t) > 1e-6 * std::max(dt, 1.0)) {
            throw std::invalid_argument(
                "run: snapshot time is not on the step grid");
        }
        snap_indices.push_back(static_cast<int>(std::min<long long>(k, n_steps)));
    }
    std::sort(snap_indices.begin(), snap_indices.end());
    snap_indices.erase(std::unique(snap_indices.begin(), snap_indices.end()),
                       snap_indices.end());

    for (double xp : request.probe_positions) {
        if (!(xp >= 0.0) || xp > request.mesh.length + 1e-12) {
            throw std::invalid_argument("run: probe position outside the wall");
        }
    }

    RunResult result;
    State state = request.initial;

    const auto store_level = [&](const State& s) {
        result.series.times.push_back(s.time);
        result.series.theta.push_back(s.theta);
        result.series.w.push_back(s.w);
        result.series.d.push_back(s.d);
    };
    const std::size_t n_probes = request.probe_positions.size();
    result.probes.theta.resize(n_probes);
    result.probes.w.resize(n_probes);
    result.probes.d.resize(n_probes);
    result.probes.pressure.resize(n_probes);
    const auto record_probes = [&](const State& s) {
        result.probes.times.push_back(s.time);
        for (std::size_t p = 0; p < n_probes; ++p) {
            const double xp = request.probe_positions[p];
            const double th = sample_field(s.theta, request.mesh, xp);
            const double wv = sample_field(s.w, request.mesh, xp);
            const double dv = sample_field(s.d, request.mesh, xp);
            result.probes.theta[p].push_back(th);
            result.probes.w[p].push_back(wv);
            result.probes.d[p].push_back(dv);
            result.probes.pressure[p].push_back(
                materials::sorption_pressure(request.materials, th, wv));
        }
    };

    RunSummary& summary = result.summary;
    summary.min_w = state.w.size() ? state.w.minCoeff() : 0.0;
    summary.min_d = state.d.size() ? state.d.minCoeff() : 0.0;
    summary.max_theta = state.theta.size() ? state.theta.maxCoeff() : 0.0;

    std::size_t next_snap = 0;
    if (request.dense ||
        (next_snap < snap_indices.size() && snap_indices[next_snap] == 0)) {
        store_level(state);
        if (!request.dense && next_snap < snap_indices.size() &&
            snap_indices[next_snap] == 0) {
            ++next_snap;
        }
    }
    record_probes(state);

    for (int k = 1; k <= n_steps; ++k) {
        const StepReport rep =
            step(request.materials, request.boundary, request.scenario,
                 request.mesh, request.options, state);
        summary.steps += 1;
        summary.min_w = std::min(summary.min_w, rep.min_w);
        summary.min_d = std::min(summary.min_d, rep.min_d);
        summary.max_theta = std::max(summary.max_theta, rep.max_theta);
        summary.max_moisture_residual =
            std::max(summary.max_moisture_residual, rep.moisture_residual);
        summary.max_energy_residual =
            std::max(summary.max_energy_residual, rep.energy_residual);
        summary.clamps.merge(rep.clamps);

        if (request.dense) {
            store_level(state);
        } else if (next_snap < snap_indices.size() &&
                   snap_indices[next_snap] == k) {
            store_level(state);
            ++next_snap;
        }
        record_probes(state);
    }

    summary.clamp_warning = summary.clamps.clamped_fraction() > 1e-3;
    result.final_state = std::move(state);
    return result;
}

} // namespace hygrotherm::solver
