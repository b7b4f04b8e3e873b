/**
 * @file test_solver.cpp
 * @brief Stepper tests: analytic decay modes, equilibrium preservation,
 *        conservation, monitors, and run-driver plumbing.
 */
#include "hygrotherm/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace hygrotherm;

namespace {

// Water content solving P(theta, w) = p_target at fixed theta (bisection on
// the strictly increasing isotherm).
double invert_isotherm(const materials::MaterialParams& mp, double theta,
                       double p_target) {
    double lo = 0.0;
    double hi = 300.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (materials::sorption_pressure(mp, theta, mid) < p_target ? lo : hi) =
            mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("uniform ambient state is preserved to roundoff") {
    materials::MaterialParams mp;
    fire::BoundaryParams bp;
    solver::Mesh1D mesh;
    mesh.elements = 60;
    solver::SolverOptions opt;

    // Start exactly on the exchange equilibrium: P(theta0, w0) = P_inf.
    const double w_eq = invert_isotherm(mp, 293.15, bp.ambient_vapor_pressure);
    solver::State s = solver::initial_state(mesh, 293.15, w_eq);

    for (int k = 0; k < 200; ++k) {
        solver::step(mp, bp, fire::Scenario::ConstantAmbient, mesh, opt, s);
    }
    CHECK((s.theta.array() - 293.15).abs().maxCoeff() <= 1e-10);
    CHECK((s.w.array() - w_eq).abs().maxCoeff() <= 1e-10 * w_eq);
    CHECK(s.d.lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("insulated conduction decays at the analytic rate") {
    materials::MaterialParams mp;
    fire::BoundaryParams bp;
    solver::Mesh1D mesh;
    mesh.elements = 60;

    solver::SolverOptions opt;
    opt.insulated = true;
    opt.constant_coefficients = true;
    opt.fixed = {1e-13, 0.0, 1.3863}; // no thermally driven moisture flux
    opt.dt = 0.5;

    const double w0 = 71.01;
    solver::State s = solver::initial_state(mesh, 293.15, w0);
    const Eigen::VectorXd x = mesh.node_positions();
    const double k_mode = M_PI / mesh.length;
    for (int i = 0; i < mesh.nodes(); ++i) {
        s.theta[i] = 293.15 + 10.0 * std::cos(k_mode * x[i]);
    }

    const double T = 600.0;
    for (int k = 0; k < static_cast<int>(T / opt.dt); ++k) {
        solver::step(mp, bp, fire::Scenario::ConstantAmbient, mesh, opt, s);
    }

    const double capacity =
        mp.heat_capacity_water * w0 + mp.rho_solid * mp.heat_capacity_solid;
    const double rate = opt.fixed.lambda * k_mode * k_mode / capacity;
    const double amp = 0.5 * (s.theta[0] - s.theta[mesh.elements]);
    CHECK(amp == doctest::Approx(10.0 * std::exp(-rate * T)).epsilon(0.01));
    // The water field stays untouched without thermal drive.
    CHECK((s.w.array() - w0).abs().maxCoeff() <= 1e-10 * w0);
}

TEST_CASE("insulated moisture diffusion conserves mass and decays") {
    materials::MaterialParams mp;
    fire::BoundaryParams bp;
    solver::Mesh1D mesh;
    mesh.elements = 60;

    solver::SolverOptions opt;
    opt.insulated = true;
    opt.constant_coefficients = true;
    opt.fixed = {2e-9, 0.0, 1.3863};
    opt.dt = 0.5;

    solver::State s = solver::initial_state(mesh, 293.15, 71.01);
    const Eigen::VectorXd x = mesh.node_positions();
    const double k_mode = M_PI / mesh.length;
    for (int i = 0; i < mesh.nodes(); ++i) {
        s.w[i] = 71.01 + 5.0 * std::cos(k_mode * x[i]);
    }
    const Eigen::VectorXd mass = mesh.node_masses();
    const double total0 = mass.dot(s.w);

    const double T = 600.0;
    for (int k = 0; k < static_cast<int>(T / opt.dt); ++k) {
        solver::step(mp, bp, fire::Scenario::ConstantAmbient, mesh, opt, s);
    }

    CHECK(mass.dot(s.w) == doctest::Approx(total0).epsilon(1e-12));
    const double rate = opt.fixed.delta_w * k_mode * k_mode;
    const double amp = 0.5 * (s.w[0] - s.w[mesh.elements]);
    CHECK(amp == doctest::Approx(5.0 * std::exp(-rate * T)).epsilon(0.01));
}

TEST_CASE("one fired step heats the surface and reports monitors") {
    materials::MaterialParams mp;
    fire::BoundaryParams bp;
    solver::Mesh1D mesh;
    mesh.elements = 60;
    solver::SolverOptions opt;

    solver::State s = solver::initial_state(mesh, 293.15, 71.01);
    const auto rep =
        solver::step(mp, bp, fire::Scenario::Iso834, mesh, opt, s);

    CHECK(rep.time == 0.5);
    CHECK(rep.surface_theta > 293.15);
    CHECK(rep.surface_theta < fire::gas_temperature(fire::Scenario::Iso834, 0.5));
    CHECK(rep.max_theta == rep.surface_theta);
    CHECK(rep.min_d == 0.0);
    CHECK(rep.clamps.evaluations == mesh.nodes());
    CHECK(rep.moisture_residual <= 1e-8);
    CHECK(rep.energy_residual <= 1e-6 * std::abs(rep.max_theta));
    // Interior stays monotone towards the cold face after one step.
    for (int i = 0; i + 1 < mesh.nodes(); ++i) {
        CHECK(s.theta[i] <= s.theta[i + 1] + 1e-12);
    }
}

TEST_CASE("a short fired run stays physical") {
    solver::RunRequest req;
    req.mesh.elements = 60;
    req.scenario = fire::Scenario::Iso834;
    req.initial = solver::initial_state(req.mesh, 293.15, 71.01);
    req.duration = 120.0;
    req.snapshot_times = {120.0};
    req.probe_positions = {req.mesh.length, req.mesh.length - 0.01};

    const auto result = solver::run(req);
    CHECK(result.summary.steps == 240);
    CHECK(result.summary.min_w >= -1e-10 * 100.0);
    CHECK(result.summary.min_d >= 0.0);
    CHECK(result.summary.max_theta > 360.0);
    CHECK(result.summary.max_theta <
          fire::gas_temperature(fire::Scenario::Iso834, 120.0));
    CHECK(std::isfinite(result.final_state.theta.sum()));
    CHECK(result.series.times.size() == 1);
    CHECK(result.probes.times.size() == 241);
    // Probe at x = length reproduces the last node exactly.
    CHECK(result.probes.theta[0].back() ==
          result.final_state.theta[req.mesh.elements]);
}

TEST_CASE("run snapshot selection and dense mode") {
    solver::RunRequest req;
    req.mesh.elements = 10;
    req.scenario = fire::Scenario::ConstantAmbient;
    req.initial = solver::initial_state(req.mesh, 293.15, 71.01);
    req.duration = 10.0;
    req.snapshot_times = {0.0, 5.0, 10.0};

    auto result = solver::run(req);
    REQUIRE(result.series.times.size() == 3);
    CHECK(result.series.times[0] == 0.0);
    CHECK(result.series.times[1] == doctest::Approx(5.0));
    CHECK(result.series.times[2] == doctest::Approx(10.0));
    // Initial level stored exactly.
    CHECK(result.series.w[0][0] == 71.01);

    req.dense = true;
    req.snapshot_times.clear();
    result = solver::run(req);
    CHECK(result.series.times.size() == 21);

    req.dense = false;
    req.snapshot_times = {3.14};
    CHECK_THROWS_AS(solver::run(req), std::invalid_argument);
    req.snapshot_times = {11.0};
    CHECK_THROWS_AS(solver::run(req), std::invalid_argument);
    req.snapshot_times.clear();
    req.duration = 10.25;
    CHECK_THROWS_AS(solver::run(req), std::invalid_argument);
}

TEST_CASE("malformed states and options are rejected") {
    materials::MaterialParams mp;
    fire::BoundaryParams bp;
    solver::Mesh1D mesh;
    mesh.elements = 10;
    solver::SolverOptions opt;

    solver::State s = solver::initial_state(mesh, 293.15, 71.01);
    s.w.resize(3);
    CHECK_THROWS_AS(
        solver::step(mp, bp, fire::Scenario::Iso834, mesh, opt, s),
        std::invalid_argument);

    opt.dt = -0.5;
    CHECK_THROWS_AS(opt.validate(), std::invalid_argument);

    solver::Mesh1D bad;
    bad.elements = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.elements = 10;
    bad.length = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
