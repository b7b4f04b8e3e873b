/**
 * @file test_config.cpp
 * @brief Configuration tests: defaults, scenario-keyed convection, strict
 *        key checking, round-trip serialisation, and hashing.
 */

#include <string>

#include <doctest.h>

#include "hygrotherm/config.hpp"

using hygrotherm::config::ConfigError;
using hygrotherm::config::MonitorPolicy;
using hygrotherm::config::SimulationConfig;
using hygrotherm::config::fnv1a;
using hygrotherm::config::parse_text;
using hygrotherm::config::serialize;
using hygrotherm::fire::Scenario;

TEST_CASE("empty text yields the default ISO exposure of a 120 mm wall") {
    const SimulationConfig cfg = parse_text("");
    CHECK(cfg.mesh.length == 0.12);
    CHECK(cfg.mesh.elements == 240);
    CHECK(cfg.dt == 0.5);
    CHECK(cfg.duration == 1800.0);
    CHECK(cfg.scenario == Scenario::Iso834);
    CHECK(cfg.boundary.convection_coeff == 25.0);
    CHECK(cfg.boundary.emissivity == 0.7);
    CHECK(cfg.boundary.stefan_boltzmann == 5.67e-8);
    CHECK(cfg.boundary.mass_exchange_coeff == 0.019);
    CHECK(cfg.boundary.ambient_vapor_pressure == 1754.2);
    CHECK(cfg.materials.rho_solid == 2400.0);
    CHECK(cfg.materials.heat_capacity_water == 2080.0);
    CHECK(cfg.materials.permeability_ref == 1e-13);
    CHECK(cfg.initial_theta == 293.15);
    CHECK(cfg.initial_w == 71.01);
    CHECK(cfg.initial_profile.empty());
    CHECK(cfg.output_directory == "out");
    REQUIRE(cfg.snapshot_times.size() == 2);
    CHECK(cfg.snapshot_times[0] == 900.0);
    CHECK(cfg.snapshot_times[1] == 1800.0);
    REQUIRE(cfg.probe_positions.size() == 2);
    CHECK(cfg.probe_positions[0] == 0.12);
    CHECK(cfg.probe_positions[1] == doctest::Approx(0.11).epsilon(1e-12));
    CHECK_FALSE(cfg.dense);
    CHECK(cfg.upwind);
    CHECK(cfg.monitor == MonitorPolicy::Warn);
}

TEST_CASE("convection default follows the scenario unless overridden") {
    CHECK(parse_text("[fire]\nscenario = HC\n").boundary.convection_coeff == 50.0);
    CHECK(parse_text("[fire]\nscenario = PM\n").boundary.convection_coeff == 35.0);
    CHECK(parse_text("[fire]\nscenario = constant\n").boundary.convection_coeff == 25.0);
    CHECK(parse_text("[fire]\nscenario = hydrocarbon\n").scenario == Scenario::Hydrocarbon);
    const SimulationConfig cfg =
        parse_text("[fire]\nconvection_coeff = 30\nscenario = HC\n");
    CHECK(cfg.scenario == Scenario::Hydrocarbon);
    CHECK(cfg.boundary.convection_coeff == 30.0);
}

TEST_CASE("malformed values are rejected with the offending key named") {
    CHECK_THROWS_AS(parse_text("[time]\ndt = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[time]\ndt = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[time]\ndt = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[time]\nduration = -5\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[mesh]\nelements = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[mesh]\nelements = 240.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[mesh]\nelements = 1e30\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[output]\ndense = maybe\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[solver]\nmonitor = silent\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[fire]\nscenario = bonfire\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[fire]\nemissivity = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[output]\nsnapshots = 900,2400\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[output]\nprobes = 0.5\n"), ConfigError);

    try {
        parse_text("[time]\ndt = -1\n");
        FAIL("expected a parse error");
    } catch (const ConfigError& err) {
        const std::string message = err.what();
        CHECK(message.find("time.dt") != std::string::npos);
        CHECK(message.find("positive") != std::string::npos);
        CHECK(message.find("-1") != std::string::npos);
    }
}

TEST_CASE("unknown keys and sections are rejected by name") {
    try {
        parse_text("[time]\ntimestep = 0.5\n");
        FAIL("expected a parse error");
    } catch (const ConfigError& err) {
        const std::string message = err.what();
        CHECK(message.find("timestep") != std::string::npos);
        CHECK(message.find("[time]") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_text("[plotting]\nstyle = dark\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[time]\ndt = 0.5\ndt = 0.25\n"), ConfigError);
}

TEST_CASE("structural errors are rejected with a line number") {
    CHECK_THROWS_AS(parse_text("dt = 0.5\n"), ConfigError);          // no section yet
    CHECK_THROWS_AS(parse_text("[time\ndt = 0.5\n"), ConfigError);   // unclosed header
    CHECK_THROWS_AS(parse_text("[time]\njust words\n"), ConfigError); // missing '='
    CHECK_THROWS_AS(parse_text("[time]\n= 0.5\n"), ConfigError);     // empty key
}

TEST_CASE("comments, blank lines, and spacing are ignored") {
    const SimulationConfig cfg = parse_text(
        "# leading comment\n"
        "\n"
        "[time]   ; trailing comment\n"
        "  dt   =   0.25   # inline\n"
        "\n"
        "duration=3600\n");
    CHECK(cfg.dt == 0.25);
    CHECK(cfg.duration == 3600.0);
}

TEST_CASE("snapshot defaults clip to the run duration") {
    CHECK(parse_text("[time]\nduration = 1000\n").snapshot_times ==
          std::vector<double>{900.0});
    CHECK(parse_text("[time]\nduration = 600\n").snapshot_times ==
          std::vector<double>{600.0});
    CHECK(parse_text("[time]\nduration = 0\n").snapshot_times ==
          std::vector<double>{0.0});
    // An explicit schedule is taken verbatim.
    CHECK(parse_text("[output]\nsnapshots = 60,120,180\n").snapshot_times ==
          std::vector<double>({60.0, 120.0, 180.0}));
}

TEST_CASE("probe defaults collapse to the exposed face on thin walls") {
    const SimulationConfig cfg =
        parse_text("[geometry]\nlength = 0.008\n[mesh]\nelements = 16\n");
    REQUIRE(cfg.probe_positions.size() == 1);
    CHECK(cfg.probe_positions[0] == 0.008);
}

TEST_CASE("serialized text parses back to the identical configuration") {
    SimulationConfig cfg = parse_text(
        "[geometry]\nlength = 0.2\n"
        "[mesh]\nelements = 100\n"
        "[time]\ndt = 0.125\nduration = 7200\n"
        "[fire]\nscenario = PM\nemissivity = 0.85\n"
        "[material]\npermeability_ref = 3e-13\ncement_content = 300\n"
        "[initial]\ntheta = 288.15\nw = 60\nprofile = warm_start.csv\n"
        "[output]\ndirectory = results/pm\nsnapshots = 600,1200,7200\n"
        "probes = 0.2,0.19,0.1\ndense = true\n"
        "[solver]\nupwind = false\nmonitor = strict\n");
    const std::string text = serialize(cfg);
    const SimulationConfig back = parse_text(text);

    CHECK(back.mesh.length == cfg.mesh.length);
    CHECK(back.mesh.elements == cfg.mesh.elements);
    CHECK(back.dt == cfg.dt);
    CHECK(back.duration == cfg.duration);
    CHECK(back.scenario == cfg.scenario);
    CHECK(back.boundary.convection_coeff == cfg.boundary.convection_coeff);
    CHECK(back.boundary.emissivity == cfg.boundary.emissivity);
    CHECK(back.materials.permeability_ref == cfg.materials.permeability_ref);
    CHECK(back.materials.cement_content == cfg.materials.cement_content);
    CHECK(back.initial_theta == cfg.initial_theta);
    CHECK(back.initial_w == cfg.initial_w);
    CHECK(back.initial_profile == cfg.initial_profile);
    CHECK(back.output_directory == cfg.output_directory);
    CHECK(back.snapshot_times == cfg.snapshot_times);
    CHECK(back.probe_positions == cfg.probe_positions);
    CHECK(back.dense == cfg.dense);
    CHECK(back.upwind == cfg.upwind);
    CHECK(back.monitor == cfg.monitor);
    // Serialisation is canonical, so a second pass is byte-identical.
    CHECK(serialize(back) == text);

    // Awkward doubles survive the %.17g round trip bit-for-bit.
    cfg = parse_text("[time]\ndt = 0.1\nduration = 86400\n");
    cfg.dt = 0.1;
    const SimulationConfig again = parse_text(serialize(cfg));
    CHECK(again.dt == 0.1);
}

TEST_CASE("defaults serialize and parse back unchanged") {
    const SimulationConfig cfg = parse_text("");
    const std::string text = serialize(cfg);
    const SimulationConfig back = parse_text(text);
    CHECK(serialize(back) == text);
    CHECK(back.boundary.convection_coeff == 25.0);
}

TEST_CASE("hash matches the published 64-bit FNV-1a test vectors") {
    CHECK(fnv1a("") == 14695981039346656037ull);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a("foobar") == 0x85944171f73967e8ull);
    // Different configurations hash differently.
    CHECK(fnv1a(serialize(parse_text(""))) !=
          fnv1a(serialize(parse_text("[time]\ndt = 0.25\n"))));
}
