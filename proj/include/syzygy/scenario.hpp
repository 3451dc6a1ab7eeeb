#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "syzygy/events.hpp"
#include "syzygy/orbits.hpp"

namespace syzygy {

struct ScenarioError : std::runtime_error {
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

/// Sampler request inside a scenario (constraints plus the base seed).
struct SamplerSpec {
    std::uint64_t seed = 1;
    SamplerConstraints constraints;
};

struct SimulateSpec {
    double t_end = 10.0;
    int samples = 1000;
};

struct Theorem2Spec {
    std::optional<Eigen::Vector3d> theta;  // absent: search with find_theta
    std::optional<double> period;          // absent: the fixture's known period
    int grid = 4096;
};

struct MinfSpec {
    double s = 3.0;
    long samples = 1000000;
    std::uint64_t seed = 20240101;
};

struct SweepSpec {
    std::string experiment = "thm1";  // thm1 | thm3
    int count = 200;
    int free_fall_count = 0;
    std::uint64_t seed = 42;
};

/// A fully validated experiment description: masses, exactly one initial
/// condition source, the numerical configurations, and per-command blocks.
struct Scenario {
    Masses masses{1.0, 1.0, 1.0};

    // exactly one of the three is set
    std::optional<std::string> fixture;  // figure_eight | lagrange_circular | euler_circular
    double fixture_side = 1.0;           // lagrange_circular
    int fixture_central = 2;             // euler_circular
    double fixture_scale = 1.0;          // euler_circular
    std::optional<BodyState> state;
    std::optional<SamplerSpec> sampler;

    IntegratorConfig integrator;
    DetectorConfig detector;
    SimulateSpec simulate;
    Theorem2Spec theorem2;
    MinfSpec minf;
    SweepSpec sweep;
};

Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical JSON form: every field present, defaults materialized.
/// parse(canonical(s)) == s and canonical is idempotent.
nlohmann::json canonical_json(const Scenario& s);

/// The scenario's single initial condition (fixture or explicit state).
/// For sampler scenarios, pass the batch index; seed_override replaces the
/// stored sampler seed when present.
InitialCondition resolve_initial_condition(const Scenario& s,
                                           std::optional<std::uint64_t> seed_override = {},
                                           std::uint64_t index = 0);

}  // namespace syzygy
