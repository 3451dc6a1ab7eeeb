#include "syzygy/runner.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "syzygy/output.hpp"
#include "syzygy/theorems.hpp"

namespace syzygy {

namespace {

using nlohmann::json;

json event_json(const Event& e) {
    json j;
    j["t"] = e.t;
    j["kind"] = to_string(e.kind);
    if (e.middle_body)
        j["middle_body"] = *e.middle_body;
    else
        j["middle_body"] = nullptr;
    j["delta1"] = e.delta1;
    j["delta2"] = e.delta2;
    j["H"] = e.H;
    j["I"] = e.I;
    j["grazing"] = e.grazing;
    return j;
}

json theorem_report_json(const TheoremReport& r) {
    json j;
    j["theorem"] = r.theorem_id;
    j["alpha"] = r.alpha;
    j["angular_momentum"] = r.angular_momentum;
    j["bound_time"] = r.bound_time;
    j["outcome"] = to_string(r.outcome);
    j["event"] = r.event ? event_json(*r.event) : json(nullptr);
    j["t_stop"] = r.t_stop;
    j["drift"] = {{"max_rel_H", r.drift.max_rel_H}, {"max_abs_I", r.drift.max_abs_I}};
    j["min_distance"] = r.min_distance;
    return j;
}

int theorem_exit_code(const TheoremReport& r) {
    switch (r.outcome) {
        case TheoremOutcome::event_found: return exit_ok;
        case TheoremOutcome::collision_stop: return exit_collision_stop;
        case TheoremOutcome::violation: return exit_violation;
    }
    return exit_violation;
}

RunResult run_simulate(const Scenario& s, const std::filesystem::path& out, Manifest& man,
                       std::optional<std::uint64_t> seed) {
    const InitialCondition ic = resolve_initial_condition(s, seed);
    const DenseTrajectory traj =
        integrate(ic.masses, ic.state, ic.state.t + s.simulate.t_end, s.integrator);
    man.files.push_back(write_output(out, "trajectory.csv", trajectory_csv(traj, s.simulate.samples)));

    const DriftReport drift = drift_report(traj);
    json j;
    j["schema_version"] = 1;
    j["command"] = "simulate";
    j["termination"] = to_string(traj.termination);
    j["t_reached"] = traj.t_reached;
    j["max_rel_H"] = drift.max_rel_H;
    j["max_abs_I"] = drift.max_abs_I;
    j["n_accepted"] = traj.n_accepted;
    j["n_rejected"] = traj.n_rejected;
    j["min_distance"] = traj.min_distance_seen;
    man.files.push_back(write_output(out, "drift.json", j.dump(2) + "\n"));

    const int code =
        traj.termination == Termination::collision_approach ? exit_collision_stop : exit_ok;
    return {code, std::string("simulate: ") + to_string(traj.termination) + ", t_reached=" +
                      format_double(traj.t_reached)};
}

RunResult run_events(const Scenario& s, const std::filesystem::path& out, Manifest& man,
                     std::optional<std::uint64_t> seed) {
    const InitialCondition ic = resolve_initial_condition(s, seed);
    const DenseTrajectory traj =
        integrate(ic.masses, ic.state, ic.state.t + s.simulate.t_end, s.integrator);
    const ScanResult scan = scan_events(traj, Monitored::both, s.detector);
    man.files.push_back(write_output(out, "events.csv", events_csv(scan.events)));

    json j;
    j["schema_version"] = 1;
    j["command"] = "events";
    j["termination"] = to_string(traj.termination);
    j["t_reached"] = traj.t_reached;
    j["n_events"] = scan.events.size();
    j["degenerate_delta1"] = scan.degenerate_delta1;
    j["degenerate_delta2"] = scan.degenerate_delta2;
    man.files.push_back(write_output(out, "events_summary.json", j.dump(2) + "\n"));

    const int code =
        traj.termination == Termination::collision_approach ? exit_collision_stop : exit_ok;
    return {code, "events: " + std::to_string(scan.events.size()) + " event(s)"};
}

RunResult run_verify_1_or_3(int id, const Scenario& s, const std::filesystem::path& out,
                            Manifest& man, std::optional<std::uint64_t> seed) {
    const InitialCondition ic = resolve_initial_condition(s, seed);
    json j;
    j["schema_version"] = 1;
    j["command"] = id == 1 ? "verify-thm1" : "verify-thm3";
    int code;
    std::string summary;
    try {
        const TheoremReport rep = (id == 1)
                                      ? verify_theorem1(ic.masses, ic.state, s.integrator, s.detector)
                                      : verify_theorem3(ic.masses, ic.state, s.integrator, s.detector);
        j["report"] = theorem_report_json(rep);
        code = theorem_exit_code(rep);
        summary = std::string("theorem ") + std::to_string(id) + ": " + to_string(rep.outcome);
        if (rep.event) summary += " at t=" + format_double(rep.event->t);
    } catch (const HypothesisNotMet& e) {
        j["report"] = nullptr;
        j["hypothesis_not_met"] = e.what();
        code = exit_hypothesis_not_met;
        summary = std::string("hypothesis not met: ") + e.what();
    }
    man.files.push_back(write_output(out, "report.json", j.dump(2) + "\n"));
    return {code, summary};
}

RunResult run_verify_2(const Scenario& s, const std::filesystem::path& out, Manifest& man,
                       std::optional<std::uint64_t> seed) {
    const InitialCondition ic = resolve_initial_condition(s, seed);
    double period = 0.0;
    if (s.theorem2.period)
        period = *s.theorem2.period;
    else if (ic.period)
        period = *ic.period;
    else
        throw ScenarioError("verify-thm2: no period given and the fixture has none");

    // Integrate slightly past the period so dense evaluation at t0+period is interior.
    const DenseTrajectory traj =
        integrate(ic.masses, ic.state, ic.state.t + 1.001 * period, s.integrator);

    json j;
    j["schema_version"] = 1;
    j["command"] = "verify-thm2";
    j["period"] = period;
    int code;
    std::string summary;
    try {
        ThetaVector theta{Eigen::Vector3d::Zero()};
        if (s.theorem2.theta) {
            theta = ThetaVector::canonical(*s.theorem2.theta);
        } else {
            const auto found = find_theta(traj, period, s.theorem2.grid);
            if (!found) throw HypothesisNotMet("no rigidity certificate found");
            theta = *found;
        }
        j["theta"] = {theta.theta[0], theta.theta[1], theta.theta[2]};
        const Theorem2Report rep = verify_theorem2_periodic(traj, period, theta);
        j["rigidity"] = to_string(rep.rigidity);
        j["syzygy_found"] = rep.syzygy_found;
        j["degenerate_collinear"] = rep.degenerate_collinear;
        j["t_first"] = rep.t_first ? json(*rep.t_first) : json(nullptr);
        j["integral_delta1_S"] = rep.integral_delta1_S;
        j["pointwise_max_rel"] = rep.pointwise_max_rel;
        code = rep.syzygy_found ? exit_ok : exit_violation;
        summary = rep.syzygy_found
                      ? ("theorem 2: syzygy" + std::string(rep.degenerate_collinear
                                                               ? " (identically collinear)"
                                                               : ""))
                      : "theorem 2: VIOLATION (rigid but syzygy-free)";
    } catch (const HypothesisNotMet& e) {
        j["hypothesis_not_met"] = e.what();
        code = exit_hypothesis_not_met;
        summary = std::string("hypothesis not met: ") + e.what();
    } catch (const NotPeriodic& e) {
        j["hypothesis_not_met"] = e.what();
        code = exit_hypothesis_not_met;
        summary = std::string("not periodic: ") + e.what();
    }
    man.files.push_back(write_output(out, "report.json", j.dump(2) + "\n"));
    return {code, summary};
}

RunResult run_sweep(const Scenario& s, const std::filesystem::path& out, Manifest& man,
                    std::optional<std::uint64_t> seed_override, int workers) {
    if (!s.sampler)
        throw ScenarioError("sweep: scenario must use a sampler initial condition");
    const std::uint64_t seed = seed_override.value_or(s.sweep.seed);
    const int n_random = s.sweep.count;
    const int n_total = n_random + s.sweep.free_fall_count;
    const bool thm1 = s.sweep.experiment == "thm1";

    struct Row {
        json j;
        TheoremOutcome outcome = TheoremOutcome::violation;
        bool hypothesis_ok = true;
    };
    std::vector<Row> rows(static_cast<std::size_t>(n_total));

    std::atomic<int> next{0};
    auto work = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n_total) return;
            SamplerConstraints c = s.sampler->constraints;
            c.masses = s.masses;
            if (i >= n_random) {  // free-fall block
                c.free_fall = true;
                c.zero_momentum = false;
                c.antisymmetric = false;
                c.negative_energy = false;
            }
            Row row;
            row.j["index"] = i;
            row.j["free_fall"] = (i >= n_random);
            try {
                const InitialCondition ic =
                    random_ic(Rng::derive(seed, static_cast<std::uint64_t>(i)), c);
                const TheoremReport rep =
                    thm1 ? verify_theorem1(ic.masses, ic.state, s.integrator, s.detector)
                         : verify_theorem3(ic.masses, ic.state, s.integrator, s.detector);
                row.j["report"] = theorem_report_json(rep);
                row.outcome = rep.outcome;
            } catch (const HypothesisNotMet& e) {
                row.j["hypothesis_not_met"] = e.what();
                row.hypothesis_ok = false;
            }
            rows[static_cast<std::size_t>(i)] = std::move(row);
        }
    };

    const int n_workers = std::max(1, workers);
    std::vector<std::thread> pool;
    for (int w = 1; w < n_workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    int found = 0, stopped = 0, violations = 0, hypothesis_failures = 0;
    double max_ratio = 0.0;
    json reports = json::array();
    for (const Row& row : rows) {
        reports.push_back(row.j);
        if (!row.hypothesis_ok) {
            ++hypothesis_failures;
            continue;
        }
        switch (row.outcome) {
            case TheoremOutcome::event_found: {
                ++found;
                const json& rep = row.j.at("report");
                const double t = rep.at("event").at("t").get<double>();
                const double bound = rep.at("bound_time").get<double>();
                max_ratio = std::max(max_ratio, t / bound);
                break;
            }
            case TheoremOutcome::collision_stop: ++stopped; break;
            case TheoremOutcome::violation: ++violations; break;
        }
    }

    json jr;
    jr["schema_version"] = 1;
    jr["command"] = "sweep";
    jr["reports"] = reports;
    man.files.push_back(write_output(out, "reports.json", jr.dump(2) + "\n"));

    json ja;
    ja["schema_version"] = 1;
    ja["command"] = "sweep";
    ja["experiment"] = s.sweep.experiment;
    ja["seed"] = seed;
    ja["count"] = n_random;
    ja["free_fall_count"] = s.sweep.free_fall_count;
    ja["outcomes"] = {{"EventFound", found},
                      {"CollisionStop", stopped},
                      {"Violation", violations}};
    ja["hypothesis_not_met"] = hypothesis_failures;
    ja["max_event_time_over_bound"] = max_ratio;
    man.files.push_back(write_output(out, "aggregate.json", ja.dump(2) + "\n"));

    const int code = violations > 0 ? exit_violation : exit_ok;
    return {code, "sweep: " + std::to_string(found) + " events, " + std::to_string(stopped) +
                      " collision stops, " + std::to_string(violations) + " violations"};
}

RunResult run_oracle_minf(const Scenario& s, const std::filesystem::path& out, Manifest& man) {
    const MinFResult r = minF_oracle(s.masses, s.minf.s, s.minf.samples, s.minf.seed);
    json j;
    j["schema_version"] = 1;
    j["command"] = "oracle-minf";
    j["masses"] = {s.masses.m1, s.masses.m2, s.masses.m3};
    j["s"] = s.minf.s;
    j["samples"] = s.minf.samples;
    j["oracle_min"] = r.oracle_min;
    j["closed_min"] = r.closed_min;
    j["rel_gap"] = r.rel_gap;
    j["oracle_argmin"] = {r.oracle_argmin[0], r.oracle_argmin[1], r.oracle_argmin[2]};
    j["closed_argmin"] = {r.closed_argmin[0], r.closed_argmin[1], r.closed_argmin[2]};
    const Eigen::Vector3d na = r.oracle_argmin / r.oracle_argmin.cwiseAbs().maxCoeff();
    const Eigen::Vector3d nb = r.closed_argmin / r.closed_argmin.cwiseAbs().maxCoeff();
    j["argmin_gap_inf"] = (na - nb).cwiseAbs().maxCoeff();
    man.files.push_back(write_output(out, "minf.json", j.dump(2) + "\n"));
    return {exit_ok, "oracle-minf: rel_gap=" + format_double(r.rel_gap)};
}

}  // namespace

RunResult run_command(const std::string& command, const Scenario& scenario,
                      const std::filesystem::path& out_dir,
                      std::optional<std::uint64_t> seed_override, int workers) {
    std::filesystem::create_directories(out_dir);
    Manifest man;
    man.files.push_back(
        write_output(out_dir, "scenario.json", canonical_json(scenario).dump(2) + "\n"));

    RunResult result;
    if (command == "simulate")
        result = run_simulate(scenario, out_dir, man, seed_override);
    else if (command == "events")
        result = run_events(scenario, out_dir, man, seed_override);
    else if (command == "verify-thm1")
        result = run_verify_1_or_3(1, scenario, out_dir, man, seed_override);
    else if (command == "verify-thm3")
        result = run_verify_1_or_3(3, scenario, out_dir, man, seed_override);
    else if (command == "verify-thm2")
        result = run_verify_2(scenario, out_dir, man, seed_override);
    else if (command == "sweep")
        result = run_sweep(scenario, out_dir, man, seed_override, workers);
    else if (command == "oracle-minf")
        result = run_oracle_minf(scenario, out_dir, man);
    else
        throw ScenarioError("unknown command '" + command + "'");

    write_manifest(out_dir, man);
    return result;
}

}  // namespace syzygy
