// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Run directly or through ctest (`ctest -R acceptance`).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "syzygy/output.hpp"
#include "syzygy/runner.hpp"
#include "syzygy/theorems.hpp"
#include "test_support.hpp"

using namespace syzygy;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& s) { g_notes.push_back(s); }

void criterion(int id, const std::string& name, const std::function<bool()>& body) {
    g_notes.clear();
    const auto t0 = Clock::now();
    bool pass = false;
    std::string error;
    try {
        pass = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s (%.1fs)\n", pass ? "PASS" : "FAIL", id, name.c_str(), secs);
    for (const std::string& s : g_notes) std::printf("       %s\n", s.c_str());
    if (!error.empty()) std::printf("       exception: %s\n", error.c_str());
    if (!pass) ++g_failures;
    std::fflush(stdout);
}

const std::array<Masses, 5> kMassSets = {Masses{1, 1, 1}, Masses{1, 2, 3}, Masses{0.5, 1, 2},
                                         Masses{3, 1, 0.2}, Masses{2, 5, 1}};

std::filesystem::path out_dir(const std::string& leaf) {
    const auto d = std::filesystem::temp_directory_path() / "syzygy_acceptance" / leaf;
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

bool check(bool ok, const std::string& what) {
    if (!ok) note("FAILED: " + what);
    return ok;
}

// ---- criterion 1 -----------------------------------------------------------

bool algebraic_identity_suite() {
    Rng rng(101);
    double worst_decomp = 0, worst_sum = 0, worst_L = 0, worst_form = 0, worst_pair = 0;
    for (const Masses& m : kMassSets) {
        for (int k = 0; k < 10000; ++k) {
            const BodyState s = testsup::random_barycentric_state(m, rng);
            const PairwiseGeometry g = pairwise_geometry(s);
            const ConleyMatrices c = build_matrices(m, Vec3<double>(g.rho));

            const Mat2<double> rec = g.rho[0] * c.A1 + g.rho[1] * c.A2 + g.rho[2] * c.A3;
            worst_decomp = std::max(worst_decomp, (c.A - rec).cwiseAbs().maxCoeff() /
                                                      std::max(1.0, c.A.cwiseAbs().maxCoeff()));

            const Mat2<double> sum = c.A1 + c.A2 + c.A3 + m.total() * Mat2<double>::Identity();
            worst_sum = std::max(worst_sum, sum.cwiseAbs().maxCoeff() / m.total());
            const Mat2<double> tsum = c.At1 + c.At2 + c.At3;
            worst_sum = std::max(worst_sum, tsum.cwiseAbs().maxCoeff() / m.total());

            for (const Mat2<double>* Ai : {&c.A1, &c.A2, &c.A3})
                worst_L = std::max(worst_L, std::abs(mat_inner(c.L, *Ai)) /
                                                (c.L.norm() * Ai->norm()));

            const double I = angular_momentum(m, s);
            const IdentityResiduals r = identity_residuals(m, s, I);
            worst_form = std::max(worst_form, r.form_residual / r.scale);

            const MassWeightedFrame f = mass_weighted_frame(m, s);
            const double want = f.delta1 * f.delta2;
            const double mm[3] = {m.m1, m.m2, m.m3};
            const int pairs[3][2] = {{0, 1}, {1, 2}, {0, 2}};
            for (auto& p : pairs) {
                const double mw = mm[p[0]] * mm[p[0]] * mm[p[1]] * mm[p[1]];
                const double got =
                    mw * cross2(s.r(p[0]), s.r(p[1])) * cross2(s.v(p[0]), s.v(p[1]));
                worst_pair = std::max(worst_pair,
                                      std::abs(got - want) / std::max(1.0, std::abs(want)));
            }
        }
    }
    note("max residuals: decomposition " + format_double(worst_decomp) + ", mass sums " +
         format_double(worst_sum) + ", <L,Ai> " + format_double(worst_L) + ", form " +
         format_double(worst_form) + ", pair " + format_double(worst_pair));
    return check(worst_decomp <= 1e-13, "A-decomposition residual <= 1e-13") &
           check(worst_sum <= 1e-15, "mass-matrix sums exact to 1e-15") &
           check(worst_L <= 1e-13, "<L,Ai> orthogonality <= 1e-13") &
           check(worst_form <= 1e-12, "form identity residual <= 1e-12 * scale") &
           check(worst_pair <= 1e-12, "pair identity <= 1e-12 rel");
}

// ---- criterion 2 -----------------------------------------------------------

bool lemma_bound() {
    double worst_margin = 0.0;  // most negative margin / |Tr A|
    Rng seeds(202);
    SamplerConstraints c;
    c.negative_energy = true;
    for (int k = 0; k < 10000; ++k) {
        c.masses = kMassSets[k % kMassSets.size()];
        const InitialCondition ic = random_ic(seeds.raw(), c);
        const TraceBound tb = trace_bound_check(ic.masses, ic.state);
        worst_margin = std::min(worst_margin, tb.margin / std::abs(tb.traceA));
    }
    note("lemma margin (relative, most negative): " + format_double(worst_margin));
    bool ok = check(worst_margin >= -1e-12, "Tr(A) <= -alpha^3/Sigma^2 with margin >= -1e-12");

    Rng rng(203);
    double worst_gap = 0.0, worst_arg = 0.0;
    for (int k = 0; k < 20; ++k) {
        const Masses m{rng.uniform(0.2, 4), rng.uniform(0.2, 4), rng.uniform(0.2, 4)};
        const double s = rng.uniform(0.5, 5.0);
        const MinFResult r = minF_oracle(m, s, 1000000, 54321 + k);
        worst_gap = std::max(worst_gap, r.rel_gap);
        const Eigen::Vector3d na = r.oracle_argmin / r.oracle_argmin.cwiseAbs().maxCoeff();
        const Eigen::Vector3d nb = r.closed_argmin / r.closed_argmin.cwiseAbs().maxCoeff();
        worst_arg = std::max(worst_arg, (na - nb).cwiseAbs().maxCoeff());
    }
    note("minF oracle: worst value gap " + format_double(worst_gap) + ", worst argmin gap " +
         format_double(worst_arg));
    ok &= check(worst_gap <= 1e-4, "oracle matches s^3/Sigma^2 within 1e-4");
    ok &= check(worst_arg <= 1e-2, "oracle argmin matches r* within 1e-2");
    return ok;
}

// ---- criterion 3 -----------------------------------------------------------

bool conservation() {
    const InitialCondition f8 = figure_eight();
    IntegratorConfig cfg;
    cfg.rtol = 1e-11;
    cfg.atol = 1e-13;
    const DenseTrajectory traj =
        integrate(f8.masses, f8.state, 10.0 * *f8.period, cfg);
    bool ok = check(traj.termination == Termination::completed, "figure-eight run completes");
    const DriftReport d = drift_report(traj);
    note("figure-eight 10 periods: |dH/H| " + format_double(d.max_rel_H) + ", |dI| " +
         format_double(d.max_abs_I));
    ok &= check(d.max_rel_H <= 1e-8, "figure-eight |dH/H| <= 1e-8");
    ok &= check(d.max_abs_I <= 1e-9, "figure-eight |dI| <= 1e-9");

    const InitialCondition lg = lagrange_circular(Masses{1, 1, 1}, 1.0);
    const DenseTrajectory tl = integrate(lg.masses, lg.state, 3.0 * *lg.period, {});
    double rho_drift = 0.0;
    for (const BodyState& s : tl.states) {
        const PairwiseGeometry g = pairwise_geometry(s);
        for (int i = 0; i < 3; ++i) rho_drift = std::max(rho_drift, std::abs(g.rho[i] - 1.0));
    }
    note("Lagrange 3 periods: max rho drift " + format_double(rho_drift));
    ok &= check(tl.termination == Termination::completed, "Lagrange run completes");
    ok &= check(rho_drift <= 1e-8, "Lagrange rho drift <= 1e-8 rel");
    return ok;
}

// ---- criteria 4 and 5 ------------------------------------------------------

bool deadline_sweep(const std::string& experiment, int count, int free_fall, std::uint64_t seed,
                    const std::string& leaf) {
    nlohmann::json j{
        {"masses", {1.0, 1.0, 1.0}},
        {"initial_condition",
         {{"sampler",
           {{"seed", seed},
            {"zero_momentum", experiment == "thm1"},
            {"antisymmetric", experiment == "thm3"},
            {"negative_energy", true}}}}},
        {"sweep",
         {{"experiment", experiment}, {"count", count}, {"free_fall_count", free_fall},
          {"seed", seed}}}};
    const Scenario s = parse_scenario(j);
    const auto dir = out_dir(leaf);
    const RunResult r = run_command("sweep", s, dir, {}, 2);
    bool ok = check(r.exit_code == exit_ok, "sweep exit code 0 (exit 4 never emitted)");

    const nlohmann::json agg = nlohmann::json::parse(slurp(dir / "aggregate.json"));
    const int violations = agg.at("outcomes").at("Violation").get<int>();
    const int events = agg.at("outcomes").at("EventFound").get<int>();
    const int stops = agg.at("outcomes").at("CollisionStop").get<int>();
    const int hypo = agg.at("hypothesis_not_met").get<int>();
    note(experiment + ": " + std::to_string(events) + " events, " + std::to_string(stops) +
         " collision stops, " + std::to_string(violations) + " violations, " +
         std::to_string(hypo) + " hypothesis failures");
    ok &= check(violations == 0, "zero violations");
    ok &= check(hypo == 0, "every sampled state satisfied the hypotheses");
    ok &= check(events + stops == count + free_fall, "every run classified");

    // every event within its deadline; every stop before it
    const nlohmann::json reports = nlohmann::json::parse(slurp(dir / "reports.json"));
    for (const auto& row : reports.at("reports")) {
        const auto& rep = row.at("report");
        const double bound = rep.at("bound_time").get<double>();
        if (rep.at("outcome") == "EventFound")
            ok &= rep.at("event").at("t").get<double>() <= bound;
        else
            ok &= rep.at("t_stop").get<double>() <= bound;
    }
    return check(ok, "all outcomes within the deadline");
}

bool theorem1_experiment() {
    bool ok = deadline_sweep("thm1", 200, 50, 424242, "thm1_sweep");

    // figure-eight: detector time against a 10^4-point fine-grid scan
    const InitialCondition f8 = figure_eight();
    const TheoremReport rep = verify_theorem1(f8.masses, f8.state);
    ok &= check(rep.outcome == TheoremOutcome::event_found, "figure-eight finds a syzygy");
    if (rep.event) {
        const DenseTrajectory traj = integrate(f8.masses, f8.state, rep.bound_time, {});
        const int N = 10000;
        double t_grid = -1.0, prev = mass_weighted_frame(f8.masses, traj.states.front()).delta1;
        for (int i = 1; i <= N; ++i) {
            const double t =
                traj.span_begin() + (traj.span_end() - traj.span_begin()) * (double(i) / N);
            const double cur = mass_weighted_frame(f8.masses, dense_eval(traj, t)).delta1;
            if ((prev < 0.0) != (cur < 0.0)) {
                t_grid = refine_event_time(
                    traj, t - (traj.span_end() - traj.span_begin()) / N, t,
                    [&](const BodyState& st) { return mass_weighted_frame(f8.masses, st).delta1; });
                break;
            }
            prev = cur;
        }
        note("figure-eight first syzygy: t0 = " + format_double(rep.event->t) +
             ", fine grid = " + format_double(t_grid) + ", T1 = " +
             format_double(rep.bound_time));
        ok &= check(rep.event->t <= rep.bound_time, "t0 <= T1");
        ok &= check(std::abs(rep.event->t - t_grid) <= 1e-9, "matches fine grid within 1e-9");
    }
    return ok;
}

bool theorem3_experiment() { return deadline_sweep("thm3", 200, 0, 535353, "thm3_sweep"); }

// ---- criterion 6 -----------------------------------------------------------

bool theorem2_machinery() {
    bool ok = true;

    // systemof3 on all fixtures
    const InitialCondition fixtures[3] = {lagrange_circular(Masses{1, 1, 1}, 1.0),
                                          euler_circular(Masses{1, 1, 1}, 1, 1.0),
                                          figure_eight()};
    for (const InitialCondition& ic : fixtures) {
        const DenseTrajectory traj =
            integrate(ic.masses, ic.state, 1.001 * *ic.period, tight_integrator_config());
        const AreaDerivativeCheck adc = area_derivative_check(traj);
        note("systemof3 on " + ic.provenance + ": rel " + format_double(adc.max_rel));
        ok &= check(adc.max_rel <= 1e-6, "systemof3 FD residual <= 1e-6 on " + ic.provenance);
    }

    // Lagrange: 10^3 random theta, all not rigid with S ~ 0
    const InitialCondition lg = fixtures[0];
    const DenseTrajectory tl =
        integrate(lg.masses, lg.state, 1.001 * *lg.period, tight_integrator_config());
    Rng rng(606);
    double worst_S = 0.0;
    int rigid_count = 0;
    for (int k = 0; k < 1000; ++k) {
        Eigen::Vector3d raw(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        raw -= Eigen::Vector3d::Constant(raw.sum() / 3.0);
        if (raw.cwiseAbs().maxCoeff() < 1e-6) continue;
        const RigidityResult r =
            theta_rigidity_check(tl, *lg.period, ThetaVector::canonical(raw), 512);
        if (r.verdict == Rigidity::rigid) ++rigid_count;
        worst_S = std::max({worst_S, std::abs(r.min_S) / r.scale, std::abs(r.max_S) / r.scale});
    }
    note("Lagrange: rigid verdicts " + std::to_string(rigid_count) + ", max |S|/scale " +
         format_double(worst_S));
    ok &= check(rigid_count == 0, "Lagrange not rigid for any random theta");
    ok &= check(worst_S <= 1e-10, "Lagrange S identically zero within 1e-10");

    // Euler: certificate found, delta1 zero at every sample
    const InitialCondition eu = fixtures[1];
    const DenseTrajectory te =
        integrate(eu.masses, eu.state, 1.001 * *eu.period, tight_integrator_config());
    const auto theta = find_theta(te, *eu.period);
    ok &= check(theta.has_value(), "find_theta succeeds on the Euler orbit");
    double d1_max = 0.0;
    const double scale2 = position_scale(eu.state) * position_scale(eu.state);
    for (int i = 0; i <= 4096; ++i) {
        const double t = te.span_begin() + *eu.period * (double(i) / 4096);
        d1_max = std::max(d1_max,
                          std::abs(mass_weighted_frame(eu.masses, dense_eval(te, t)).delta1));
    }
    note("Euler max |delta1| over samples: " + format_double(d1_max));
    ok &= check(d1_max <= 1e-10 * scale2, "Euler |delta1| <= 1e-10 * scale^2 at every sample");

    // pointwise derivative identity with a generic theta on the figure-eight
    const InitialCondition f8 = fixtures[2];
    const DenseTrajectory tf =
        integrate(f8.masses, f8.state, 1.001 * *f8.period, tight_integrator_config());
    const ThetaVector th = ThetaVector::canonical(Eigen::Vector3d(0.3, -0.9, 0.5));
    const double h = 1e-4 * *f8.period;
    auto P = [&](double t) {
        const MassWeightedFrame f = mass_weighted_frame(f8.masses, dense_eval(tf, t));
        return th.theta[0] * f.S1 + th.theta[1] * f.S2 + th.theta[2] * f.S3;  // equal masses
    };
    double max_res = 0.0, max_abs = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double t =
            tf.span_begin() + 2 * h + (*f8.period - 4 * h) * (double(i) / 199);
        const BodyState s = dense_eval(tf, t);
        const double rhs = mass_weighted_frame(f8.masses, s).delta1 * rigidity_sum(th, s);
        const double lhs = (-P(t + 2 * h) + 8 * P(t + h) - 8 * P(t - h) + P(t - 2 * h)) / (12 * h);
        max_res = std::max(max_res, std::abs(lhs - rhs));
        max_abs = std::max(max_abs, std::abs(rhs));
    }
    note("pointwise d/dt(sum theta_i S_i/m_i) = delta1 S: rel " +
         format_double(max_res / max_abs));
    ok &= check(max_res <= 1e-6 * max_abs, "pointwise identity rel err <= 1e-6");

    // closed-loop integral over the Lagrange period vanishes
    const ThetaVector thl = ThetaVector::canonical(Eigen::Vector3d(1, 0, 0));
    double integral = 0.0;
    {
        const int n = 4096;
        const double a = tl.span_begin(), b = a + *lg.period;
        auto f = [&](double t) {
            const BodyState s = dense_eval(tl, t);
            return mass_weighted_frame(lg.masses, s).delta1 * rigidity_sum(thl, s);
        };
        double acc = f(a) + f(b);
        for (int i = 1; i < n; ++i) acc += f(a + (b - a) * i / n) * (i % 2 ? 4.0 : 2.0);
        integral = acc * (b - a) / n / 3.0;
    }
    note("Lagrange loop integral of delta1*S: " + format_double(integral));
    ok &= check(std::abs(integral) <= 1e-10, "loop integral zero within 1e-10");
    return ok;
}

// ---- criterion 7 -----------------------------------------------------------

bool sturm_hill_diagnostics() {
    const InitialCondition f8 = figure_eight();
    const DenseTrajectory traj =
        integrate(f8.masses, f8.state, *f8.period, tight_integrator_config());
    const ScanResult scan = scan_events(traj, Monitored::delta1);
    bool ok = check(scan.events.size() >= 3, "enough syzygies to form windows");

    const double inf = std::numeric_limits<double>::infinity();
    double worst_eta = inf, worst_trace = inf, worst_D = inf, worst_hill = 0.0, D_scale = 1.0;
    for (std::size_t w = 0; w + 1 < scan.events.size() && w < 3; ++w) {
        const double a = scan.events[w].t, b = scan.events[w + 1].t, gap = b - a;
        const SturmDiagnostic sd = sturm_diagnostic(traj, a + 0.05 * gap, b - 0.05 * gap, 128);
        worst_eta = std::min(worst_eta, sd.min_margin_eta);
        worst_trace = std::min(worst_trace, sd.min_margin_trace / sd.zeta_sq);
        worst_D = std::min(worst_D, sd.min_discriminant);
        D_scale = std::max(D_scale, sd.max_abs_discriminant);
        worst_hill = std::max(worst_hill, sd.max_rel_hill);
    }
    note("windows: min eta margin " + format_double(worst_eta) + ", min trace margin/zeta^2 " +
         format_double(worst_trace) + ", min D " + format_double(worst_D) + ", hill rel " +
         format_double(worst_hill));
    ok &= check(worst_eta >= -1e-10, "eta <= Tr(A)/2 + 1e-10");
    ok &= check(worst_trace >= -1e-10, "Tr(A)/2 <= -alpha^3/(2 Sigma^2) (1 - 1e-10)");
    ok &= check(worst_D >= -1e-10 * D_scale, "discriminant >= -1e-10 * scale");
    ok &= check(worst_hill <= 1e-5, "delta'' = eta delta FD rel err <= 1e-5");

    const IdentityCheckSeries ids = trajectory_identity_checks(traj);
    note("eqdf FD rel err: " + format_double(ids.max_rel_eqdf));
    ok &= check(ids.max_rel_eqdf <= 1e-6, "delta1'' identity FD rel err <= 1e-6");
    return ok;
}

// ---- criterion 8 -----------------------------------------------------------

bool determinism_and_interfaces() {
    nlohmann::json j{{"masses", {1.0, 1.0, 1.0}},
                     {"initial_condition",
                      {{"sampler",
                        {{"seed", 11}, {"zero_momentum", true}, {"negative_energy", true}}}}},
                     {"sweep",
                      {{"experiment", "thm1"}, {"count", 12}, {"free_fall_count", 3},
                       {"seed", 11}}}};
    const Scenario s = parse_scenario(j);

    std::vector<std::string> agg, rep, man;
    for (int workers : {1, 2, 4}) {
        const auto dir = out_dir("det_w" + std::to_string(workers));
        const RunResult r = run_command("sweep", s, dir, {}, workers);
        if (r.exit_code != exit_ok) return check(false, "sweep run failed");
        agg.push_back(slurp(dir / "aggregate.json"));
        rep.push_back(slurp(dir / "reports.json"));
        man.push_back(slurp(dir / "manifest.json"));
    }
    // repeat at the first worker count
    {
        const auto dir = out_dir("det_repeat");
        run_command("sweep", s, dir, {}, 1);
        agg.push_back(slurp(dir / "aggregate.json"));
        rep.push_back(slurp(dir / "reports.json"));
        man.push_back(slurp(dir / "manifest.json"));
    }
    bool ok = true;
    for (std::size_t i = 1; i < agg.size(); ++i) {
        ok &= check(agg[i] == agg[0], "aggregate.json bytes identical");
        ok &= check(rep[i] == rep[0], "reports.json bytes identical");
        ok &= check(man[i] == man[0], "manifest.json bytes identical");
    }
    note("sweep outputs byte-identical across workers {1,2,4} and a repeated run");

    // fixed schemas
    ok &= check(events_csv({}) == "t,kind,middle_body,delta1,delta2,H,I,grazing\n",
                "events CSV header bit-exact");
    {
        Scenario sf = parse_scenario(nlohmann::json{
            {"masses", {1.0, 1.0, 1.0}}, {"initial_condition", {{"fixture", "figure_eight"}}},
            {"simulate", {{"t_end", 1.0}, {"samples", 5}}}});
        const auto dir = out_dir("schemas");
        const RunResult r = run_command("simulate", sf, dir);
        ok &= check(r.exit_code == exit_ok, "simulate exits 0");
        const std::string csv = slurp(dir / "trajectory.csv");
        ok &= check(csv.rfind("t,x1,y1,x2,y2,x3,y3,vx1,vy1,vx2,vy2,vx3,vy3,H,I,delta1,delta2\n",
                              0) == 0,
                    "trajectory CSV header bit-exact");
        const nlohmann::json drift = nlohmann::json::parse(slurp(dir / "drift.json"));
        ok &= check(drift.contains("schema_version") && drift.contains("max_rel_H"),
                    "drift.json schema");
        const nlohmann::json manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
        ok &= check(manifest.at("files").size() >= 3, "manifest lists outputs");
    }

    // exit codes: 0 event found, 2 hypothesis, 3 collision
    {
        Scenario s8 = parse_scenario(nlohmann::json{
            {"masses", {1.0, 1.0, 1.0}}, {"initial_condition", {{"fixture", "figure_eight"}}}});
        ok &= check(run_command("verify-thm1", s8, out_dir("ec0")).exit_code == exit_ok,
                    "exit 0 on success");
        Scenario sl = parse_scenario(nlohmann::json{
            {"masses", {1.0, 1.0, 1.0}},
            {"initial_condition", {{"fixture", "lagrange_circular"}}}});
        ok &= check(run_command("verify-thm1", sl, out_dir("ec2")).exit_code ==
                        exit_hypothesis_not_met,
                    "exit 2 on hypothesis failure");
        Scenario sc = parse_scenario(nlohmann::json{
            {"masses", {1.0, 1.0, 1.0}},
            {"initial_condition",
             {{"state",
               {{"positions", {{-1.0, 0.0}, {1.0, 0.0}, {0.0, 40.0}}},
                {"velocities", {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 0.0}}}}}}},
            {"simulate", {{"t_end", 50.0}}}});
        ok &= check(run_command("simulate", sc, out_dir("ec3")).exit_code == exit_collision_stop,
                    "exit 3 on collision stop");
    }
    return ok;
}

}  // namespace

int main() {
    std::printf("== acceptance suite ==\n");
    criterion(1, "algebraic identity suite", algebraic_identity_suite);
    criterion(2, "lemma bound and minimisation oracle", lemma_bound);
    criterion(3, "conservation on canonical orbits", conservation);
    criterion(4, "theorem 1 experiment (zero angular momentum)", theorem1_experiment);
    criterion(5, "theorem 3 experiment (antisymmetric start)", theorem3_experiment);
    criterion(6, "theorem 2 machinery (theta-rigidity)", theorem2_machinery);
    criterion(7, "Sturm/Hill diagnostics", sturm_hill_diagnostics);
    criterion(8, "determinism and interfaces", determinism_and_interfaces);
    if (g_failures == 0)
        std::printf("== all criteria passed ==\n");
    else
        std::printf("== %d criterion/criteria FAILED ==\n", g_failures);
    return g_failures;
}
