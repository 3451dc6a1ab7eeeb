#include "syzygy/scenario.hpp"

#include <fstream>
#include <set>

namespace syzygy {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ScenarioError("scenario: " + path + ": " + msg);
}

void require_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& item : j.items())
        if (!allowed.count(item.key())) fail(path, "unknown field '" + item.key() + "'");
}

double get_num(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

Vec2<double> get_vec2(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected [x, y]");
    return Vec2<double>(get_num(j[0], path + "[0]"), get_num(j[1], path + "[1]"));
}

}  // namespace

Scenario parse_scenario(const json& j) {
    Scenario s;
    require_keys(j, "$",
                 {"masses", "initial_condition", "integrator", "detector", "simulate", "theorem2",
                  "minf", "sweep"});

    if (!j.contains("masses")) fail("$", "missing required field 'masses'");
    const json& jm = j.at("masses");
    if (!jm.is_array() || jm.size() != 3) fail("$.masses", "expected [m1, m2, m3]");
    s.masses = Masses{get_num(jm[0], "$.masses[0]"), get_num(jm[1], "$.masses[1]"),
                      get_num(jm[2], "$.masses[2]")};
    if (!(s.masses.m1 > 0.0 && s.masses.m2 > 0.0 && s.masses.m3 > 0.0))
        fail("$.masses", "masses must be positive");

    if (!j.contains("initial_condition")) fail("$", "missing required field 'initial_condition'");
    const json& jic = j.at("initial_condition");
    require_keys(jic, "$.initial_condition",
                 {"fixture", "side", "central", "scale", "state", "sampler"});
    const int sources = static_cast<int>(jic.contains("fixture")) +
                        static_cast<int>(jic.contains("state")) +
                        static_cast<int>(jic.contains("sampler"));
    if (sources != 1)
        fail("$.initial_condition", "exactly one of 'fixture', 'state', 'sampler' is required");

    if (jic.contains("fixture")) {
        if (!jic.at("fixture").is_string()) fail("$.initial_condition.fixture", "expected a string");
        s.fixture = jic.at("fixture").get<std::string>();
        if (*s.fixture != "figure_eight" && *s.fixture != "lagrange_circular" &&
            *s.fixture != "euler_circular")
            fail("$.initial_condition.fixture", "unknown fixture '" + *s.fixture + "'");
        if (jic.contains("side")) s.fixture_side = get_num(jic.at("side"), "$.initial_condition.side");
        if (jic.contains("central")) {
            if (!jic.at("central").is_number_integer())
                fail("$.initial_condition.central", "expected an integer");
            s.fixture_central = jic.at("central").get<int>();
        }
        if (jic.contains("scale"))
            s.fixture_scale = get_num(jic.at("scale"), "$.initial_condition.scale");
    } else if (jic.contains("state")) {
        const json& js = jic.at("state");
        require_keys(js, "$.initial_condition.state", {"t", "positions", "velocities"});
        BodyState st;
        if (js.contains("t")) st.t = get_num(js.at("t"), "$.initial_condition.state.t");
        for (const char* key : {"positions", "velocities"}) {
            if (!js.contains(key))
                fail("$.initial_condition.state", std::string("missing field '") + key + "'");
            const json& arr = js.at(key);
            const std::string path = std::string("$.initial_condition.state.") + key;
            if (!arr.is_array() || arr.size() != 3) fail(path, "expected three [x, y] pairs");
            for (int i = 0; i < 3; ++i) {
                const Vec2<double> v = get_vec2(arr[i], path + "[" + std::to_string(i) + "]");
                if (std::string(key) == "positions")
                    st.r(i) = v;
                else
                    st.v(i) = v;
            }
        }
        s.state = st;
    } else {
        const json& js = jic.at("sampler");
        require_keys(js, "$.initial_condition.sampler",
                     {"seed", "negative_energy", "zero_momentum", "antisymmetric", "free_fall",
                      "min_separation", "box_half_width"});
        SamplerSpec spec;
        spec.constraints.masses = s.masses;
        if (js.contains("seed")) {
            if (!js.at("seed").is_number_unsigned() && !js.at("seed").is_number_integer())
                fail("$.initial_condition.sampler.seed", "expected an integer");
            spec.seed = js.at("seed").get<std::uint64_t>();
        }
        auto get_bool = [&](const char* key, bool dflt) {
            if (!js.contains(key)) return dflt;
            if (!js.at(key).is_boolean())
                fail("$.initial_condition.sampler." + std::string(key), "expected a boolean");
            return js.at(key).get<bool>();
        };
        spec.constraints.negative_energy = get_bool("negative_energy", false);
        spec.constraints.zero_momentum = get_bool("zero_momentum", false);
        spec.constraints.antisymmetric = get_bool("antisymmetric", false);
        spec.constraints.free_fall = get_bool("free_fall", false);
        if (js.contains("min_separation"))
            spec.constraints.min_separation =
                get_num(js.at("min_separation"), "$.initial_condition.sampler.min_separation");
        if (js.contains("box_half_width"))
            spec.constraints.box_half_width =
                get_num(js.at("box_half_width"), "$.initial_condition.sampler.box_half_width");
        s.sampler = spec;
    }

    if (j.contains("integrator")) {
        const json& ji = j.at("integrator");
        require_keys(ji, "$.integrator",
                     {"rtol", "atol", "initial_step", "max_steps", "collision_factor"});
        if (ji.contains("rtol")) s.integrator.rtol = get_num(ji.at("rtol"), "$.integrator.rtol");
        if (ji.contains("atol")) s.integrator.atol = get_num(ji.at("atol"), "$.integrator.atol");
        if (ji.contains("initial_step"))
            s.integrator.initial_step = get_num(ji.at("initial_step"), "$.integrator.initial_step");
        if (ji.contains("max_steps")) s.integrator.max_steps = ji.at("max_steps").get<long>();
        if (ji.contains("collision_factor"))
            s.integrator.collision_factor =
                get_num(ji.at("collision_factor"), "$.integrator.collision_factor");
        if (!(s.integrator.rtol > 0.0 && s.integrator.rtol < 1e-2))
            fail("$.integrator.rtol", "must be in (0, 1e-2)");
        if (!(s.integrator.atol > 0.0)) fail("$.integrator.atol", "must be positive");
    }

    if (j.contains("detector")) {
        const json& jd = j.at("detector");
        require_keys(jd, "$.detector",
                     {"tol_event_factor", "tol_graze_factor", "samples_per_step",
                      "simultaneous_tol"});
        if (jd.contains("tol_event_factor"))
            s.detector.tol_event_factor =
                get_num(jd.at("tol_event_factor"), "$.detector.tol_event_factor");
        if (jd.contains("tol_graze_factor"))
            s.detector.tol_graze_factor =
                get_num(jd.at("tol_graze_factor"), "$.detector.tol_graze_factor");
        if (jd.contains("samples_per_step"))
            s.detector.samples_per_step = jd.at("samples_per_step").get<int>();
        if (jd.contains("simultaneous_tol"))
            s.detector.simultaneous_tol =
                get_num(jd.at("simultaneous_tol"), "$.detector.simultaneous_tol");
    }

    if (j.contains("simulate")) {
        const json& js = j.at("simulate");
        require_keys(js, "$.simulate", {"t_end", "samples"});
        if (js.contains("t_end")) s.simulate.t_end = get_num(js.at("t_end"), "$.simulate.t_end");
        if (js.contains("samples")) s.simulate.samples = js.at("samples").get<int>();
        if (!(s.simulate.t_end > 0.0)) fail("$.simulate.t_end", "must be positive");
        if (s.simulate.samples < 2) fail("$.simulate.samples", "must be at least 2");
    }

    if (j.contains("theorem2")) {
        const json& jt = j.at("theorem2");
        require_keys(jt, "$.theorem2", {"theta", "period", "grid"});
        if (jt.contains("theta")) {
            const json& th = jt.at("theta");
            if (!th.is_array() || th.size() != 3) fail("$.theorem2.theta", "expected [t1, t2, t3]");
            s.theorem2.theta = Eigen::Vector3d(get_num(th[0], "$.theorem2.theta[0]"),
                                               get_num(th[1], "$.theorem2.theta[1]"),
                                               get_num(th[2], "$.theorem2.theta[2]"));
        }
        if (jt.contains("period"))
            s.theorem2.period = get_num(jt.at("period"), "$.theorem2.period");
        if (jt.contains("grid")) s.theorem2.grid = jt.at("grid").get<int>();
        if (s.theorem2.period && !(*s.theorem2.period > 0.0))
            fail("$.theorem2.period", "must be positive");
        if (s.theorem2.grid < 16) fail("$.theorem2.grid", "must be at least 16");
    }

    if (j.contains("minf")) {
        const json& jm2 = j.at("minf");
        require_keys(jm2, "$.minf", {"s", "samples", "seed"});
        if (jm2.contains("s")) s.minf.s = get_num(jm2.at("s"), "$.minf.s");
        if (jm2.contains("samples")) s.minf.samples = jm2.at("samples").get<long>();
        if (jm2.contains("seed")) s.minf.seed = jm2.at("seed").get<std::uint64_t>();
        if (!(s.minf.s > 0.0)) fail("$.minf.s", "must be positive");
        if (s.minf.samples < 1) fail("$.minf.samples", "must be positive");
    }

    if (j.contains("sweep")) {
        const json& jw = j.at("sweep");
        require_keys(jw, "$.sweep", {"experiment", "count", "free_fall_count", "seed"});
        if (jw.contains("experiment")) {
            s.sweep.experiment = jw.at("experiment").get<std::string>();
            if (s.sweep.experiment != "thm1" && s.sweep.experiment != "thm3")
                fail("$.sweep.experiment", "must be 'thm1' or 'thm3'");
        }
        if (jw.contains("count")) s.sweep.count = jw.at("count").get<int>();
        if (jw.contains("free_fall_count"))
            s.sweep.free_fall_count = jw.at("free_fall_count").get<int>();
        if (jw.contains("seed")) s.sweep.seed = jw.at("seed").get<std::uint64_t>();
        if (s.sweep.count < 0) fail("$.sweep.count", "must be nonnegative");
        if (s.sweep.free_fall_count < 0) fail("$.sweep.free_fall_count", "must be nonnegative");
        if (s.sweep.count + s.sweep.free_fall_count < 1)
            fail("$.sweep", "count + free_fall_count must be at least 1");
    }

    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ScenarioError("scenario: cannot open " + path.string());
    json j;
    try {
        j = json::parse(f);
    } catch (const json::parse_error& e) {
        throw ScenarioError("scenario: " + path.string() + ": " + e.what());
    }
    return parse_scenario(j);
}

nlohmann::json canonical_json(const Scenario& s) {
    json j;
    j["masses"] = {s.masses.m1, s.masses.m2, s.masses.m3};

    json jic;
    if (s.fixture) {
        jic["fixture"] = *s.fixture;
        if (*s.fixture == "lagrange_circular") jic["side"] = s.fixture_side;
        if (*s.fixture == "euler_circular") {
            jic["central"] = s.fixture_central;
            jic["scale"] = s.fixture_scale;
        }
    } else if (s.state) {
        json js;
        js["t"] = s.state->t;
        js["positions"] = {{s.state->r1.x(), s.state->r1.y()},
                           {s.state->r2.x(), s.state->r2.y()},
                           {s.state->r3.x(), s.state->r3.y()}};
        js["velocities"] = {{s.state->v1.x(), s.state->v1.y()},
                            {s.state->v2.x(), s.state->v2.y()},
                            {s.state->v3.x(), s.state->v3.y()}};
        jic["state"] = js;
    } else if (s.sampler) {
        json js;
        js["seed"] = s.sampler->seed;
        js["negative_energy"] = s.sampler->constraints.negative_energy;
        js["zero_momentum"] = s.sampler->constraints.zero_momentum;
        js["antisymmetric"] = s.sampler->constraints.antisymmetric;
        js["free_fall"] = s.sampler->constraints.free_fall;
        js["min_separation"] = s.sampler->constraints.min_separation;
        js["box_half_width"] = s.sampler->constraints.box_half_width;
        jic["sampler"] = js;
    }
    j["initial_condition"] = jic;

    j["integrator"] = {{"rtol", s.integrator.rtol},
                       {"atol", s.integrator.atol},
                       {"initial_step", s.integrator.initial_step},
                       {"max_steps", s.integrator.max_steps},
                       {"collision_factor", s.integrator.collision_factor}};
    j["detector"] = {{"tol_event_factor", s.detector.tol_event_factor},
                     {"tol_graze_factor", s.detector.tol_graze_factor},
                     {"samples_per_step", s.detector.samples_per_step},
                     {"simultaneous_tol", s.detector.simultaneous_tol}};
    j["simulate"] = {{"t_end", s.simulate.t_end}, {"samples", s.simulate.samples}};

    json jt;
    if (s.theorem2.theta)
        jt["theta"] = {(*s.theorem2.theta)[0], (*s.theorem2.theta)[1], (*s.theorem2.theta)[2]};
    if (s.theorem2.period) jt["period"] = *s.theorem2.period;
    jt["grid"] = s.theorem2.grid;
    j["theorem2"] = jt;

    j["minf"] = {{"s", s.minf.s}, {"samples", s.minf.samples}, {"seed", s.minf.seed}};
    j["sweep"] = {{"experiment", s.sweep.experiment},
                  {"count", s.sweep.count},
                  {"free_fall_count", s.sweep.free_fall_count},
                  {"seed", s.sweep.seed}};
    return j;
}

InitialCondition resolve_initial_condition(const Scenario& s,
                                           std::optional<std::uint64_t> seed_override,
                                           std::uint64_t index) {
    if (s.fixture) {
        if (*s.fixture == "figure_eight") return figure_eight();
        if (*s.fixture == "lagrange_circular") return lagrange_circular(s.masses, s.fixture_side);
        return euler_circular(s.masses, s.fixture_central, s.fixture_scale);
    }
    if (s.state) {
        InitialCondition ic;
        ic.masses = s.masses;
        ic.state = reduce_to_barycentric(s.masses, *s.state);
        ic.provenance = "scenario_state";
        return ic;
    }
    SamplerSpec spec = *s.sampler;
    if (seed_override) spec.seed = *seed_override;
    spec.constraints.masses = s.masses;
    return random_ic(Rng::derive(spec.seed, index), spec.constraints);
}

}  // namespace syzygy
