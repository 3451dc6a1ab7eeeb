#include "syzygy/events.hpp"

#include <algorithm>
#include <cmath>

namespace syzygy {

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::position_syzygy: return "PositionSyzygy";
        case EventKind::velocity_alignment: return "VelocityAlignment";
        case EventKind::simultaneous: return "Simultaneous";
    }
    return "unknown";
}

namespace {

double delta1_at(const Masses& m, const BodyState& s) { return mass_weighted_frame(m, s).delta1; }
double delta2_at(const Masses& m, const BodyState& s) { return mass_weighted_frame(m, s).delta2; }

struct RawEvent {
    double t;
    bool grazing;
};

/// Scan one monitored function over the whole trajectory: sample each step,
/// refine sign changes, collect shallow grazes.
std::vector<RawEvent> scan_one(const DenseTrajectory& traj, const DetectorConfig& cfg,
                               const std::function<double(const BodyState&)>& f, double tol_event,
                               double tol_graze) {
    std::vector<RawEvent> out;
    const int K = std::max(2, cfg.samples_per_step);

    // Collect sample times/values across all steps (step endpoints included once).
    std::vector<double> ts, fs;
    ts.reserve(traj.steps.size() * K + 1);
    fs.reserve(traj.steps.size() * K + 1);
    ts.push_back(traj.times.front());
    fs.push_back(f(traj.states.front()));
    for (const StepRecord& rec : traj.steps) {
        for (int j = 1; j <= K; ++j) {
            const double t = rec.t0 + rec.h * (static_cast<double>(j) / K);
            ts.push_back(t);
            fs.push_back(f(dense_eval(traj, t)));
        }
    }

    auto refine = [&](double lo, double hi) {
        return refine_event_time(traj, lo, hi,
                                 [&](const BodyState& s) { return f(s); });
    };

    // Boundary zero at the very start (a trajectory may open on a syzygy).
    // No sign change brackets it, so it stays uncertified.
    if (std::abs(fs.front()) <= tol_event) out.push_back({ts.front(), true});

    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const double fa = fs[i], fb = fs[i + 1];
        if (fa == 0.0) continue;  // handled as the right end of the previous interval or boundary
        if (fb == 0.0) {
            out.push_back({ts[i + 1], false});
            continue;
        }
        if ((fa < 0.0) != (fb < 0.0)) {
            out.push_back({refine(ts[i], ts[i + 1]), false});
            continue;
        }
        // Shallow graze: interior local minimum of |f| below the graze tolerance.
        if (i >= 1 && std::abs(fs[i]) <= tol_graze && std::abs(fs[i]) < std::abs(fs[i - 1]) &&
            std::abs(fs[i]) <= std::abs(fs[i + 1])) {
            // Ternary search for the minimum of |f| around the sample.
            double lo = ts[i - 1], hi = ts[i + 1];
            for (int it = 0; it < 80 && (hi - lo) > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
                const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                if (std::abs(f(dense_eval(traj, m1))) < std::abs(f(dense_eval(traj, m2))))
                    hi = m2;
                else
                    lo = m1;
            }
            const double tmin = 0.5 * (lo + hi);
            if (std::abs(f(dense_eval(traj, tmin))) <= tol_graze) out.push_back({tmin, true});
        }
    }

    // Deduplicate refinements that landed on the same zero.
    std::sort(out.begin(), out.end(), [](const RawEvent& a, const RawEvent& b) { return a.t < b.t; });
    std::vector<RawEvent> dedup;
    const double teps = 10.0 * cfg.simultaneous_tol;
    for (const RawEvent& e : out) {
        if (!dedup.empty() && std::abs(e.t - dedup.back().t) <= teps) {
            if (dedup.back().grazing && !e.grazing) dedup.back() = e;  // prefer certified zeros
            continue;
        }
        dedup.push_back(e);
    }
    return dedup;
}

}  // namespace

double refine_event_time(const DenseTrajectory& traj, double t_lo, double t_hi,
                         const std::function<double(const BodyState&)>& f) {
    double fa = f(dense_eval(traj, t_lo));
    double fb = f(dense_eval(traj, t_hi));
    if (fa == 0.0) return t_lo;
    if (fb == 0.0) return t_hi;
    if ((fa < 0.0) == (fb < 0.0))
        throw NoSignChange("refine_event_time: bracket endpoints have the same sign");

    double a = t_lo, b = t_hi;
    // Bisection with a clamped secant candidate.
    for (int it = 0; it < 200; ++it) {
        const double tol = 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
        if (b - a <= tol) break;
        double mid = 0.5 * (a + b);
        const double sec = (std::abs(fb - fa) > 0.0) ? (a - fa * (b - a) / (fb - fa)) : mid;
        if (sec > a + 0.1 * (b - a) && sec < b - 0.1 * (b - a)) mid = sec;
        const double fm = f(dense_eval(traj, mid));
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    // Return the endpoint with the smaller residual.
    return std::abs(fa) <= std::abs(fb) ? a : b;
}

ScanResult scan_events(const DenseTrajectory& traj, Monitored which, const DetectorConfig& cfg) {
    if (traj.empty()) throw OutOfRange("scan_events: empty trajectory");
    const Masses& m = traj.masses;

    ScanResult res;
    // Magnitude scales from the accepted states (mass-weighted row norms).
    double s1 = 0.0, s2 = 0.0, f1max = 0.0, f2max = 0.0;
    for (const BodyState& s : traj.states) {
        s1 = std::max(s1, delta1_scale(m, s));
        s2 = std::max(s2, delta2_scale(m, s));
        const MassWeightedFrame f = mass_weighted_frame(m, s);
        f1max = std::max(f1max, std::abs(f.delta1));
        f2max = std::max(f2max, std::abs(f.delta2));
    }
    res.delta1_scale = s1;
    res.delta2_scale = s2;
    res.tol_event_delta1 = cfg.tol_event_factor * s1;
    res.tol_event_delta2 = cfg.tol_event_factor * s2;
    res.degenerate_delta1 = f1max < res.tol_event_delta1;
    res.degenerate_delta2 = f2max < res.tol_event_delta2;

    if (traj.steps.empty()) return res;  // single point: nothing to scan

    const bool want1 = (which != Monitored::delta2) && !res.degenerate_delta1;
    const bool want2 = (which != Monitored::delta1) && !res.degenerate_delta2;

    std::vector<RawEvent> ev1, ev2;
    if (want1)
        ev1 = scan_one(traj, cfg, [&](const BodyState& s) { return delta1_at(m, s); },
                       res.tol_event_delta1, cfg.tol_graze_factor * s1);
    if (want2)
        ev2 = scan_one(traj, cfg, [&](const BodyState& s) { return delta2_at(m, s); },
                       res.tol_event_delta2, cfg.tol_graze_factor * s2);

    auto make_event = [&](double t, EventKind kind, bool grazing) {
        Event e;
        e.t = t;
        e.kind = kind;
        e.grazing = grazing;
        const BodyState s = dense_eval(traj, t);
        const MassWeightedFrame f = mass_weighted_frame(m, s);
        e.delta1 = f.delta1;
        e.delta2 = f.delta2;
        e.H = total_energy(m, s);
        e.I = angular_momentum(m, s);
        if (kind != EventKind::velocity_alignment) {
            try {
                e.middle_body = classify_middle_body(m, s);
            } catch (const NotASyzygy&) {
                e.middle_body = std::nullopt;  // grazing pass above the collinearity tolerance
            }
        }
        return e;
    };

    // Merge the two streams; coincident times become a single Simultaneous event.
    std::size_t i = 0, j = 0;
    while (i < ev1.size() || j < ev2.size()) {
        if (i < ev1.size() && j < ev2.size() &&
            std::abs(ev1[i].t - ev2[j].t) <= cfg.simultaneous_tol) {
            res.events.push_back(make_event(std::min(ev1[i].t, ev2[j].t), EventKind::simultaneous,
                                            ev1[i].grazing && ev2[j].grazing));
            ++i;
            ++j;
        } else if (j >= ev2.size() || (i < ev1.size() && ev1[i].t < ev2[j].t)) {
            res.events.push_back(make_event(ev1[i].t, EventKind::position_syzygy, ev1[i].grazing));
            ++i;
        } else {
            res.events.push_back(
                make_event(ev2[j].t, EventKind::velocity_alignment, ev2[j].grazing));
            ++j;
        }
    }
    return res;
}

AntisymmetryIndicator antisymmetry_indicator(const Masses& m, const BodyState& s) {
    const MassWeightedFrame f = mass_weighted_frame(m, s);
    AntisymmetryIndicator out;
    out.delta1 = f.delta1;
    out.delta2 = f.delta2;
    out.value = f.delta1 * f.delta2;

    auto pair_product = [&](int a, int b) {
        const double dp = cross2(s.r(a), s.r(b));
        const double dv = cross2(s.v(a), s.v(b));
        return dp * dv;
    };
    out.pair_products = {pair_product(0, 1), pair_product(1, 2), pair_product(0, 2)};

    const double tol1 = 1e-11 * delta1_scale(m, s);
    const double tol2 = 1e-11 * delta2_scale(m, s);
    out.is_antisymmetric =
        out.value < 0.0 && std::abs(f.delta1) > tol1 && std::abs(f.delta2) > tol2;
    return out;
}

std::optional<int> classify_middle_body(const Masses& m, const BodyState& s) {
    const MassWeightedFrame f = mass_weighted_frame(m, s);
    const double tol = 1e-9 * std::max(delta1_scale(m, s), 1e-300);
    if (std::abs(f.delta1) > tol) throw NotASyzygy("classify_middle_body: state is not collinear");

    // Project onto the dominant separation direction.
    const Vec2<double> dir = (max_pairwise_distance(s) == (s.r2 - s.r1).norm())
                                 ? (s.r2 - s.r1)
                                 : ((s.r1 - s.r3).norm() >= (s.r3 - s.r2).norm() ? (s.r1 - s.r3)
                                                                                 : (s.r3 - s.r2));
    const Vec2<double> u = dir.normalized();
    const std::array<double, 3> proj = {s.r1.dot(u), s.r2.dot(u), s.r3.dot(u)};

    const double span = *std::max_element(proj.begin(), proj.end()) -
                        *std::min_element(proj.begin(), proj.end());
    const double ptol = 1e-9 * std::max(1.0, span);
    for (int i = 0; i < 3; ++i) {
        const int a = (i + 1) % 3, b = (i + 2) % 3;
        if (std::abs(proj[i] - proj[a]) <= ptol || std::abs(proj[i] - proj[b]) <= ptol)
            return std::nullopt;  // coincident projections: degenerate
    }
    for (int i = 0; i < 3; ++i) {
        const int a = (i + 1) % 3, b = (i + 2) % 3;
        if ((proj[i] - proj[a]) * (proj[i] - proj[b]) < 0.0) return i + 1;
    }
    return std::nullopt;
}

}  // namespace syzygy
