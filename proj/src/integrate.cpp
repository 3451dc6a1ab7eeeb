#include "syzygy/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace syzygy {

StateVec pack_state(const BodyState& s) {
    StateVec y;
    y << s.r1, s.r2, s.r3, s.v1, s.v2, s.v3;
    return y;
}

BodyState unpack_state(const StateVec& y, double t) {
    BodyState s;
    s.t = t;
    s.r1 = y.segment<2>(0);
    s.r2 = y.segment<2>(2);
    s.r3 = y.segment<2>(4);
    s.v1 = y.segment<2>(6);
    s.v2 = y.segment<2>(8);
    s.v3 = y.segment<2>(10);
    return s;
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::completed: return "completed";
        case Termination::collision_approach: return "collision_approach";
        case Termination::step_failure: return "step_failure";
        case Termination::max_steps: return "max_steps";
    }
    return "unknown";
}

namespace {

// Dormand-Prince 5(4) coefficients (Hairer, Norsett & Wanner, DOPRI5).
// Stage times are not needed: the system is autonomous.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
// y5 - y4 error weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct Rhs {
    const Masses& m;
    long n_evals = 0;

    StateVec operator()(const StateVec& y) {
        ++n_evals;
        const Vec2<double> r1 = y.segment<2>(0), r2 = y.segment<2>(2), r3 = y.segment<2>(4);
        const Vec2<double> z21 = r2 - r1, z13 = r1 - r3, z32 = r3 - r2;
        const double n21 = z21.norm(), n13 = z13.norm(), n32 = z32.norm();
        const Vec2<double> u21 = z21 / (n21 * n21 * n21);
        const Vec2<double> u13 = z13 / (n13 * n13 * n13);
        const Vec2<double> u32 = z32 / (n32 * n32 * n32);
        StateVec f;
        f.segment<2>(0) = y.segment<2>(6);
        f.segment<2>(2) = y.segment<2>(8);
        f.segment<2>(4) = y.segment<2>(10);
        f.segment<2>(6) = m.m2 * u21 - m.m3 * u13;
        f.segment<2>(8) = m.m3 * u32 - m.m1 * u21;
        f.segment<2>(10) = m.m1 * u13 - m.m2 * u32;
        return f;
    }
};

double min_distance(const StateVec& y) {
    const Vec2<double> r1 = y.segment<2>(0), r2 = y.segment<2>(2), r3 = y.segment<2>(4);
    return std::min({(r3 - r2).norm(), (r1 - r3).norm(), (r2 - r1).norm()});
}

double max_relative_speed(const StateVec& y) {
    const Vec2<double> v1 = y.segment<2>(6), v2 = y.segment<2>(8), v3 = y.segment<2>(10);
    return std::max({(v3 - v2).norm(), (v1 - v3).norm(), (v2 - v1).norm()});
}

double error_norm(const StateVec& err, const StateVec& y0, const StateVec& y1, double atol,
                  double rtol) {
    double acc = 0.0;
    for (int i = 0; i < 12; ++i) {
        const double sk = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double q = err[i] / sk;
        acc += q * q;
    }
    return std::sqrt(acc / 12.0);
}

/// Classic two-trial starting step estimate.
double initial_step_guess(Rhs& rhs, const StateVec& y0, const StateVec& f0, double atol,
                          double rtol, double span) {
    double dnf = 0.0, dny = 0.0;
    for (int i = 0; i < 12; ++i) {
        const double sk = atol + rtol * std::abs(y0[i]);
        dnf += (f0[i] / sk) * (f0[i] / sk);
        dny += (y0[i] / sk) * (y0[i] / sk);
    }
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    h = std::min(h, span);
    const StateVec y1 = y0 + h * f0;
    const StateVec f1 = rhs(y1);
    double der2 = 0.0;
    for (int i = 0; i < 12; ++i) {
        const double sk = atol + rtol * std::abs(y0[i]);
        const double q = (f1[i] - f0[i]) / sk;
        der2 += q * q;
    }
    der2 = std::sqrt(der2) / h;
    const double der12 = std::max(der2, std::sqrt(dnf));
    const double h1 = (der12 <= 1e-15) ? std::max(1e-6, h * 1e-3)
                                       : std::pow(0.01 / der12, 0.2);
    return std::min({100.0 * h, h1, span});
}

}  // namespace

DenseTrajectory integrate(const Masses& m, const BodyState& ic, double t_end,
                          const IntegratorConfig& cfg) {
    if (!(t_end > ic.t)) throw OutOfRange("integrate: t_end must exceed ic.t");
    if (!(cfg.rtol > 0.0 && cfg.rtol < 1e-2) || !(cfg.atol > 0.0))
        throw OutOfRange("integrate: tolerances out of range");

    DenseTrajectory traj;
    traj.masses = m;
    traj.t_start = ic.t;
    traj.t_reached = ic.t;
    traj.H0 = total_energy(m, ic);
    traj.I0 = angular_momentum(m, ic);
    traj.collision_threshold = cfg.collision_factor * max_pairwise_distance(ic);
    traj.min_distance_seen = min_pairwise_distance(ic);
    const double h_denom = std::max(std::abs(traj.H0), 1e-12);

    Rhs rhs{m};
    double t = ic.t;
    StateVec y = pack_state(ic);

    if (min_distance(y) <= traj.collision_threshold) {
        traj.termination = Termination::collision_approach;
        traj.times.push_back(t);
        traj.states.push_back(ic);
        traj.h_drift_rel.push_back(0.0);
        traj.i_drift_abs.push_back(0.0);
        return traj;
    }

    auto record = [&](double tt, const StateVec& yy) {
        const BodyState s = unpack_state(yy, tt);
        traj.times.push_back(tt);
        traj.states.push_back(s);
        traj.h_drift_rel.push_back(std::abs(total_energy(m, s) - traj.H0) / h_denom);
        traj.i_drift_abs.push_back(std::abs(angular_momentum(m, s) - traj.I0));
    };
    record(t, y);

    StateVec k1 = rhs(y);

    // PI controller constants, DOPRI5 defaults.
    const double beta = 0.04, expo1 = 0.2 - beta * 0.75, safe = 0.9;
    const double facc1 = 1.0 / 0.2, facc2 = 1.0 / 10.0;
    double facold = 1e-4;

    const double span = t_end - ic.t;
    double h = cfg.initial_step > 0.0 ? cfg.initial_step
                                      : initial_step_guess(rhs, y, k1, cfg.atol, cfg.rtol, span);
    bool last_rejected = false;

    while (t < t_end) {
        if (traj.n_accepted + traj.n_rejected >= cfg.max_steps) {
            traj.termination = Termination::max_steps;
            break;
        }
        // Guard against stepping blindly across a close approach.
        const double dmin = min_distance(y);
        const double vrel = max_relative_speed(y);
        if (vrel > 0.0) h = std::min(h, 0.1 * dmin / vrel);
        h = std::min(h, t_end - t);
        if (h < 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
            traj.termination = Termination::step_failure;
            break;
        }

        const StateVec k2 = rhs(y + h * (a21 * k1));
        const StateVec k3 = rhs(y + h * (a31 * k1 + a32 * k2));
        const StateVec k4 = rhs(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const StateVec k5 = rhs(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const StateVec k6 = rhs(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const StateVec y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        const StateVec k7 = rhs(y1);  // FSAL

        const StateVec errv = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double err = error_norm(errv, y, y1, cfg.atol, cfg.rtol);

        const double fac11 = std::pow(err, expo1);
        double fac = fac11 / std::pow(facold, beta);
        fac = std::max(facc2, std::min(facc1, fac / safe));
        double hnew = h / fac;

        if (err <= 1.0) {
            facold = std::max(err, 1e-4);
            if (cfg.dense) {
                StepRecord rec;
                rec.t0 = t;
                rec.h = h;
                const StateVec ydiff = y1 - y;
                const StateVec bspl = h * k1 - ydiff;
                rec.rcont.col(0) = y;
                rec.rcont.col(1) = ydiff;
                rec.rcont.col(2) = bspl;
                rec.rcont.col(3) = ydiff - h * k7 - bspl;
                rec.rcont.col(4) =
                    h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
                traj.steps.push_back(rec);
            }
            t += h;
            y = y1;
            k1 = k7;
            ++traj.n_accepted;
            record(t, y);
            traj.t_reached = t;
            const double dnow = min_distance(y);
            traj.min_distance_seen = std::min(traj.min_distance_seen, dnow);
            if (dnow <= traj.collision_threshold) {
                traj.termination = Termination::collision_approach;
                break;
            }
            if (last_rejected) hnew = std::min(std::abs(hnew), std::abs(h));
            last_rejected = false;
            h = hnew;
        } else {
            hnew = h / std::min(facc1, fac11 / safe);
            last_rejected = true;
            ++traj.n_rejected;
            h = hnew;
        }
    }

    // Natural loop exit keeps the default `completed`; breaks set their own
    // reason, which wins even when the final step also reached t_end.
    traj.n_rhs = rhs.n_evals;
    return traj;
}

BodyState dense_eval(const DenseTrajectory& traj, double t) {
    if (traj.empty()) throw OutOfRange("dense_eval: empty trajectory");
    const double lo = traj.times.front(), hi = traj.times.back();
    const double slack = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    if (t < lo - slack || t > hi + slack) throw OutOfRange("dense_eval: time outside span");
    if (traj.steps.empty()) {
        // single-point trajectory or dense output disabled
        if (std::abs(t - lo) <= slack) return traj.states.front();
        if (std::abs(t - hi) <= slack) return traj.states.back();
        throw OutOfRange("dense_eval: trajectory has no dense output");
    }
    // Find the step containing t: first step with t0 + h >= t.
    auto it = std::upper_bound(traj.times.begin(), traj.times.end(), t);
    std::size_t idx = (it == traj.times.begin()) ? 0 : (it - traj.times.begin() - 1);
    idx = std::min(idx, traj.steps.size() - 1);
    const StepRecord& rec = traj.steps[idx];
    const double theta = std::clamp((t - rec.t0) / rec.h, 0.0, 1.0);
    const double th1 = 1.0 - theta;
    const StateVec y = rec.rcont.col(0) +
                       theta * (rec.rcont.col(1) +
                                th1 * (rec.rcont.col(2) +
                                       theta * (rec.rcont.col(3) + th1 * rec.rcont.col(4))));
    return unpack_state(y, t);
}

DriftReport drift_report(const DenseTrajectory& traj) {
    if (traj.empty()) throw OutOfRange("drift_report: empty trajectory");
    DriftReport r;
    for (double v : traj.h_drift_rel) r.max_rel_H = std::max(r.max_rel_H, v);
    for (double v : traj.i_drift_abs) r.max_abs_I = std::max(r.max_abs_I, v);
    return r;
}

}  // namespace syzygy
