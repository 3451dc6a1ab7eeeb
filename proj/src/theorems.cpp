#include "syzygy/theorems.hpp"

#include <algorithm>
#include <cmath>

#include "syzygy/core.hpp"

namespace syzygy {

const char* to_string(TheoremOutcome o) {
    switch (o) {
        case TheoremOutcome::event_found: return "EventFound";
        case TheoremOutcome::collision_stop: return "CollisionStop";
        case TheoremOutcome::violation: return "Violation";
    }
    return "unknown";
}

const char* to_string(Rigidity r) {
    switch (r) {
        case Rigidity::rigid: return "rigid";
        case Rigidity::not_rigid: return "not_rigid";
        case Rigidity::inconclusive: return "inconclusive";
    }
    return "unknown";
}

// ---- minF oracle ---------------------------------------------------------------

MinFResult minF_oracle(const Masses& m, double s, long samples, std::uint64_t seed) {
    if (!(s > 0.0)) throw OutOfRange("minF_oracle: s must be positive");

    const double p1 = m.m3 * m.m2, p2 = m.m1 * m.m3, p3 = m.m2 * m.m1;
    const double q1 = m.m32(), q2 = m.m13(), q3 = m.m21();
    // Simplex vertices of { U(r) = s, r >= 0 }.
    const Eigen::Vector3d V1(s / p1, 0.0, 0.0), V2(0.0, s / p2, 0.0), V3(0.0, 0.0, s / p3);

    auto point = [&](double u, double v) {
        const double w = 1.0 - u - v;
        return Eigen::Vector3d(u * V1 + v * V2 + w * V3);
    };
    auto F = [&](const Eigen::Vector3d& r) {
        return q1 * r[0] * r[0] * r[0] + q2 * r[1] * r[1] * r[1] + q3 * r[2] * r[2] * r[2];
    };

    // Stage 1: uniform barycentric sampling.
    Rng rng(seed);
    double best_u = 1.0 / 3.0, best_v = 1.0 / 3.0;
    double best_F = F(point(best_u, best_v));
    for (long i = 0; i < samples; ++i) {
        double u = rng.uniform01(), v = rng.uniform01();
        if (u + v > 1.0) {
            u = 1.0 - u;
            v = 1.0 - v;
        }
        const double f = F(point(u, v));
        if (f < best_F) {
            best_F = f;
            best_u = u;
            best_v = v;
        }
    }

    // Stage 2: pattern search in the barycentric plane, shrinking step.
    double step = 0.05;
    for (int it = 0; it < 200; ++it) {
        bool improved = false;
        for (const auto& d : {std::pair{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step},
                              {step, -step}, {-step, step}}) {
            const double u = std::clamp(best_u + d.first, 0.0, 1.0);
            const double v = std::clamp(best_v + d.second, 0.0, 1.0 - u);
            const double f = F(point(u, v));
            if (f < best_F) {
                best_F = f;
                best_u = u;
                best_v = v;
                improved = true;
            }
        }
        if (!improved) step *= 0.6;
        if (step < 1e-14) break;
    }

    MinFResult out;
    out.oracle_min = best_F;
    out.oracle_argmin = point(best_u, best_v);
    const double Sigma = sigma_constant(m);
    out.closed_min = s * s * s / (Sigma * Sigma);
    out.closed_argmin = (s / Sigma) * Eigen::Vector3d(std::sqrt(p1 / q1), std::sqrt(p2 / q2),
                                                      std::sqrt(p3 / q3));
    out.rel_gap = std::abs(out.oracle_min - out.closed_min) / out.closed_min;
    if (out.rel_gap > 1e-3)
        throw IntegrationFailure("minF_oracle: sampled minimum disagrees with closed form");
    return out;
}

// ---- theorem 1 / theorem 3 experiments ------------------------------------------

namespace {

TheoremReport run_deadline_experiment(int id, const Masses& m, const BodyState& ic,
                                      double deadline, Monitored which,
                                      const IntegratorConfig& cfg, const DetectorConfig& det) {
    TheoremReport rep;
    rep.theorem_id = id;
    rep.angular_momentum = angular_momentum(m, ic);
    rep.alpha = -total_energy(m, ic);
    rep.bound_time = deadline;

    const DenseTrajectory traj = integrate(m, ic, ic.t + deadline, cfg);
    rep.drift = drift_report(traj);
    rep.min_distance = traj.min_distance_seen;
    rep.t_stop = traj.t_reached;

    const ScanResult scan = scan_events(traj, which, det);
    const bool degenerate =
        (which != Monitored::delta2 && scan.degenerate_delta1) ||
        (which != Monitored::delta1 && scan.degenerate_delta2);
    if (degenerate) {
        // Identically zero determinant: a (generalised) syzygy at every moment.
        Event e;
        e.t = ic.t;
        e.kind = scan.degenerate_delta1 ? EventKind::position_syzygy
                                        : EventKind::velocity_alignment;
        const MassWeightedFrame f = mass_weighted_frame(m, ic);
        e.delta1 = f.delta1;
        e.delta2 = f.delta2;
        e.H = total_energy(m, ic);
        e.I = rep.angular_momentum;
        rep.outcome = TheoremOutcome::event_found;
        rep.event = e;
        return rep;
    }
    if (!scan.events.empty()) {
        rep.outcome = TheoremOutcome::event_found;
        rep.event = scan.events.front();
        return rep;
    }
    switch (traj.termination) {
        case Termination::collision_approach:
            rep.outcome = TheoremOutcome::collision_stop;
            return rep;
        case Termination::completed:
            rep.outcome = TheoremOutcome::violation;
            return rep;
        default:
            throw IntegrationFailure(std::string("theorem experiment: integration ended with ") +
                                     to_string(traj.termination) + " and no event");
    }
}

}  // namespace

TheoremReport verify_theorem1(const Masses& m, const BodyState& ic, const IntegratorConfig& cfg,
                              const DetectorConfig& det) {
    const double H = total_energy(m, ic);
    if (!(H < 0.0)) throw HypothesisNotMet("theorem 1 requires negative energy");
    const double I = angular_momentum(m, ic);
    const double iscale = std::max(1.0, angular_momentum_scale(m, ic));
    if (std::abs(I) > 1e-10 * iscale)
        throw HypothesisNotMet("theorem 1 requires zero angular momentum");
    const EnergyBounds b = energy_bounds(m, -H);
    return run_deadline_experiment(1, m, ic, b.T1, Monitored::delta1, cfg, det);
}

TheoremReport verify_theorem3(const Masses& m, const BodyState& ic, const IntegratorConfig& cfg,
                              const DetectorConfig& det) {
    const double H = total_energy(m, ic);
    if (!(H < 0.0)) throw HypothesisNotMet("theorem 3 requires negative energy");
    if (!antisymmetry_indicator(m, ic).is_antisymmetric)
        throw HypothesisNotMet("theorem 3 requires an antisymmetric initial configuration");
    const EnergyBounds b = energy_bounds(m, -H);
    return run_deadline_experiment(3, m, ic, b.Tgen, Monitored::both, cfg, det);
}

// ---- theta machinery ---------------------------------------------------------------

ThetaVector ThetaVector::canonical(const Eigen::Vector3d& raw) {
    Eigen::Vector3d p = raw - Eigen::Vector3d::Constant(raw.sum() / 3.0);
    const double n = p.cwiseAbs().maxCoeff();
    if (!(n > 0.0))
        throw OutOfRange("ThetaVector: direction is a multiple of (1,1,1)");
    return ThetaVector{p / n};
}

double rigidity_sum(const ThetaVector& th, const BodyState& s) {
    const Vec3<double> rho = pairwise_geometry(s).rho;
    return th.theta[0] * (rho[2] - rho[1]) + th.theta[1] * (rho[0] - rho[2]) +
           th.theta[2] * (rho[1] - rho[0]);
}

namespace {

constexpr double kRigidityTol = 1e-9;

struct PeriodSamples {
    std::vector<double> times;
    std::vector<Vec3<double>> g;  // (rho3-rho2, rho1-rho3, rho2-rho1)
    double rho_scale = 0.0;
};

PeriodSamples sample_period(const DenseTrajectory& traj, double period, int grid) {
    const double t0 = traj.span_begin();
    if (!(period > 0.0) || t0 + period > traj.span_end() + 1e-9 * std::max(1.0, period))
        throw NotPeriodic("period does not fit in the trajectory span");

    PeriodSamples ps;
    for (int i = 0; i <= grid; ++i)
        ps.times.push_back(t0 + period * (static_cast<double>(i) / grid));
    for (double t : traj.times)
        if (t <= t0 + period) ps.times.push_back(t);
    std::sort(ps.times.begin(), ps.times.end());

    ps.g.reserve(ps.times.size());
    for (double t : ps.times) {
        const Vec3<double> rho = pairwise_geometry(dense_eval(traj, t)).rho;
        ps.rho_scale = std::max(ps.rho_scale, rho.maxCoeff());
        ps.g.emplace_back(rho[2] - rho[1], rho[0] - rho[2], rho[1] - rho[0]);
    }
    return ps;
}

double periodicity_residual_of(const DenseTrajectory& traj, double period) {
    const BodyState s0 = traj.states.front();
    const BodyState s1 = dense_eval(traj, traj.span_begin() + period);
    const double rs = std::max(position_scale(s0), 1.0);
    const double vs = std::max(velocity_scale(s0), 1.0);
    double dr = 0.0, dv = 0.0;
    for (int i = 0; i < 3; ++i) {
        dr = std::max(dr, (s0.r(i) - s1.r(i)).norm());
        dv = std::max(dv, (s0.v(i) - s1.v(i)).norm());
    }
    return std::max(dr / rs, dv / vs);
}

}  // namespace

RigidityResult theta_rigidity_check(const DenseTrajectory& traj, double period,
                                    const ThetaVector& theta, int grid) {
    const PeriodSamples ps = sample_period(traj, period, grid);

    RigidityResult res;
    res.scale = ps.rho_scale;
    res.tol = kRigidityTol * res.scale;
    res.min_S = std::numeric_limits<double>::infinity();
    res.max_S = -std::numeric_limits<double>::infinity();
    for (const auto& g : ps.g) {
        const double S = theta.theta.dot(g);
        res.min_S = std::min(res.min_S, S);
        res.max_S = std::max(res.max_S, S);
    }

    if (periodicity_residual_of(traj, period) > 1e-8) {
        res.verdict = Rigidity::inconclusive;  // rigidity is a statement about all t
        return res;
    }
    res.verdict = (res.min_S >= -res.tol && res.max_S > 10.0 * res.tol) ? Rigidity::rigid
                                                                        : Rigidity::not_rigid;
    return res;
}

std::optional<ThetaVector> find_theta(const DenseTrajectory& traj, double period, int grid) {
    if (periodicity_residual_of(traj, period) > 1e-8)
        throw NotPeriodic("find_theta: trajectory does not close to 1e-8 over the period");
    const PeriodSamples ps = sample_period(traj, period, grid);

    // Work in the zero-sum plane: every sample allows the half-circle of
    // directions making a nonnegative inner product. Intersect the arcs.
    const Eigen::Vector3d e1 = Eigen::Vector3d(1, -1, 0).normalized();
    const Eigen::Vector3d e2 = Eigen::Vector3d(1, 1, -2).normalized();
    constexpr double half_pi = 1.57079632679489661923;

    bool have_arc = false;
    double lo = 0.0, hi = 0.0;
    const double g_floor = 1e-13 * std::max(ps.rho_scale, 1e-300);
    for (const auto& g : ps.g) {
        const double a = g.dot(e1), b = g.dot(e2);
        if (std::hypot(a, b) <= g_floor) continue;
        double psi = std::atan2(b, a);
        if (!have_arc) {
            lo = psi - half_pi;
            hi = psi + half_pi;
            have_arc = true;
            continue;
        }
        const double c = 0.5 * (lo + hi);
        while (psi < c - 2.0 * half_pi) psi += 4.0 * half_pi;
        while (psi > c + 2.0 * half_pi) psi -= 4.0 * half_pi;
        lo = std::max(lo, psi - half_pi);
        hi = std::min(hi, psi + half_pi);
        if (lo > hi) return std::nullopt;
    }
    if (!have_arc) return std::nullopt;  // rho differences vanish identically

    const double phi = 0.5 * (lo + hi);
    const ThetaVector theta =
        ThetaVector::canonical(std::cos(phi) * e1 + std::sin(phi) * e2);
    if (theta_rigidity_check(traj, period, theta, grid).verdict != Rigidity::rigid)
        return std::nullopt;
    return theta;
}

// ---- quadrature ----------------------------------------------------------------------

namespace {

/// Composite Simpson on the dense output.
double simpson(const DenseTrajectory& traj, double a, double b, int intervals,
               const std::function<double(const BodyState&)>& f) {
    if (intervals % 2 != 0) ++intervals;
    const double h = (b - a) / intervals;
    double acc = f(dense_eval(traj, a)) + f(dense_eval(traj, b));
    for (int i = 1; i < intervals; ++i)
        acc += f(dense_eval(traj, a + i * h)) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

/// 5-point central first derivative.
template <typename F>
double fd_first(F&& f, double t, double h) {
    return (-f(t + 2 * h) + 8.0 * f(t + h) - 8.0 * f(t - h) + f(t - 2 * h)) / (12.0 * h);
}

/// 5-point central second derivative.
template <typename F>
double fd_second(F&& f, double t, double h) {
    return (-f(t + 2 * h) + 16.0 * f(t + h) - 30.0 * f(t) + 16.0 * f(t - h) - f(t - 2 * h)) /
           (12.0 * h * h);
}

}  // namespace

Theorem2Report verify_theorem2_periodic(const DenseTrajectory& traj, double period,
                                        const ThetaVector& theta) {
    Theorem2Report rep;
    if (periodicity_residual_of(traj, period) > 1e-8)
        throw NotPeriodic("verify_theorem2_periodic: trajectory does not close over the period");
    rep.periodic = true;

    const RigidityResult rig = theta_rigidity_check(traj, period, theta);
    rep.rigidity = rig.verdict;
    if (rig.verdict != Rigidity::rigid)
        throw HypothesisNotMet("verify_theorem2_periodic: trajectory is not theta-rigid");

    const Masses& m = traj.masses;
    const double t0 = traj.span_begin();

    const ScanResult scan = scan_events(traj, Monitored::delta1);
    if (scan.degenerate_delta1) {
        rep.syzygy_found = true;
        rep.degenerate_collinear = true;
        rep.t_first = t0;
    } else {
        for (const Event& e : scan.events) {
            if (e.t <= t0 + period && !e.grazing) {
                rep.syzygy_found = true;
                rep.t_first = e.t;
                break;
            }
        }
    }

    auto delta1_S = [&](const BodyState& s) {
        return mass_weighted_frame(m, s).delta1 * rigidity_sum(theta, s);
    };
    rep.integral_delta1_S = simpson(traj, t0, t0 + period, 4096, delta1_S);

    // Pointwise identity: d/dt sum(theta_i S_i / m_i) = delta1 * S.
    const double h = 1e-4 * period;
    auto P = [&](double t) {
        const MassWeightedFrame f = mass_weighted_frame(m, dense_eval(traj, t));
        return theta.theta[0] * f.S1 / m.m1 + theta.theta[1] * f.S2 / m.m2 +
               theta.theta[2] * f.S3 / m.m3;
    };
    double max_abs = 0.0, max_res = 0.0, p_mag = 0.0;
    const int n = 64;
    for (int i = 0; i < n; ++i) {
        const double t = t0 + 2 * h + (period - 4 * h) * (static_cast<double>(i) / (n - 1));
        const double rhs = delta1_S(dense_eval(traj, t));
        const double lhs = fd_first(P, t, h);
        max_abs = std::max(max_abs, std::abs(rhs));
        max_res = std::max(max_res, std::abs(lhs - rhs));
        p_mag = std::max(p_mag, std::abs(P(t)));
    }
    // Identically-collinear orbits make both sides vanish; fall back to the
    // magnitude of the differentiated sum itself.
    rep.pointwise_max_rel = max_res / std::max({max_abs, p_mag / period, 1e-300});
    return rep;
}

// ---- along-trajectory identity checks ---------------------------------------------------

IdentityCheckSeries trajectory_identity_checks(const DenseTrajectory& traj, int n_samples,
                                               double fd_step_factor, double riccati_delta1_floor) {
    if (traj.steps.empty()) throw OutOfRange("trajectory_identity_checks: no dense output");
    const Masses& m = traj.masses;
    const double ta = traj.span_begin(), tb = traj.span_end();
    const double h = fd_step_factor * (tb - ta);

    double delta1_max = 0.0;
    for (const BodyState& s : traj.states)
        delta1_max = std::max(delta1_max, std::abs(mass_weighted_frame(m, s).delta1));

    auto frame_at = [&](double t) { return mass_weighted_frame(m, dense_eval(traj, t)); };
    auto delta1_at = [&](double t) { return frame_at(t).delta1; };
    auto xdot_adjx_entry = [&](int r, int c) {
        return [&, r, c](double t) { return frame_at(t).xdot_adjx()(r, c); };
    };

    IdentityCheckSeries out;
    double eqdf_res = 0.0, eqdf_scale = 0.0, eqdf_res_h2 = 0.0;
    double meqs_res = 0.0, meqs_scale = 0.0;
    double ric_res = 0.0, ric_scale = 0.0;
    double red_res = 0.0, red_scale = 0.0;
    // Magnitude floors: when an identity degenerates to 0 = 0 along special
    // orbits, residuals are judged against the differentiated quantity's own
    // natural scale instead of the vanishing right-hand side.
    const double T = tb - ta;
    double p_mag = 0.0, q_mag = 0.0;

    for (int i = 0; i < n_samples; ++i) {
        const double t =
            ta + 2 * h + (tb - ta - 4 * h) * (static_cast<double>(i) / std::max(1, n_samples - 1));
        out.times.push_back(t);
        const BodyState s = dense_eval(traj, t);
        const MassWeightedFrame f = mass_weighted_frame(m, s);
        const PairwiseGeometry g = pairwise_geometry(s);
        const ConleyMatrices c = build_matrices(m, Vec3<double>(g.rho));
        {
            const Mat2<double> P = f.xdot_adjx();
            p_mag = std::max(p_mag, P.cwiseAbs().maxCoeff());
            q_mag = std::max(
                q_mag, (P - 0.5 * P.trace() * Mat2<double>::Identity()).cwiseAbs().maxCoeff());
        }

        // (i) delta1'' = Tr(A) delta1 + 2 delta2
        {
            const double rhs = c.traceA * f.delta1 + 2.0 * f.delta2;
            const double lhs = fd_second(delta1_at, t, h);
            const double lhs2 = fd_second(delta1_at, t, 0.5 * h);
            eqdf_res = std::max(eqdf_res, std::abs(lhs - rhs));
            eqdf_res_h2 = std::max(eqdf_res_h2, std::abs(lhs2 - rhs));
            eqdf_scale = std::max(eqdf_scale, std::abs(rhs));
        }
        // (ii) d/dt (Xdot adjX) = sum_i (delta1 rho_i - delta2 / M) A_i
        {
            Mat2<double> rhs = (f.delta1 * g.rho[0] - f.delta2 / m.total()) * c.A1 +
                               (f.delta1 * g.rho[1] - f.delta2 / m.total()) * c.A2 +
                               (f.delta1 * g.rho[2] - f.delta2 / m.total()) * c.A3;
            double res = 0.0;
            for (int r = 0; r < 2; ++r)
                for (int cc = 0; cc < 2; ++cc)
                    res = std::max(res,
                                   std::abs(fd_first(xdot_adjx_entry(r, cc), t, h) - rhs(r, cc)));
            meqs_res = std::max(meqs_res, res);
            meqs_scale = std::max(meqs_scale, rhs.cwiseAbs().maxCoeff());
        }
        // (iii) Riccati: C' + C^2 = A away from syzygies, C = Xdot X^-1
        if (std::abs(f.delta1) > riccati_delta1_floor * delta1_max) {
            auto C_entry = [&](int r, int cc) {
                return [&, r, cc](double t2) {
                    const MassWeightedFrame f2 = frame_at(t2);
                    const Mat2<double> C = f2.Xdot * f2.X.inverse();
                    return C(r, cc);
                };
            };
            const Mat2<double> C = f.Xdot * f.X.inverse();
            Mat2<double> Cdot;
            for (int r = 0; r < 2; ++r)
                for (int cc = 0; cc < 2; ++cc) Cdot(r, cc) = fd_first(C_entry(r, cc), t, h);
            const Mat2<double> res = Cdot + C * C - c.A;
            ric_res = std::max(ric_res, res.cwiseAbs().maxCoeff());
            ric_scale = std::max({ric_scale, c.A.cwiseAbs().maxCoeff(),
                                  (C * C).cwiseAbs().maxCoeff()});
        }
        // (iv) d/dt (Xdot adjX - delta1'/2 I) = delta1 [(rho1-rho3) At1 + (rho2-rho3) At2]
        {
            const Mat2<double> rhs =
                f.delta1 * ((g.rho[0] - g.rho[2]) * c.At1 + (g.rho[1] - g.rho[2]) * c.At2);
            auto Q_entry = [&](int r, int cc) {
                return [&, r, cc](double t2) {
                    const Mat2<double> P = frame_at(t2).xdot_adjx();
                    const Mat2<double> Q = P - 0.5 * P.trace() * Mat2<double>::Identity();
                    return Q(r, cc);
                };
            };
            double res = 0.0;
            for (int r = 0; r < 2; ++r)
                for (int cc = 0; cc < 2; ++cc)
                    res = std::max(res, std::abs(fd_first(Q_entry(r, cc), t, h) - rhs(r, cc)));
            red_res = std::max(red_res, res);
            red_scale = std::max(red_scale, rhs.cwiseAbs().maxCoeff());
        }
    }

    eqdf_scale = std::max({eqdf_scale, delta1_max / (T * T), 1e-300});
    meqs_scale = std::max({meqs_scale, p_mag / T, 1e-300});
    red_scale = std::max({red_scale, q_mag / T, 1e-300});
    out.max_rel_eqdf = eqdf_res / eqdf_scale;
    out.max_rel_meqs = meqs_res / meqs_scale;
    out.max_rel_riccati = ric_res / std::max(ric_scale, 1e-300);
    out.max_rel_reduced = red_res / red_scale;
    out.richardson_gap = std::abs(eqdf_res - eqdf_res_h2) / eqdf_scale;
    return out;
}

AreaDerivativeCheck area_derivative_check(const DenseTrajectory& traj, int n_samples,
                                          double fd_step_factor) {
    if (traj.steps.empty()) throw OutOfRange("area_derivative_check: no dense output");
    const Masses& m = traj.masses;
    const double ta = traj.span_begin(), tb = traj.span_end();
    const double h = fd_step_factor * (tb - ta);

    auto S_at = [&](int i) {
        return [&, i](double t) {
            const MassWeightedFrame f = mass_weighted_frame(m, dense_eval(traj, t));
            return i == 0 ? f.S1 : (i == 1 ? f.S2 : f.S3);
        };
    };

    double res = 0.0, scale = 0.0, s_mag = 0.0;
    for (int k = 0; k < n_samples; ++k) {
        const double t =
            ta + 2 * h + (tb - ta - 4 * h) * (static_cast<double>(k) / std::max(1, n_samples - 1));
        const BodyState s = dense_eval(traj, t);
        const MassWeightedFrame f = mass_weighted_frame(m, s);
        const Vec3<double> rho = pairwise_geometry(s).rho;
        const double rhs[3] = {m.m1 * f.delta1 * (rho[2] - rho[1]),
                               m.m2 * f.delta1 * (rho[0] - rho[2]),
                               m.m3 * f.delta1 * (rho[1] - rho[0])};
        s_mag = std::max({s_mag, std::abs(f.S1), std::abs(f.S2), std::abs(f.S3)});
        for (int i = 0; i < 3; ++i) {
            res = std::max(res, std::abs(fd_first(S_at(i), t, h) - rhs[i]));
            scale = std::max(scale, std::abs(rhs[i]));
        }
    }
    // When the areas are conserved (central configurations) the right side
    // vanishes; judge the residual against the areas' own time scale.
    scale = std::max({scale, s_mag / (tb - ta), 1e-300});
    return {res / scale};
}

// ---- Sturm / Hill diagnostics -----------------------------------------------------------

SturmDiagnostic sturm_diagnostic(const DenseTrajectory& traj, double t_a, double t_b,
                                 int n_samples, double fd_step_factor) {
    if (!(t_a < t_b) || t_a < traj.span_begin() - 1e-12 || t_b > traj.span_end() + 1e-12)
        throw OutOfRange("sturm_diagnostic: window outside the trajectory span");
    const Masses& m = traj.masses;

    const double iscale = std::max(1.0, angular_momentum_scale(m, traj.states.front()));
    if (std::abs(traj.I0) > 1e-10 * iscale)
        throw HypothesisNotMet("sturm_diagnostic: requires zero angular momentum");
    if (!(traj.H0 < 0.0)) throw NotNegativeEnergy("sturm_diagnostic: requires H < 0");

    double delta1_max = 0.0;
    for (const BodyState& s : traj.states)
        delta1_max = std::max(delta1_max, std::abs(mass_weighted_frame(m, s).delta1));

    // The window must be syzygy-free: delta1 of one sign, bounded away from 0.
    const int probe = std::max(200, 4 * n_samples);
    const double sgn = mass_weighted_frame(m, dense_eval(traj, 0.5 * (t_a + t_b))).delta1 > 0.0
                           ? 1.0
                           : -1.0;
    for (int i = 0; i <= probe; ++i) {
        const double t = t_a + (t_b - t_a) * (static_cast<double>(i) / probe);
        const double d1 = mass_weighted_frame(m, dense_eval(traj, t)).delta1;
        if (sgn * d1 <= 1e-11 * delta1_max)
            throw WindowInvalid("sturm_diagnostic: window touches a delta1 zero");
    }

    const EnergyBounds b = energy_bounds(m, -traj.H0);
    const double h = fd_step_factor * (t_b - t_a);

    auto delta_sqrt = [&](double t) {
        return std::sqrt(sgn * mass_weighted_frame(m, dense_eval(traj, t)).delta1);
    };

    SturmDiagnostic out;
    out.zeta_sq = b.zetaSq;
    out.min_margin_eta = std::numeric_limits<double>::infinity();
    out.min_margin_trace = std::numeric_limits<double>::infinity();
    out.min_discriminant = std::numeric_limits<double>::infinity();
    double hill_res = 0.0, hill_scale = 0.0;

    for (int i = 0; i < n_samples; ++i) {
        const double t =
            t_a + 2 * h + (t_b - t_a - 4 * h) * (static_cast<double>(i) / std::max(1, n_samples - 1));
        const BodyState s = dense_eval(traj, t);
        const MassWeightedFrame f = mass_weighted_frame(m, s);
        const ConleyMatrices c = build_matrices(m, s);
        const double d1dot = f.xdot_adjx().trace();
        const double D = d1dot * d1dot - 4.0 * f.delta1 * f.delta2;
        const double eta = 0.5 * c.traceA - D / (4.0 * f.delta1 * f.delta1);

        out.times.push_back(t);
        out.eta.push_back(eta);
        out.min_margin_eta = std::min(out.min_margin_eta, 0.5 * c.traceA - eta);
        out.min_margin_trace = std::min(out.min_margin_trace, -b.zetaSq - 0.5 * c.traceA);
        out.min_discriminant = std::min(out.min_discriminant, D);
        out.max_abs_discriminant = std::max(
            {out.max_abs_discriminant, d1dot * d1dot, std::abs(4.0 * f.delta1 * f.delta2)});

        const double delta = delta_sqrt(t);
        const double rhs = eta * delta;
        hill_res = std::max(hill_res, std::abs(fd_second(delta_sqrt, t, h) - rhs));
        hill_scale = std::max(hill_scale, std::abs(rhs));
    }
    out.max_rel_hill = hill_res / std::max(hill_scale, 1e-300);
    return out;
}

}  // namespace syzygy
