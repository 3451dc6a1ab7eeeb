#include "syzygy/orbits.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "syzygy/core.hpp"
#include "syzygy/events.hpp"

namespace syzygy {

IntegratorConfig tight_integrator_config() {
    IntegratorConfig cfg;
    cfg.rtol = 1e-12;
    cfg.atol = 1e-14;
    return cfg;
}

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

BodyState rigid_rotation_state(const Masses& m, const std::array<Vec2<double>, 3>& pos,
                               double omega) {
    BodyState s;
    s.t = 0.0;
    s.r1 = pos[0];
    s.r2 = pos[1];
    s.r3 = pos[2];
    for (int i = 0; i < 3; ++i) s.v(i) = omega * Vec2<double>(-s.r(i).y(), s.r(i).x());
    return reduce_to_barycentric(m, s);
}

}  // namespace

InitialCondition lagrange_circular(const Masses& m, double side) {
    if (!(side > 0.0)) throw OutOfRange("lagrange_circular: side must be positive");
    const double M = m.total();

    // Equilateral triangle, mass-barycenter at the origin, then rotated so
    // body 1 sits on the +y axis.
    std::array<Vec2<double>, 3> q = {Vec2<double>(0.0, 0.0), Vec2<double>(side, 0.0),
                                     Vec2<double>(0.5 * side, 0.5 * std::sqrt(3.0) * side)};
    Vec2<double> bary = (m.m1 * q[0] + m.m2 * q[1] + m.m3 * q[2]) / M;
    for (auto& p : q) p -= bary;
    const double phi = kPi / 2.0 - std::atan2(q[0].y(), q[0].x());
    const Eigen::Rotation2D<double> rot(phi);
    for (auto& p : q) p = rot * p;

    const double omega = std::sqrt(M / (side * side * side));
    InitialCondition ic;
    ic.masses = m;
    ic.state = rigid_rotation_state(m, q, omega);
    ic.provenance = "lagrange_circular";
    ic.period = 2.0 * kPi / omega;
    ic.known_H = total_energy(m, ic.state);
    ic.known_I = angular_momentum(m, ic.state);
    return ic;
}

InitialCondition euler_circular(const Masses& m, int central, double scale) {
    if (central < 1 || central > 3) throw OutOfRange("euler_circular: central body must be 1..3");
    if (!(scale > 0.0)) throw OutOfRange("euler_circular: scale must be positive");

    // Ordering (left, middle, right) by body index, 0-based.
    const int mid = central - 1;
    const int left = (mid == 0) ? 1 : 0;
    const int right = (mid == 2) ? 1 : 2;
    const double mL = m[left], mC = m[mid], mR = m[right];
    const double M = m.total();

    // Gaps a (left-middle) and b = q * a (middle-right). The spacing ratio q
    // makes the rotation rate required by the left and right bodies agree;
    // this is the classical quintic condition, solved here by bisection.
    auto omega2_mismatch = [&](double q) {
        const double a = 1.0, b = q;
        // positions with middle body at xm, barycenter at 0
        const double xm = (mL * a - mR * b) / M;  // from mL(xm-a)+mC*xm+mR(xm+b)=0
        const double xL = xm - a, xR = xm + b;
        const double accL = mC / (a * a) + mR / ((a + b) * (a + b));   // +x
        const double accR = -(mL / ((a + b) * (a + b)) + mC / (b * b));  // -x
        const double w2L = accL / (-xL);
        const double w2R = accR / (-xR);
        return w2L - w2R;
    };
    double q = 1.0;
    if (mL != mR) {  // symmetric case is exactly q = 1
        double lo = 1e-6, hi = 1e6;
        double flo = omega2_mismatch(lo);
        for (int it = 0; it < 200; ++it) {
            const double midq = std::sqrt(lo * hi);  // geometric bisection over decades
            const double fm = omega2_mismatch(midq);
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = midq;
                flo = fm;
            } else {
                hi = midq;
            }
            if (hi / lo < 1.0 + 1e-15) break;
        }
        q = std::sqrt(lo * hi);
    }

    const double a = scale, b = q * scale;
    const double xm = (mL * a - mR * b) / M;
    std::array<Vec2<double>, 3> pos;
    pos[left] = Vec2<double>(xm - a, 0.0);
    pos[mid] = Vec2<double>(xm, 0.0);
    pos[right] = Vec2<double>(xm + b, 0.0);
    const double accL = mC / (a * a) + mR / ((a + b) * (a + b));
    const double omega2 = accL / (a - xm);
    const double omega = std::sqrt(omega2);

    InitialCondition ic;
    ic.masses = m;
    ic.state = rigid_rotation_state(m, pos, omega);
    ic.provenance = "euler_circular";
    ic.period = 2.0 * kPi / omega;
    ic.known_H = total_energy(m, ic.state);
    ic.known_I = angular_momentum(m, ic.state);
    return ic;
}

InitialCondition figure_eight() {
    // Shooting-refined equal-mass choreography (tools/fig8_refine regenerates
    // these constants), phase-shifted to the midpoint between two consecutive
    // syzygies so delta1(0) is well away from zero.
    const Masses m{1.0, 1.0, 1.0};
    BodyState s;
    s.t = 0.0;
    s.r1 = Vec2<double>(0.54050820114305131, 0.34526363761775009);
    s.r2 = Vec2<double>(0.54050869154278214, -0.3452628698986161);
    s.r3 = Vec2<double>(-1.0810168926858335, -7.6771913401438763e-07);
    s.v1 = Vec2<double>(-1.0971223128364369, -0.2336055632839299);
    s.v2 = Vec2<double>(1.0971226446399944, -0.23360400497025491);
    s.v3 = Vec2<double>(-3.318035577068908e-07, 0.4672095682541848);

    InitialCondition ic;
    ic.masses = m;
    ic.state = reduce_to_barycentric(m, s);
    ic.provenance = "figure_eight";
    ic.period = 6.3259123125519032;
    ic.known_H = total_energy(m, ic.state);
    ic.known_I = angular_momentum(m, ic.state);
    return ic;
}

BodyState project_zero_angular_momentum(const Masses& m, const BodyState& s) {
    const double I = angular_momentum(m, s);
    const double Jm = m.m1 * s.r1.squaredNorm() + m.m2 * s.r2.squaredNorm() +
                      m.m3 * s.r3.squaredNorm();
    const double omega = I / Jm;
    BodyState out = s;
    for (int i = 0; i < 3; ++i)
        out.v(i) -= omega * Vec2<double>(-s.r(i).y(), s.r(i).x());
    return out;
}

InitialCondition random_ic(std::uint64_t seed, const SamplerConstraints& c) {
    Rng rng(seed);
    const Masses& m = c.masses;

    for (int attempt = 0; attempt < c.rejection_budget; ++attempt) {
        // Positions in the box with pairwise separation.
        BodyState s;
        s.t = 0.0;
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
            s.r(i) = Vec2<double>(rng.uniform(-c.box_half_width, c.box_half_width),
                                  rng.uniform(-c.box_half_width, c.box_half_width));
        }
        if (min_pairwise_distance(s) < c.min_separation) continue;

        if (c.free_fall) {
            s.v1.setZero();
            s.v2.setZero();
            s.v3.setZero();
        } else {
            for (int i = 0; i < 3; ++i)
                s.v(i) = Vec2<double>(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        }
        s = reduce_to_barycentric(m, s);

        if (c.zero_momentum && !c.free_fall) s = project_zero_angular_momentum(m, s);

        if (c.negative_energy) {
            const double U = potential_energy(m, s);
            const double K = kinetic_energy(m, s);
            // Scale velocities so H = -0.3 U: keeps alpha away from zero, so
            // the syzygy deadlines stay short.
            const double target = 0.7 * U;
            if (K > target) {
                const double lam = std::sqrt(target / K);
                s.v1 *= lam;
                s.v2 *= lam;
                s.v3 *= lam;
            }
        }

        if (c.antisymmetric) {
            const AntisymmetryIndicator ind = antisymmetry_indicator(m, s);
            if (!ind.is_antisymmetric) {
                ok = false;  // rejection sampling on delta1 * delta2 < 0
            }
        }
        if (!ok) continue;

        InitialCondition ic;
        ic.masses = m;
        ic.state = s;
        ic.provenance = "random_ic(seed=" + std::to_string(seed) + ")";
        return ic;
    }
    throw SamplerExhausted("random_ic: rejection budget exceeded");
}

double state_distance(const BodyState& a, const BodyState& b) {
    const double rs = std::max(position_scale(a), 1.0);
    const double vs = std::max(velocity_scale(a), 1.0);
    double dr = 0.0, dv = 0.0;
    for (int i = 0; i < 3; ++i) {
        dr = std::max(dr, (a.r(i) - b.r(i)).norm());
        dv = std::max(dv, (a.v(i) - b.v(i)).norm());
    }
    return std::max(dr / rs, dv / vs);
}

double periodicity_residual(const InitialCondition& ic, double period,
                            const IntegratorConfig& cfg) {
    if (period == 0.0) return 0.0;
    if (!(period > 0.0)) throw OutOfRange("periodicity_residual: period must be nonnegative");
    const DenseTrajectory traj = integrate(ic.masses, ic.state, ic.state.t + period, cfg);
    if (traj.termination != Termination::completed)
        throw IntegrationFailure(std::string("periodicity_residual: integration terminated: ") +
                                 to_string(traj.termination));
    return state_distance(ic.state, traj.states.back());
}

ShootingResult refine_symmetric_choreography(const Vec2<double>& r1, const Vec2<double>& v3,
                                             double period_guess, int max_iterations) {
    const Masses m{1.0, 1.0, 1.0};

    auto build = [](const Eigen::Matrix<double, 4, 1>& p) {
        BodyState s;
        s.t = 0.0;
        s.r1 = Vec2<double>(p[0], p[1]);
        s.r2 = -s.r1;
        s.r3.setZero();
        const Vec2<double> v3v(p[2], p[3]);
        s.v1 = -0.5 * v3v;
        s.v2 = -0.5 * v3v;
        s.v3 = v3v;
        return s;  // barycentric and zero angular momentum by construction
    };

    IntegratorConfig cfg = tight_integrator_config();
    auto shoot = [&](const Eigen::Matrix<double, 5, 1>& q) {
        const BodyState s0 = build(q.head<4>());
        const DenseTrajectory traj = integrate(m, s0, q[4], cfg);
        if (traj.termination != Termination::completed)
            throw IntegrationFailure("refine_symmetric_choreography: integration failed");
        return pack_state(traj.states.back()) - pack_state(s0);
    };

    Eigen::Matrix<double, 5, 1> q;
    q << r1.x(), r1.y(), v3.x(), v3.y(), period_guess;

    ShootingResult out;
    double best = std::numeric_limits<double>::infinity();
    Eigen::Matrix<double, 5, 1> best_q = q;
    for (int it = 0; it < max_iterations; ++it) {
        const Eigen::Matrix<double, 12, 1> f = shoot(q);
        const double res = f.norm();
        if (res < best) {
            best = res;
            best_q = q;
        }
        out.iterations = it;
        if (res < 1e-12) break;

        // Numerical Jacobian, forward differences.
        Eigen::Matrix<double, 12, 5> Jac;
        for (int j = 0; j < 5; ++j) {
            const double h = 1e-7 * std::max(1.0, std::abs(q[j]));
            Eigen::Matrix<double, 5, 1> qp = q;
            qp[j] += h;
            Jac.col(j) = (shoot(qp) - f) / h;
        }
        // Damped least-squares step (the rotation family makes Jac rank-deficient).
        const Eigen::Matrix<double, 5, 5> JtJ =
            Jac.transpose() * Jac + 1e-12 * Eigen::Matrix<double, 5, 5>::Identity();
        const Eigen::Matrix<double, 5, 1> step = JtJ.ldlt().solve(Jac.transpose() * f);
        q -= step;
        if (step.norm() < 1e-14) break;
    }

    InitialCondition ic;
    ic.masses = m;
    ic.state = build(best_q.head<4>());
    ic.provenance = "figure_eight(shooting)";
    ic.period = best_q[4];
    ic.known_H = total_energy(m, ic.state);
    ic.known_I = angular_momentum(m, ic.state);
    out.ic = ic;
    out.period = best_q[4];
    out.residual = best / std::max(1.0, pack_state(ic.state).norm());
    return out;
}

}  // namespace syzygy
