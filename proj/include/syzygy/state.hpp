#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>

#include "syzygy/core.hpp"

namespace syzygy {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

/// Cross product of planar vectors (z-component of the 3D cross product).
template <typename Scalar>
Scalar cross2(const Vec2<Scalar>& a, const Vec2<Scalar>& b) {
    return a.x() * b.y() - a.y() * b.x();
}

// ---- masses ------------------------------------------------------------------

/// Three positive point masses in gravitational units (G = 1).
/// Pair sums follow the index convention used throughout: pair 1 = (3,2),
/// pair 2 = (1,3), pair 3 = (2,1).
template <typename Scalar>
struct MassesT {
    Scalar m1, m2, m3;

    Scalar m32() const { return m3 + m2; }
    Scalar m13() const { return m1 + m3; }
    Scalar m21() const { return m2 + m1; }
    Scalar total() const { return m1 + m2 + m3; }
    Scalar max() const { return std::max({m1, m2, m3}); }
    Scalar operator[](int i) const { return i == 0 ? m1 : (i == 1 ? m2 : m3); }
};

using Masses = MassesT<double>;

// ---- body state ----------------------------------------------------------------

/// Planar positions and velocities of the three bodies at one instant.
/// All producing code keeps states barycentric (mass-weighted position and
/// velocity sums zero); reduce_to_barycentric() restores that exactly.
template <typename Scalar>
struct BodyStateT {
    Scalar t = Scalar(0);
    Vec2<Scalar> r1 = Vec2<Scalar>::Zero(), r2 = Vec2<Scalar>::Zero(), r3 = Vec2<Scalar>::Zero();
    Vec2<Scalar> v1 = Vec2<Scalar>::Zero(), v2 = Vec2<Scalar>::Zero(), v3 = Vec2<Scalar>::Zero();

    const Vec2<Scalar>& r(int i) const { return i == 0 ? r1 : (i == 1 ? r2 : r3); }
    const Vec2<Scalar>& v(int i) const { return i == 0 ? v1 : (i == 1 ? v2 : v3); }
    Vec2<Scalar>& r(int i) { return i == 0 ? r1 : (i == 1 ? r2 : r3); }
    Vec2<Scalar>& v(int i) { return i == 0 ? v1 : (i == 1 ? v2 : v3); }
};

using BodyState = BodyStateT<double>;

/// max(1, largest position magnitude) — the length scale used by tolerances.
template <typename Scalar>
Scalar position_scale(const BodyStateT<Scalar>& s) {
    using std::max;
    return max(Scalar(1), max({s.r1.norm(), s.r2.norm(), s.r3.norm()}));
}

template <typename Scalar>
Scalar velocity_scale(const BodyStateT<Scalar>& s) {
    using std::max;
    return max(Scalar(1), max({s.v1.norm(), s.v2.norm(), s.v3.norm()}));
}

template <typename Scalar>
Scalar min_pairwise_distance(const BodyStateT<Scalar>& s) {
    return std::min({(s.r3 - s.r2).norm(), (s.r1 - s.r3).norm(), (s.r2 - s.r1).norm()});
}

template <typename Scalar>
Scalar max_pairwise_distance(const BodyStateT<Scalar>& s) {
    return std::max({(s.r3 - s.r2).norm(), (s.r1 - s.r3).norm(), (s.r2 - s.r1).norm()});
}

template <typename Scalar>
bool is_barycentric(const MassesT<Scalar>& m, const BodyStateT<Scalar>& s,
                    Scalar eps = Scalar(1e-12)) {
    const Vec2<Scalar> mr = m.m1 * s.r1 + m.m2 * s.r2 + m.m3 * s.r3;
    const Vec2<Scalar> mv = m.m1 * s.v1 + m.m2 * s.v2 + m.m3 * s.v3;
    const Scalar rs = position_scale(s) * m.total();
    const Scalar vs = velocity_scale(s) * m.total();
    return mr.norm() <= eps * rs && mv.norm() <= eps * vs;
}

/// Shift positions and velocities by the mass-weighted means, placing the
/// centre of mass at the origin with zero total linear momentum.
template <typename Scalar>
BodyStateT<Scalar> reduce_to_barycentric(const MassesT<Scalar>& m, const BodyStateT<Scalar>& raw) {
    if (min_pairwise_distance(raw) <= Scalar(0))
        throw CollisionInput("reduce_to_barycentric: coincident bodies");
    const Scalar M = m.total();
    const Vec2<Scalar> rc = (m.m1 * raw.r1 + m.m2 * raw.r2 + m.m3 * raw.r3) / M;
    const Vec2<Scalar> vc = (m.m1 * raw.v1 + m.m2 * raw.v2 + m.m3 * raw.v3) / M;
    BodyStateT<Scalar> out = raw;
    out.r1 -= rc;
    out.r2 -= rc;
    out.r3 -= rc;
    out.v1 -= vc;
    out.v2 -= vc;
    out.v3 -= vc;
    return out;
}

// ---- pairwise geometry ---------------------------------------------------------

/// Mutual distances d_i, inverse distances, and rho_i = d_i^-3, indexed by the
/// opposite-body convention: d1 = |r3 - r2|, d2 = |r1 - r3|, d3 = |r2 - r1|.
template <typename Scalar>
struct PairwiseGeometryT {
    Vec3<Scalar> d;
    Vec3<Scalar> inv_d;  // the r_i = rho_i^(1/3)
    Vec3<Scalar> rho;
};

using PairwiseGeometry = PairwiseGeometryT<double>;

template <typename Scalar>
PairwiseGeometryT<Scalar> pairwise_geometry(const BodyStateT<Scalar>& s,
                                            Scalar min_distance = Scalar(0)) {
    PairwiseGeometryT<Scalar> g;
    g.d[0] = (s.r3 - s.r2).norm();
    g.d[1] = (s.r1 - s.r3).norm();
    g.d[2] = (s.r2 - s.r1).norm();
    for (int i = 0; i < 3; ++i) {
        if (g.d[i] <= Scalar(0)) throw CollisionInput("pairwise_geometry: coincident bodies");
        if (g.d[i] < min_distance)
            throw CollisionApproach("pairwise_geometry: distance below collision threshold");
        g.inv_d[i] = Scalar(1) / g.d[i];
        g.rho[i] = g.inv_d[i] * g.inv_d[i] * g.inv_d[i];
    }
    return g;
}

// ---- dynamics ------------------------------------------------------------------

/// Newtonian accelerations of the three bodies.
///
/// Each pair term is computed once and reused with both signs, so exact
/// symmetries of the configuration (equal-mass reflections) survive in
/// floating point bit-for-bit.
template <typename Scalar>
std::array<Vec2<Scalar>, 3> accelerations(const MassesT<Scalar>& m, const BodyStateT<Scalar>& s,
                                          Scalar min_distance = Scalar(0)) {
    const Vec2<Scalar> z21 = s.r2 - s.r1;
    const Vec2<Scalar> z13 = s.r1 - s.r3;
    const Vec2<Scalar> z32 = s.r3 - s.r2;
    const Scalar d3 = z21.norm(), d2 = z13.norm(), d1 = z32.norm();
    if (std::min({d1, d2, d3}) <= Scalar(0))
        throw CollisionInput("accelerations: coincident bodies");
    if (std::min({d1, d2, d3}) < min_distance)
        throw CollisionApproach("accelerations: distance below collision threshold");
    const Vec2<Scalar> u21 = z21 / (d3 * d3 * d3);
    const Vec2<Scalar> u13 = z13 / (d2 * d2 * d2);
    const Vec2<Scalar> u32 = z32 / (d1 * d1 * d1);
    return {Vec2<Scalar>(m.m2 * u21 - m.m3 * u13), Vec2<Scalar>(m.m3 * u32 - m.m1 * u21),
            Vec2<Scalar>(m.m1 * u13 - m.m2 * u32)};
}

template <typename Scalar>
Scalar kinetic_energy(const MassesT<Scalar>& m, const BodyStateT<Scalar>& s) {
    return Scalar(0.5) * (m.m1 * s.v1.squaredNorm() + m.m2 * s.v2.squaredNorm() +
                          m.m3 * s.v3.squaredNorm());
}

/// U = m3 m2 / d1 + m1 m3 / d2 + m2 m1 / d3  (positive).
template <typename Scalar>
Scalar potential_energy(const MassesT<Scalar>& m, const BodyStateT<Scalar>& s) {
    const PairwiseGeometryT<Scalar> g = pairwise_geometry(s);
    return m.m3 * m.m2 * g.inv_d[0] + m.m1 * m.m3 * g.inv_d[1] + m.m2 * m.m1 * g.inv_d[2];
}

template <typename Scalar>
Scalar total_energy(const MassesT<Scalar>& m, const BodyStateT<Scalar>& s) {
    return kinetic_energy(m, s) - potential_energy(m, s);
}

/// I = sum_i m_i (r_i x v_i).
template <typename Scalar>
Scalar angular_momentum(const MassesT<Scalar>& m, const BodyStateT<Scalar>& s) {
    return m.m1 * cross2(s.r1, s.v1) + m.m2 * cross2(s.r2, s.v2) + m.m3 * cross2(s.r3, s.v3);
}

/// Natural magnitude of the angular momentum terms, for relative comparisons.
template <typename Scalar>
Scalar angular_momentum_scale(const MassesT<Scalar>& m, const BodyStateT<Scalar>& s) {
    return m.m1 * s.r1.norm() * s.v1.norm() + m.m2 * s.r2.norm() * s.v2.norm() +
           m.m3 * s.r3.norm() * s.v3.norm();
}

// ---- mass-weighted frame --------------------------------------------------------

/// The 2x2 configuration matrices of the mass-weighted coordinates
/// w_k = m_k z_k. Rows are bodies 1 and 2; the third row is implicit through
/// w_3 = -w_1 - w_2. Zeros of delta1 are position syzygies, zeros of delta2
/// velocity alignments.
template <typename Scalar>
struct MassWeightedFrameT {
    Mat2<Scalar> X;     // rows (X1, Y1), (X2, Y2)
    Mat2<Scalar> Xdot;  // rows (X1', Y1'), (X2', Y2')
    Scalar delta1;      // det X
    Scalar delta2;      // det Xdot
    Scalar S1, S2, S3;  // oriented areas S_i = X_i Y_i' - X_i' Y_i

    Scalar a() const { return S1; }
    Scalar b() const { return S2; }

    /// Xdot * adj(X); trace is delta1', determinant is delta1 * delta2.
    Mat2<Scalar> xdot_adjx() const {
        Mat2<Scalar> adj;
        adj << X(1, 1), -X(0, 1), -X(1, 0), X(0, 0);
        return Xdot * adj;
    }
};

using MassWeightedFrame = MassWeightedFrameT<double>;

template <typename Scalar>
MassWeightedFrameT<Scalar> mass_weighted_frame(const MassesT<Scalar>& m,
                                               const BodyStateT<Scalar>& s) {
    MassWeightedFrameT<Scalar> f;
    f.X << m.m1 * s.r1.x(), m.m1 * s.r1.y(), m.m2 * s.r2.x(), m.m2 * s.r2.y();
    f.Xdot << m.m1 * s.v1.x(), m.m1 * s.v1.y(), m.m2 * s.v2.x(), m.m2 * s.v2.y();
    f.delta1 = f.X.determinant();
    f.delta2 = f.Xdot.determinant();
    const Vec2<Scalar> w3 = -(Vec2<Scalar>(f.X(0, 0), f.X(0, 1)) + Vec2<Scalar>(f.X(1, 0), f.X(1, 1)));
    const Vec2<Scalar> w3dot =
        -(Vec2<Scalar>(f.Xdot(0, 0), f.Xdot(0, 1)) + Vec2<Scalar>(f.Xdot(1, 0), f.Xdot(1, 1)));
    f.S1 = f.X(0, 0) * f.Xdot(0, 1) - f.Xdot(0, 0) * f.X(0, 1);
    f.S2 = f.X(1, 0) * f.Xdot(1, 1) - f.Xdot(1, 0) * f.X(1, 1);
    f.S3 = w3.x() * w3dot.y() - w3dot.x() * w3.y();
    return f;
}

/// Magnitude scale of delta1 (product of the two largest mass-weighted
/// position norms would bound it; this simpler bound is enough for tolerances).
template <typename Scalar>
Scalar delta1_scale(const MassesT<Scalar>& m, const BodyStateT<Scalar>& s) {
    const Scalar w = std::max({m.m1 * s.r1.norm(), m.m2 * s.r2.norm(), m.m3 * s.r3.norm()});
    return w * w;
}

template <typename Scalar>
Scalar delta2_scale(const MassesT<Scalar>& m, const BodyStateT<Scalar>& s) {
    const Scalar w = std::max({m.m1 * s.v1.norm(), m.m2 * s.v2.norm(), m.m3 * s.v3.norm()});
    return w * w;
}

}  // namespace syzygy
