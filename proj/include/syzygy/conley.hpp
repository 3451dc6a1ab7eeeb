#pragma once

#include <cmath>

#include "syzygy/state.hpp"

namespace syzygy {

// ---- the force matrix and its mass basis -----------------------------------

/// The 2x2 matrix A of the second-order configuration equation X'' = A X,
/// together with the constant mass matrices A_i of its decomposition
/// A = rho1 A1 + rho2 A2 + rho3 A3, their traceless parts, and the matrix L
/// whose inner product with Xdot*adj(X) is the (conserved) angular momentum.
template <typename Scalar>
struct ConleyMatricesT {
    Mat2<Scalar> A;
    Mat2<Scalar> A1, A2, A3;
    Mat2<Scalar> At1, At2, At3;  // traceless parts
    Mat2<Scalar> L;
    Mat2<Scalar> J;  // diag(1, -1)
    Scalar traceA;
};

using ConleyMatrices = ConleyMatricesT<double>;

/// Frobenius-type inner product <A, B> = Tr(A^T B).
template <typename Scalar>
Scalar mat_inner(const Mat2<Scalar>& a, const Mat2<Scalar>& b) {
    return a.cwiseProduct(b).sum();
}

template <typename Scalar>
ConleyMatricesT<Scalar> build_matrices(const MassesT<Scalar>& m, const Vec3<Scalar>& rho) {
    ConleyMatricesT<Scalar> c;
    const Scalar r1 = rho[0], r2 = rho[1], r3 = rho[2];

    c.A << -m.m2 * r3 - m.m13() * r2, m.m1 * (r3 - r2),
           m.m2 * (r3 - r1), -m.m1 * r3 - m.m32() * r1;
    c.traceA = -(m.m32() * r1 + m.m13() * r2 + m.m21() * r3);

    c.A1 << Scalar(0), Scalar(0), -m.m2, -m.m32();
    c.A2 << -m.m13(), -m.m1, Scalar(0), Scalar(0);
    c.A3 << -m.m2, m.m1, m.m2, -m.m1;

    // Traceless parts At_i = A_i - (Tr A_i / 2) I, written in closed form so
    // the traces vanish exactly.
    c.At1 << m.m32() / Scalar(2), Scalar(0), -m.m2, -m.m32() / Scalar(2);
    c.At2 << -m.m13() / Scalar(2), -m.m1, Scalar(0), m.m13() / Scalar(2);
    const Scalar d3 = (m.m1 - m.m2) / Scalar(2);
    c.At3 << d3, m.m1, m.m2, -d3;

    c.L << -Scalar(1) / m.m3, Scalar(1) / m.m1 + Scalar(1) / m.m3,
           -Scalar(1) / m.m2 - Scalar(1) / m.m3, Scalar(1) / m.m3;
    c.J << Scalar(1), Scalar(0), Scalar(0), Scalar(-1);
    return c;
}

template <typename Scalar>
ConleyMatricesT<Scalar> build_matrices(const MassesT<Scalar>& m, const BodyStateT<Scalar>& s) {
    return build_matrices(m, Vec3<Scalar>(pairwise_geometry(s).rho));
}

// ---- the mass constant and the energy-derived bounds -------------------------

/// Sigma = sum over pairs of (m_j m_k)^(3/2) / (m_j + m_k)^(1/2).
template <typename Scalar>
Scalar sigma_constant(const MassesT<Scalar>& m) {
    using std::sqrt;
    const Scalar p1 = m.m3 * m.m2, p2 = m.m1 * m.m3, p3 = m.m2 * m.m1;
    return p1 * sqrt(p1 / m.m32()) + p2 * sqrt(p2 / m.m13()) + p3 * sqrt(p3 / m.m21());
}

/// All scalar bounds derived from an energy level H = -alpha < 0:
/// the pointwise trace bound, the Sturm comparison frequencies, and the
/// syzygy deadlines T1 (zero angular momentum) and Tgen (antisymmetric start).
template <typename Scalar>
struct EnergyBoundsT {
    Scalar alpha;
    Scalar Sigma;
    Scalar traceBound;  // -alpha^3 / Sigma^2
    Scalar zetaSq;      // alpha^3 / (2 Sigma^2)
    Scalar thetaSq;     // alpha^3 / Sigma^2
    Scalar T1;          // sqrt(2) pi Sigma / alpha^(3/2)  ==  pi / zeta
    Scalar Tgen;        // pi Sigma / alpha^(3/2)          ==  pi / theta
};

using EnergyBounds = EnergyBoundsT<double>;

template <typename Scalar>
EnergyBoundsT<Scalar> energy_bounds(const MassesT<Scalar>& m, Scalar alpha) {
    using std::pow;
    using std::sqrt;
    if (!(alpha > Scalar(0))) throw NotNegativeEnergy("energy_bounds: alpha must be positive");
    EnergyBoundsT<Scalar> b;
    b.alpha = alpha;
    b.Sigma = sigma_constant(m);
    const Scalar a3 = alpha * alpha * alpha;
    b.traceBound = -a3 / (b.Sigma * b.Sigma);
    b.zetaSq = a3 / (Scalar(2) * b.Sigma * b.Sigma);
    b.thetaSq = a3 / (b.Sigma * b.Sigma);
    const Scalar pi = Scalar(3.14159265358979323846264338327950288L);
    b.Tgen = pi * b.Sigma / (alpha * sqrt(alpha));
    b.T1 = sqrt(Scalar(2)) * b.Tgen;
    return b;
}

// ---- pointwise inequality: Tr(A) <= -alpha^3 / Sigma^2 ------------------------

template <typename Scalar>
struct TraceBoundT {
    Scalar traceA;
    Scalar bound;   // -alpha^3 / Sigma^2
    Scalar margin;  // bound - traceA, nonnegative when H < 0
};

using TraceBound = TraceBoundT<double>;

template <typename Scalar>
TraceBoundT<Scalar> trace_bound_check(const MassesT<Scalar>& m, const BodyStateT<Scalar>& s) {
    const Scalar H = total_energy(m, s);
    if (!(H < Scalar(0))) throw NotNegativeEnergy("trace_bound_check: state has H >= 0");
    const EnergyBoundsT<Scalar> b = energy_bounds(m, -H);
    TraceBoundT<Scalar> out;
    out.traceA = build_matrices(m, s).traceA;
    out.bound = b.traceBound;
    out.margin = out.bound - out.traceA;
    return out;
}

// ---- pointwise algebraic identities -------------------------------------------

/// Residuals of the pointwise matrix identities at one state, for a prescribed
/// angular momentum value k.  beta/gamma and the quadratic form are the
/// zero-angular-momentum positivity diagnostic: for k = 0,
/// discriminant = 4 * quad_form >= 0.
template <typename Scalar>
struct IdentityResidualsT {
    Scalar form_residual;   // || Xdot*adj(X) - (delta1'/2) I - (b/m2) At1 + (a/m1) At2 + k (m3/2) J ||_max
    Scalar trace_residual;  // | Tr(Xdot*adj(X)) - delta1' |  (zero by construction)
    Scalar det_residual;    // | det(Xdot*adj(X)) - delta1 * delta2 |
    Scalar discriminant;    // delta1'^2 - 4 delta1 delta2
    Scalar quad_form;       // beta^2 a^2 + (2 beta gamma - 1) a b + gamma^2 b^2
    Scalar beta, gamma;
    Scalar scale;           // max(1, ||Xdot*adj(X)||_max)
};

using IdentityResiduals = IdentityResidualsT<double>;

template <typename Scalar>
IdentityResidualsT<Scalar> identity_residuals(const MassesT<Scalar>& m, const BodyStateT<Scalar>& s,
                                              Scalar k) {
    const MassWeightedFrameT<Scalar> f = mass_weighted_frame(m, s);
    const ConleyMatricesT<Scalar> c = build_matrices(m, s);
    const Mat2<Scalar> P = f.xdot_adjx();
    const Scalar d1dot = P.trace();

    IdentityResidualsT<Scalar> out;
    const Mat2<Scalar> R = P - (d1dot / Scalar(2)) * Mat2<Scalar>::Identity() -
                           (f.b() / m.m2) * c.At1 + (f.a() / m.m1) * c.At2 +
                           k * (m.m3 / Scalar(2)) * c.J;
    out.form_residual = R.cwiseAbs().maxCoeff();
    out.trace_residual = std::abs(P.trace() - d1dot);
    out.det_residual = std::abs(P.determinant() - f.delta1 * f.delta2);
    out.discriminant = d1dot * d1dot - Scalar(4) * f.delta1 * f.delta2;
    out.beta = (m.m3 / m.m1 + Scalar(1)) / Scalar(2);
    out.gamma = (m.m3 / m.m2 + Scalar(1)) / Scalar(2);
    out.quad_form = out.beta * out.beta * f.a() * f.a() +
                    (Scalar(2) * out.beta * out.gamma - Scalar(1)) * f.a() * f.b() +
                    out.gamma * out.gamma * f.b() * f.b();
    out.scale = std::max(Scalar(1), P.cwiseAbs().maxCoeff());
    return out;
}

}  // namespace syzygy
