#pragma once

#include <optional>
#include <vector>

#include "syzygy/conley.hpp"
#include "syzygy/events.hpp"
#include "syzygy/integrate.hpp"

namespace syzygy {

// ---- the minimisation oracle behind the trace bound ---------------------------

/// Brute-force minimum of F(r) = m32 r1^3 + m13 r2^3 + m21 r3^3 over the
/// simplex { U(r) = s, r >= 0 }, next to the closed-form minimiser
/// r* = (s/Sigma) (sqrt(m3 m2/m32), sqrt(m1 m3/m13), sqrt(m2 m1/m21)) with
/// F(r*) = s^3 / Sigma^2. The sampled search is deliberately independent of
/// the closed form: it is the oracle the closed form is checked against.
struct MinFResult {
    double oracle_min = 0.0;
    Eigen::Vector3d oracle_argmin;
    double closed_min = 0.0;
    Eigen::Vector3d closed_argmin;
    double rel_gap = 0.0;  // |oracle - closed| / closed
};

MinFResult minF_oracle(const Masses& m, double s, long samples = 1000000,
                       std::uint64_t seed = 20240101);

// ---- theorem experiments ------------------------------------------------------

enum class TheoremOutcome {
    event_found,     // a (generalised) syzygy located within the bound interval
    collision_stop,  // close approach ended the run before the deadline
    violation,       // full interval integrated, no event: must never happen
};

const char* to_string(TheoremOutcome o);

struct TheoremReport {
    int theorem_id = 0;
    double alpha = 0.0;            // -H
    double angular_momentum = 0.0;
    double bound_time = 0.0;       // T1 or T
    TheoremOutcome outcome = TheoremOutcome::violation;
    std::optional<Event> event;    // first event when outcome == event_found
    double t_stop = 0.0;           // termination time for collision_stop
    DriftReport drift;
    double min_distance = 0.0;
};

/// Zero-angular-momentum syzygy deadline: integrates on [0, T1(alpha)] and
/// reports the first delta1 zero or the collision stop. Throws
/// HypothesisNotMet when |I| is not zero (to tolerance) or H >= 0.
TheoremReport verify_theorem1(const Masses& m, const BodyState& ic,
                              const IntegratorConfig& cfg = {},
                              const DetectorConfig& det = {});

/// Antisymmetric-start generalised-syzygy deadline: integrates on
/// [0, T(alpha)] and reports the first delta1 or delta2 zero.
TheoremReport verify_theorem3(const Masses& m, const BodyState& ic,
                              const IntegratorConfig& cfg = {},
                              const DetectorConfig& det = {});

// ---- theta-rigidity machinery ---------------------------------------------------

/// Certificate direction for the rigidity condition
/// S(t; theta) = theta1 (rho3-rho2) + theta2 (rho1-rho3) + theta3 (rho2-rho1) >= 0.
/// Canonical form: component sum zero (the (1,1,1) direction contributes
/// nothing), max-norm one. theta is only defined up to positive scaling, so
/// no sign is forced.
struct ThetaVector {
    Eigen::Vector3d theta;

    static ThetaVector canonical(const Eigen::Vector3d& raw);
};

/// S(t; theta) evaluated at a state.
double rigidity_sum(const ThetaVector& theta, const BodyState& s);

enum class Rigidity { rigid, not_rigid, inconclusive };

const char* to_string(Rigidity r);

struct RigidityResult {
    Rigidity verdict = Rigidity::inconclusive;
    double min_S = 0.0;
    double max_S = 0.0;
    double scale = 0.0;  // max rho over the sampled period
    double tol = 0.0;    // tol_S * scale
};

/// Decide rigidity over one verified period by dense sampling (grid plus
/// accepted steps). Throws NotPeriodic unless the trajectory closes to 1e-8.
RigidityResult theta_rigidity_check(const DenseTrajectory& traj, double period,
                                    const ThetaVector& theta, int grid = 4096);

/// Search for a feasible rigidity certificate over one period. The
/// constraints live in the plane of zero-sum directions, where each sample
/// allows a half-circle of angles; interseting those arcs solves the
/// feasibility problem exactly for the sampled constraint set.
std::optional<ThetaVector> find_theta(const DenseTrajectory& traj, double period, int grid = 4096);

/// Executable content of the periodic-rigidity theorem on one trajectory:
/// either a located syzygy, or (the contradiction exhibit) a one-signed
/// delta1 with nonzero integral of delta1 * S. Also verifies the derivative
/// identity d/dt (sum theta_i S_i / m_i) = delta1 * S by finite differences.
struct Theorem2Report {
    bool periodic = false;
    Rigidity rigidity = Rigidity::inconclusive;
    bool syzygy_found = false;
    bool degenerate_collinear = false;  // delta1 identically zero (Euler)
    std::optional<double> t_first;
    double integral_delta1_S = 0.0;
    double pointwise_max_rel = 0.0;  // FD residual of the derivative identity
};

Theorem2Report verify_theorem2_periodic(const DenseTrajectory& traj, double period,
                                        const ThetaVector& theta);

// ---- along-trajectory differential identities ------------------------------------

/// Finite-difference residuals of the differential identities, sampled along
/// a trajectory. All residuals are scaled by the magnitude of the identity's
/// own terms over the sample set.
struct IdentityCheckSeries {
    std::vector<double> times;
    double max_rel_eqdf = 0.0;      // delta1'' = Tr(A) delta1 + 2 delta2
    double max_rel_meqs = 0.0;      // d/dt (Xdot adjX) = sum (delta1 rho_i - delta2/M) A_i
    double max_rel_riccati = 0.0;   // C' + C^2 = A  where C = Xdot X^-1
    double max_rel_reduced = 0.0;   // d/dt (Xdot adjX - delta1'/2 I) = delta1 [(rho1-rho3) At1 + (rho2-rho3) At2]
    double richardson_gap = 0.0;    // agreement between h and h/2 evaluations
};

IdentityCheckSeries trajectory_identity_checks(const DenseTrajectory& traj, int n_samples = 100,
                                               double fd_step_factor = 1e-4,
                                               double riccati_delta1_floor = 0.05);

/// Sum of sampled S_i derivative residuals against m_i delta1 (rho_j - rho_k).
struct AreaDerivativeCheck {
    double max_rel = 0.0;
};

AreaDerivativeCheck area_derivative_check(const DenseTrajectory& traj, int n_samples = 100,
                                          double fd_step_factor = 1e-4);

// ---- Sturm / Hill diagnostics ------------------------------------------------------

/// Pointwise data of the comparison argument on a zero-angular-momentum,
/// syzygy-free window: eta = Tr(A)/2 - (delta1'^2 - 4 delta1 delta2)/(4 delta1^2),
/// which must sit below Tr(A)/2 and below -zeta^2 = -alpha^3/(2 Sigma^2),
/// and delta = sqrt(|delta1|) must satisfy delta'' = eta delta.
struct SturmDiagnostic {
    std::vector<double> times;
    std::vector<double> eta;
    double zeta_sq = 0.0;
    double min_margin_eta = 0.0;       // min over samples of Tr(A)/2 - eta
    double min_margin_trace = 0.0;     // min over samples of -zeta^2 - Tr(A)/2
    double min_discriminant = 0.0;     // min of delta1'^2 - 4 delta1 delta2
    double max_abs_discriminant = 0.0; // magnitude scale of the discriminant terms
    double max_rel_hill = 0.0;         // FD residual of delta'' = eta delta
};

SturmDiagnostic sturm_diagnostic(const DenseTrajectory& traj, double t_a, double t_b,
                                 int n_samples = 64, double fd_step_factor = 1e-4);

}  // namespace syzygy
