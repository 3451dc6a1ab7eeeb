#pragma once

#include <Eigen/Dense>

#include <vector>

#include "syzygy/state.hpp"

namespace syzygy {

using StateVec = Eigen::Matrix<double, 12, 1>;  // r1 r2 r3 v1 v2 v3, (x, y) pairs

StateVec pack_state(const BodyState& s);
BodyState unpack_state(const StateVec& y, double t);

enum class Termination {
    completed,           // reached t_end
    collision_approach,  // a pairwise distance crossed the threshold
    step_failure,        // step size underflowed
    max_steps,           // step budget exhausted
};

const char* to_string(Termination t);

struct IntegratorConfig {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 0.0;  // 0 = automatic
    long max_steps = 400000;
    /// collision threshold = collision_factor * (largest pairwise distance at t0)
    double collision_factor = 1e-8;
    bool dense = true;
};

/// One accepted step with its quartic interpolation coefficients.
struct StepRecord {
    double t0 = 0.0;
    double h = 0.0;
    Eigen::Matrix<double, 12, 5> rcont;  // columns: interpolation coefficients
};

/// Time-ordered accepted steps with dense interpolants and per-step
/// conservation drift. Immutable once produced; safe to share across threads.
struct DenseTrajectory {
    Masses masses;
    std::vector<double> times;      // accepted-step times, strictly increasing
    std::vector<BodyState> states;  // state at each accepted time
    std::vector<StepRecord> steps;  // steps.size() == times.size() - 1 when dense
    std::vector<double> h_drift_rel;  // |H(t) - H0| / max(|H0|, eps) per accepted step
    std::vector<double> i_drift_abs;  // |I(t) - I0| per accepted step

    Termination termination = Termination::completed;
    double t_start = 0.0;
    double t_reached = 0.0;
    double H0 = 0.0;
    double I0 = 0.0;
    double collision_threshold = 0.0;
    double min_distance_seen = 0.0;
    long n_accepted = 0;
    long n_rejected = 0;
    long n_rhs = 0;

    bool empty() const { return times.empty(); }
    double span_begin() const { return t_start; }
    double span_end() const { return t_reached; }
};

/// Integrate the equations of motion from ic.t to t_end (t_end > ic.t).
/// Always returns the trajectory covered so far; `termination` says whether
/// the full span was reached.
DenseTrajectory integrate(const Masses& m, const BodyState& ic, double t_end,
                          const IntegratorConfig& cfg = {});

/// Evaluate the dense interpolant at time t within the trajectory span.
BodyState dense_eval(const DenseTrajectory& traj, double t);

struct DriftReport {
    double max_rel_H = 0.0;
    double max_abs_I = 0.0;
};

DriftReport drift_report(const DenseTrajectory& traj);

}  // namespace syzygy
