#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "syzygy/integrate.hpp"

namespace syzygy {

enum class EventKind {
    position_syzygy,     // delta1 = 0: the bodies are collinear
    velocity_alignment,  // delta2 = 0: the velocities are collinear
    simultaneous,        // both within the simultaneity tolerance
};

const char* to_string(EventKind k);

/// A located zero of delta1 or delta2 along a trajectory.
struct Event {
    double t = 0.0;
    EventKind kind = EventKind::position_syzygy;
    std::optional<int> middle_body;  // 1..3, position syzygies only
    double delta1 = 0.0;
    double delta2 = 0.0;
    double H = 0.0;
    double I = 0.0;
    bool grazing = false;  // |f| dipped below the graze tolerance without a sign change
};

enum class Monitored { delta1, delta2, both };

struct DetectorConfig {
    double tol_event_factor = 1e-11;  // of the monitored function's scale
    double tol_graze_factor = 1e-7;
    int samples_per_step = 8;
    double simultaneous_tol = 1e-10;  // time tolerance for merging delta1/delta2 zeros
};

struct ScanResult {
    std::vector<Event> events;  // ordered by time
    bool degenerate_delta1 = false;  // delta1 identically zero over the whole span
    bool degenerate_delta2 = false;
    double delta1_scale = 0.0;  // magnitude scale used for tolerances
    double delta2_scale = 0.0;
    double tol_event_delta1 = 0.0;
    double tol_event_delta2 = 0.0;
};

/// Locate every zero of the monitored determinant(s) along the trajectory.
/// Transversal zeros are refined to sign-change events; shallow |f| minima
/// below the graze tolerance are reported with grazing = true.
ScanResult scan_events(const DenseTrajectory& traj, Monitored which,
                       const DetectorConfig& cfg = {});

/// Bracketed root refinement of f(dense state at t) on [t_lo, t_hi].
/// Requires a sign change over the bracket.
double refine_event_time(const DenseTrajectory& traj, double t_lo, double t_hi,
                         const std::function<double(const BodyState&)>& f);

/// Antisymmetry of a configuration: the mass-weighted product delta1*delta2
/// and the three unweighted pair products, which all share its sign.
struct AntisymmetryIndicator {
    double value = 0.0;                          // delta1 * delta2
    std::array<double, 3> pair_products{};       // pairs (1,2), (2,3), (1,3), unweighted
    bool is_antisymmetric = false;               // value < 0 with both factors resolved
    double delta1 = 0.0;
    double delta2 = 0.0;
};

AntisymmetryIndicator antisymmetry_indicator(const Masses& m, const BodyState& s);

/// At a position syzygy, which body's projection lies between the other two.
/// Returns nullopt for degenerate (coincident) projections; throws NotASyzygy
/// when the state is not collinear to tolerance.
std::optional<int> classify_middle_body(const Masses& m, const BodyState& s);

}  // namespace syzygy
