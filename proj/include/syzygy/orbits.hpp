#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "syzygy/integrate.hpp"

namespace syzygy {

/// A canonical starting point for experiments: masses, a barycentric state at
/// t = 0, and whatever is known about the orbit it generates.
struct InitialCondition {
    Masses masses{1.0, 1.0, 1.0};
    BodyState state;
    std::string provenance;
    std::optional<double> period;
    std::optional<double> known_H;
    std::optional<double> known_I;
};

/// Equilateral configuration in rigid rotation about the barycenter,
/// omega^2 = M / side^3. Body 1 is placed at polar angle 90 degrees.
InitialCondition lagrange_circular(const Masses& m, double side);

/// Collinear central configuration in rigid rotation. `central` (1..3) picks
/// the middle body; `scale` is the gap between the left and middle bodies.
/// The spacing ratio solves the collinear force-balance condition.
InitialCondition euler_circular(const Masses& m, int central, double scale);

/// The equal-mass figure-eight choreography, shipped as shooting-refined
/// values with zero angular momentum and negative energy. The state is offset
/// from the collinear phase so delta1(0) is well away from zero.
InitialCondition figure_eight();

struct SamplerConstraints {
    bool negative_energy = false;
    bool zero_momentum = false;
    bool antisymmetric = false;
    bool free_fall = false;  // zero velocities (implies zero momentum)
    double min_separation = 0.1;
    double box_half_width = 1.0;
    Masses masses{1.0, 1.0, 1.0};
    int rejection_budget = 20000;
};

/// Seeded random initial condition satisfying the requested constraints.
/// Identical seed and constraints give bit-identical output.
InitialCondition random_ic(std::uint64_t seed, const SamplerConstraints& c = {});

/// Subtract the rigid rotation omega = I / (sum m_i |r_i|^2) from the
/// velocities, zeroing the angular momentum without touching the linear
/// momentum. Idempotent.
BodyState project_zero_angular_momentum(const Masses& m, const BodyState& s);

/// rtol 1e-12 / atol 1e-14 configuration used for fixture verification.
IntegratorConfig tight_integrator_config();

/// Scale-normalized distance between state(period) and state(0).
double periodicity_residual(const InitialCondition& ic, double period,
                            const IntegratorConfig& cfg = tight_integrator_config());

/// Scale-normalized distance between two states (positions and velocities).
double state_distance(const BodyState& a, const BodyState& b);

struct ShootingResult {
    InitialCondition ic;
    double period = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

/// Gauss-Newton shooting refinement of the isosceles-symmetric choreography
/// parametrisation (r1 = -r2, r3 = 0, v1 = v2 = -v3/2), used to regenerate
/// the figure-eight fixture from published starting values.
ShootingResult refine_symmetric_choreography(const Vec2<double>& r1, const Vec2<double>& v3,
                                             double period_guess, int max_iterations = 12);

}  // namespace syzygy
