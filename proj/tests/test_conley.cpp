#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "syzygy/conley.hpp"
#include "syzygy/orbits.hpp"
#include "test_support.hpp"

using namespace syzygy;
using testsup::make_state;

namespace {
const Masses kEqual{1.0, 1.0, 1.0};
const std::array<Masses, 5> kMassSets = {Masses{1, 1, 1}, Masses{1, 2, 3}, Masses{0.5, 1, 2},
                                         Masses{3, 1, 0.2}, Masses{2, 5, 1}};

Vec3<double> random_rho(Rng& rng) {
    return Vec3<double>(rng.uniform(0.01, 10), rng.uniform(0.01, 10), rng.uniform(0.01, 10));
}
}  // namespace

TEST_CASE("build_matrices: equal masses at unit rho give A = -3 I") {
    const auto c = build_matrices(kEqual, Vec3<double>(1, 1, 1));
    CHECK((c.A + 3.0 * Mat2<double>::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(c.traceA == -6.0);
}

TEST_CASE("build_matrices: equal-mass trace formula") {
    Rng rng(3);
    for (int k = 0; k < 100; ++k) {
        const Vec3<double> rho = random_rho(rng);
        const auto c = build_matrices(kEqual, rho);
        CHECK(c.traceA ==
              doctest::Approx(-2.0 * (rho[0] + rho[1] + rho[2])).epsilon(1e-15));
    }
}

TEST_CASE("build_matrices: A equals its mass-basis decomposition") {
    Rng rng(17);
    for (int k = 0; k < 10000; ++k) {
        const Masses& m = kMassSets[k % kMassSets.size()];
        const Vec3<double> rho = random_rho(rng);
        const auto c = build_matrices(m, rho);
        const Mat2<double> recomposed = rho[0] * c.A1 + rho[1] * c.A2 + rho[2] * c.A3;
        const double scale = c.A.cwiseAbs().maxCoeff();
        CHECK((c.A - recomposed).cwiseAbs().maxCoeff() <= 1e-13 * std::max(1.0, scale));
        CHECK(std::abs(c.A.trace() - c.traceA) <= 1e-13 * std::abs(c.traceA));
    }
}

TEST_CASE("build_matrices: mass matrices sum to -M I, traceless parts sum to zero") {
    Rng rng(19);
    for (int k = 0; k < 1000; ++k) {
        Masses m{rng.uniform(0.1, 5), rng.uniform(0.1, 5), rng.uniform(0.1, 5)};
        const auto c = build_matrices(m, Vec3<double>(1, 2, 3));
        const Mat2<double> sum = c.A1 + c.A2 + c.A3 + m.total() * Mat2<double>::Identity();
        CHECK(sum.cwiseAbs().maxCoeff() <= 1e-15 * m.total());
        const Mat2<double> tsum = c.At1 + c.At2 + c.At3;
        CHECK(tsum.cwiseAbs().maxCoeff() <= 1e-15 * m.total());
        CHECK(c.At1.trace() == 0.0);
        CHECK(c.At2.trace() == 0.0);
        CHECK(c.At3.trace() == 0.0);
    }
}

TEST_CASE("build_matrices: L is orthogonal to every mass matrix") {
    Rng rng(23);
    for (int k = 0; k < 1000; ++k) {
        Masses m{rng.uniform(0.05, 8), rng.uniform(0.05, 8), rng.uniform(0.05, 8)};
        const auto c = build_matrices(m, Vec3<double>(1, 1, 1));
        const double Lnorm = c.L.norm();
        for (const Mat2<double>* Ai : {&c.A1, &c.A2, &c.A3})
            CHECK(std::abs(mat_inner(c.L, *Ai)) <= 1e-13 * Lnorm * Ai->norm());
    }
}

TEST_CASE("angular momentum via <Xdot adjX, L> matches the direct sum") {
    Rng rng(29);
    for (int k = 0; k < 10000; ++k) {
        const Masses& m = kMassSets[k % kMassSets.size()];
        const BodyState s = testsup::random_barycentric_state(m, rng);
        const auto c = build_matrices(m, s);
        const double via_L = mat_inner(mass_weighted_frame(m, s).xdot_adjx(), c.L);
        const double direct = angular_momentum(m, s);
        CHECK(std::abs(via_L - direct) <= 1e-12 * std::max(1.0, angular_momentum_scale(m, s)));
    }
}

TEST_CASE("sigma_constant: equal masses and homogeneity") {
    CHECK(sigma_constant(kEqual) == doctest::Approx(3.0 / std::sqrt(2.0)).epsilon(1e-15));
    for (double mm : {0.5, 2.0, 7.0}) {
        const Masses m{mm, mm, mm};
        CHECK(sigma_constant(m) ==
              doctest::Approx(3.0 * std::pow(mm, 2.5) / std::sqrt(2.0)).epsilon(1e-14));
    }
    // degree 5/2 homogeneity on a generic triple
    const Masses base{1, 2, 3};
    const Masses scaled{2, 4, 6};
    CHECK(sigma_constant(scaled) ==
          doctest::Approx(std::pow(2.0, 2.5) * sigma_constant(base)).epsilon(1e-14));
}

TEST_CASE("sigma_constant: (1,2,3) against extended-precision evaluation") {
    const MassesT<long double> mld{1.0L, 2.0L, 3.0L};
    const long double want = sigma_constant(mld);
    CHECK(sigma_constant(Masses{1, 2, 3}) == doctest::Approx((double)want).epsilon(1e-15));
    CHECK(sigma_constant(Masses{1, 2, 3}) == doctest::Approx(10.8038).epsilon(1e-4));
}

TEST_CASE("energy_bounds: equal masses, alpha = 1") {
    const EnergyBounds b = energy_bounds(kEqual, 1.0);
    CHECK(b.T1 == doctest::Approx(3.0 * M_PI).epsilon(1e-14));
    CHECK(b.Tgen == doctest::Approx(3.0 * M_PI / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(b.traceBound == doctest::Approx(-2.0 / 9.0).epsilon(1e-14));
    const EnergyBounds b15 = energy_bounds(kEqual, 1.5);
    CHECK(b15.T1 == doctest::Approx(3.0 * M_PI / std::pow(1.5, 1.5)).epsilon(1e-14));
    CHECK_THROWS_AS(energy_bounds(kEqual, 0.0), NotNegativeEnergy);
    CHECK_THROWS_AS(energy_bounds(kEqual, -1.0), NotNegativeEnergy);
}

TEST_CASE("energy_bounds: internal consistency") {
    Rng rng(31);
    for (int k = 0; k < 500; ++k) {
        const Masses& m = kMassSets[k % kMassSets.size()];
        const EnergyBounds b = energy_bounds(m, rng.uniform(0.01, 20));
        CHECK(b.T1 * std::sqrt(b.zetaSq) == doctest::Approx(M_PI).epsilon(1e-14));
        CHECK(b.Tgen * std::sqrt(b.thetaSq) == doctest::Approx(M_PI).epsilon(1e-14));
        CHECK(b.T1 == doctest::Approx(std::sqrt(2.0) * b.Tgen).epsilon(1e-14));
        CHECK(b.traceBound == doctest::Approx(-2.0 * b.zetaSq).epsilon(1e-14));
    }
}

TEST_CASE("trace_bound_check: equality at the equilateral rest shape") {
    // Equal masses, side 1, at rest: alpha = U = 3, Tr(A) = -6 = -alpha^3/Sigma^2.
    const double R = 1.0 / std::sqrt(3.0);
    BodyState s;
    for (int i = 0; i < 3; ++i) {
        const double ang = M_PI / 2 + 2.0 * M_PI * i / 3.0;
        s.r(i) = R * Vec2<double>(std::cos(ang), std::sin(ang));
    }
    const TraceBound tb = trace_bound_check(kEqual, s);
    CHECK(tb.traceA == doctest::Approx(-6.0).epsilon(1e-13));
    CHECK(tb.bound == doctest::Approx(-6.0).epsilon(1e-13));
    CHECK(std::abs(tb.margin) <= 1e-12 * std::abs(tb.traceA));

    // Any kinetic energy at the same shape pushes the bound strictly down.
    BodyState moving = s;
    moving.v1 = Vec2<double>(0.3, 0.1);
    moving.v2 = Vec2<double>(-0.2, 0.05);
    moving.v3 = Vec2<double>(-0.1, -0.15);
    moving = reduce_to_barycentric(kEqual, moving);
    const TraceBound tb2 = trace_bound_check(kEqual, moving);
    CHECK(tb2.margin > 0.0);
}

TEST_CASE("trace_bound_check: rejects nonnegative energy") {
    BodyState s = make_state({-1, 0}, {0, 0}, {1, 0}, {0, -9}, {9, 0}, {0, 9});
    s = reduce_to_barycentric(kEqual, s);
    REQUIRE(total_energy(kEqual, s) > 0.0);
    CHECK_THROWS_AS(trace_bound_check(kEqual, s), NotNegativeEnergy);
}

TEST_CASE("trace_bound_check: pointwise bound over random negative-energy states") {
    Rng rng(37);
    int checked = 0;
    while (checked < 10000) {
        const Masses& m = kMassSets[checked % kMassSets.size()];
        BodyState s = testsup::random_barycentric_state(m, rng);
        if (total_energy(m, s) >= 0.0) {
            for (int i = 0; i < 3; ++i) s.v(i) *= 0.2;  // damp into the negative-energy regime
            if (total_energy(m, s) >= 0.0) continue;
        }
        const TraceBound tb = trace_bound_check(m, s);
        CHECK(tb.margin >= -1e-12 * std::abs(tb.traceA));
        ++checked;
    }
}

TEST_CASE("identity_residuals: rest state vanishes identically") {
    const BodyState s =
        reduce_to_barycentric(kEqual, make_state({-1, 0.2}, {0.4, -0.1}, {0.7, 0}));
    const IdentityResiduals r = identity_residuals(kEqual, s, 0.0);
    CHECK(r.form_residual == 0.0);
    CHECK(r.trace_residual == 0.0);
    CHECK(r.det_residual == 0.0);
    CHECK(r.discriminant == 0.0);
    CHECK(r.quad_form == 0.0);
}

TEST_CASE("identity_residuals: identity/swap configuration") {
    const BodyState s = make_state({1, 0}, {0, 1}, {-1, -1}, {0, 1}, {1, 0}, {-1, -1});
    REQUIRE(angular_momentum(kEqual, s) == 0.0);
    const IdentityResiduals r = identity_residuals(kEqual, s, 0.0);
    CHECK(r.discriminant == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(r.form_residual <= 1e-15);
    // k = 0: the discriminant equals four times the positivity quadratic
    CHECK(r.discriminant == doctest::Approx(4.0 * r.quad_form).epsilon(1e-13));
}

TEST_CASE("identity_residuals: form identity over random states") {
    Rng rng(41);
    for (int k = 0; k < 10000; ++k) {
        const Masses& m = kMassSets[k % kMassSets.size()];
        const BodyState s = testsup::random_barycentric_state(m, rng);
        const double I = angular_momentum(m, s);
        const IdentityResiduals r = identity_residuals(m, s, I);
        CHECK(r.form_residual <= 1e-12 * r.scale);
        const MassWeightedFrame f = mass_weighted_frame(m, s);
        CHECK(r.det_residual <= 1e-12 * std::max(1.0, std::abs(f.delta1 * f.delta2)));
        CHECK(r.beta > 0.5);
        CHECK(r.gamma > 0.5);
    }
}

TEST_CASE("identity_residuals: zero angular momentum makes the discriminant nonnegative") {
    Rng rng(43);
    for (int k = 0; k < 10000; ++k) {
        const Masses& m = kMassSets[k % kMassSets.size()];
        BodyState s = testsup::random_barycentric_state(m, rng);
        s = project_zero_angular_momentum(m, s);
        const IdentityResiduals r = identity_residuals(m, s, 0.0);
        const double scale = std::max(1.0, r.scale * r.scale);
        CHECK(r.discriminant >= -1e-10 * scale);
        // both algebraic routes to the k = 0 inequality agree
        CHECK(std::abs(r.discriminant - 4.0 * r.quad_form) <= 1e-10 * scale);
        CHECK(r.quad_form >= -1e-12 * scale);
    }
}
