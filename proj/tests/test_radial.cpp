// Radial bound-state pipeline: shooting classification, golden eigenvalue,
// unit-norm rescale, tail sampling, quadrature oracles.
//
// Golden numbers were computed by an independent reference implementation of
// the same documented algorithm (fixed-step RK4 shooting on V(0), tail-freeze
// eigenvalue extraction, unit-norm rescale) and frozen here.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sn/diagnostics.hpp"
#include "sn/errors.hpp"
#include "sn/radial.hpp"

namespace {

constexpr double kGoldenV0 = -0.918579771803;    // bare central V(0)
constexpr double kGoldenEbare = -0.978959194514; // eigenvalue at psi(0) = 1
constexpr double kGoldenNormBare = 43.5833924380;
constexpr double kGoldenE0 = -5.153740249227e-4; // unit-norm eigenvalue
constexpr double kGoldenPsiPeak = 5.26451e-4;    // unit-norm psi0(0)

const sn::GroundStateProfile& acceptance_profile() {
    static const sn::GroundStateProfile p =
        sn::find_ground_state(1e-12, sn::RadialGrid{40.0, 20000});
    return p;
}

} // namespace

TEST_CASE("radial rhs: regular limits at the origin, ODE away from it") {
    const sn::RadialState s{1.0, 0.0, -0.9, 0.0};
    const sn::RadialState d0 = sn::radial_rhs(0.0, s);
    CHECK(d0.psi == 0.0);                       // psi'
    CHECK(d0.dpsi == doctest::Approx(-0.3));    // psi'' = V psi / 3
    CHECK(d0.V == 0.0);                         // V'
    CHECK(d0.dV == doctest::Approx(1.0 / 3.0)); // V'' = psi^2 / 3

    const sn::RadialState s1{0.5, -0.2, -0.4, 0.1};
    const sn::RadialState d1 = sn::radial_rhs(2.0, s1);
    CHECK(d1.psi == -0.2);
    CHECK(d1.dpsi == doctest::Approx(-2.0 / 2.0 * (-0.2) + (-0.4) * 0.5));
    CHECK(d1.V == 0.1);
    CHECK(d1.dV == doctest::Approx(-2.0 / 2.0 * 0.1 + 0.25));

    CHECK_THROWS_AS(sn::radial_rhs(-1.0, s), std::domain_error);
}

TEST_CASE("shooting classifies the two sides of the ground-state boundary") {
    const sn::RadialGrid g{40.0, 20000};
    // Deeper central potential: the amplitude crosses zero at least once.
    const sn::ShootResult deep = sn::shoot(kGoldenV0 - 1e-3, g);
    CHECK(deep.node_count >= 1);
    // Shallower: no node, the amplitude eventually diverges upward.
    const sn::ShootResult shallow = sn::shoot(kGoldenV0 + 1e-3, g);
    CHECK(shallow.node_count == 0);
    CHECK(shallow.classification == sn::ShootClass::DIVERGES_UP);
    // Trajectories store the nodes actually integrated.
    CHECK(deep.last >= 1);
    CHECK(int(deep.psi.size()) == deep.last + 1);
    CHECK(deep.psi[0] == 1.0);
    CHECK(deep.V[0] == kGoldenV0 - 1e-3);
}

TEST_CASE("golden ground state at r_max 40, n 20000") {
    const sn::GroundStateProfile& p = acceptance_profile();

    CHECK(p.E0 == doctest::Approx(kGoldenE0).epsilon(1e-6));
    CHECK(p.norm == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(p.psi0[0] == doctest::Approx(kGoldenPsiPeak).epsilon(1e-5));
    // Unit-norm stretch: r_max expands by the bare norm.
    CHECK(p.grid.r_max == doctest::Approx(40.0 * kGoldenNormBare).epsilon(1e-6));
    CHECK(p.grid.n == 20000);

    // Nodeless and sign-definite: psi0 > 0 up to the tail, phi0 < 0 throughout.
    for (int k = 0; k < p.grid.n; ++k) {
        CHECK(p.psi0[k] > 0.0);
        CHECK(p.phi0[k] < 0.0);
    }
    // The far potential approaches the point-mass form -1/(4 pi r).
    const int k9 = int(std::lround(0.9 * (p.grid.n - 1)));
    const double r9 = p.grid.r(k9);
    CHECK(4.0 * std::numbers::pi * r9 * p.phi0[k9] == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("undoing the unit-norm stretch recovers the bare shooting solution") {
    const sn::GroundStateProfile& p = acceptance_profile();
    // The solver rescaled by 1/norm_bare; scaling back by r_max/40 undoes it.
    const sn::GroundStateProfile bare = sn::rescale_profile(p, p.grid.r_max / 40.0);
    CHECK(bare.grid.r_max == doctest::Approx(40.0).epsilon(1e-12));
    CHECK(bare.psi0[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(bare.norm == doctest::Approx(kGoldenNormBare).epsilon(1e-8));
    CHECK(bare.E0 == doctest::Approx(kGoldenEbare).epsilon(1e-8));
    // V(0) = phi(0) - E reproduces the golden bisection root.
    CHECK(bare.phi0[0] - bare.E0 == doctest::Approx(kGoldenV0).epsilon(1e-8));
}

TEST_CASE("virial ratios of the ground state") {
    const sn::VirialReport vr = sn::virial_check(acceptance_profile());
    CHECK(vr.kinetic_ratio == doctest::Approx(-1.0 / 3.0).epsilon(3e-3));
    CHECK(vr.potential_ratio == doctest::Approx(4.0 / 3.0).epsilon(3e-3));
}

TEST_CASE("rescale is the exact symmetry map and is reversible") {
    const sn::GroundStateProfile& p = acceptance_profile();
    const double l = 2.0;
    const sn::GroundStateProfile q = sn::rescale_profile(p, l);
    CHECK(q.grid.n == p.grid.n);
    CHECK(q.grid.r_max == p.grid.r_max / l);
    CHECK(q.E0 == l * l * p.E0);
    CHECK(q.norm == l * p.norm);
    for (int k : {0, 1, 777, p.grid.n - 1}) {
        CHECK(q.psi0[k] == l * l * p.psi0[k]);
        CHECK(q.phi0[k] == l * l * p.phi0[k]);
    }
    // Powers of two rescale bit-exactly there and back.
    const sn::GroundStateProfile rt = sn::rescale_profile(q, 0.5);
    CHECK(rt.E0 == p.E0);
    CHECK(rt.norm == p.norm);
    CHECK(rt.grid.r_max == p.grid.r_max);
    for (int k = 0; k < p.grid.n; ++k) {
        CHECK(rt.psi0[k] == p.psi0[k]);
        CHECK(rt.phi0[k] == p.phi0[k]);
    }
    CHECK_THROWS_AS(sn::rescale_profile(p, 0.0), sn::ConfigError);
    CHECK_THROWS_AS(sn::rescale_profile(p, -2.0), sn::ConfigError);
}

TEST_CASE("sampling: exact at nodes, continuous at the seam, point mass far out") {
    const sn::GroundStateProfile& p = acceptance_profile();
    for (int k : {0, 1, 5000, p.grid.n - 2}) {
        const auto [ps, ph] = sn::sample_profile(p, p.grid.r(k));
        CHECK(ps == doctest::Approx(p.psi0[k]).epsilon(1e-13));
        CHECK(ph == doctest::Approx(p.phi0[k]).epsilon(1e-13));
    }
    // Seam continuity at r_max.
    const double rm = p.grid.r_max;
    const auto [ps_in, ph_in] = sn::sample_profile(p, rm * (1.0 - 1e-9));
    const auto [ps_out, ph_out] = sn::sample_profile(p, rm * (1.0 + 1e-9));
    CHECK(ps_out == doctest::Approx(ps_in).epsilon(1e-6));
    CHECK(ph_out == doctest::Approx(ph_in).epsilon(1e-6));
    // Far potential is the point-mass form for a unit-norm lump.
    const auto [ps_far, ph_far] = sn::sample_profile(p, 2.0 * rm);
    CHECK(ph_far == doctest::Approx(-1.0 / (4.0 * std::numbers::pi * 2.0 * rm))
                         .epsilon(1e-12));
    // The extended amplitude tail keeps decaying.
    const auto [ps_far2, ph_far2] = sn::sample_profile(p, 3.0 * rm);
    (void)ph_far2;
    CHECK(ps_far > 0.0);
    CHECK(ps_far2 < ps_far);
    CHECK_THROWS_AS(sn::sample_profile(p, -1.0), std::domain_error);
}

TEST_CASE("quadrature oracles: polynomials and an exponential") {
    const sn::RadialGrid g{1.0, 1001};
    std::vector<double> one(g.n, 1.0), r2(g.n), er(g.n);
    for (int k = 0; k < g.n; ++k) {
        const double r = g.r(k);
        r2[k] = r * r;
        er[k] = std::exp(-r);
    }
    const double pi4 = 4.0 * std::numbers::pi;
    CHECK(sn::radial_quadrature(g, one) == doctest::Approx(pi4 / 3.0).epsilon(1e-12));
    CHECK(sn::radial_quadrature(g, r2) == doctest::Approx(pi4 / 5.0).epsilon(1e-12));
    // 4 pi * int_0^1 r^2 e^-r dr = 4 pi (2 - 5/e)
    CHECK(sn::radial_quadrature(g, er) ==
          doctest::Approx(pi4 * (2.0 - 5.0 / std::numbers::e)).epsilon(1e-10));

    // Odd interval count exercises the trailing 3/8 rule.
    const sn::RadialGrid g2{1.0, 1002};
    std::vector<double> r2b(g2.n);
    for (int k = 0; k < g2.n; ++k) r2b[k] = g2.r(k) * g2.r(k);
    CHECK(sn::radial_quadrature(g2, r2b) == doctest::Approx(pi4 / 5.0).epsilon(1e-12));
}

TEST_CASE("support radius finds the requested amplitude fraction") {
    sn::GroundStateProfile p;
    p.grid = sn::RadialGrid{10.0, 2001};
    p.psi0.resize(p.grid.n);
    p.phi0.assign(p.grid.n, -1.0);
    for (int k = 0; k < p.grid.n; ++k) p.psi0[k] = std::exp(-p.grid.r(k));
    p.E0 = -1.0;
    p.norm = 1.0;
    const double r = sn::profile_support_radius(p, std::exp(-2.0));
    CHECK(r == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_THROWS_AS(sn::profile_support_radius(p, 0.0), sn::ConfigError);
    // A threshold below the table minimum cannot be bracketed.
    CHECK_THROWS_AS(sn::profile_support_radius(p, 1e-30), sn::RuntimeError);
}

TEST_CASE("configuration errors are rejected before any integration") {
    CHECK_THROWS_AS(sn::find_ground_state(0.0, sn::RadialGrid{40.0, 20000}),
                    sn::ConfigError);
    CHECK_THROWS_AS(sn::find_ground_state(1e-12, sn::RadialGrid{40.0, 200}),
                    sn::ConfigError);
    CHECK_THROWS_AS(sn::find_ground_state(1e-12, sn::RadialGrid{-1.0, 20000}),
                    sn::ConfigError);
}
