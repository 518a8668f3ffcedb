// Observable measurements: norm, energy split, centroid, momentum, equation
// residuals, and the point-lump energy prediction, each against a closed-form
// oracle field.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "sn/diagnostics.hpp"
#include "sn/errors.hpp"
#include "sn/fft3.hpp"
#include "sn/lumps.hpp"

using sn::cdouble;
using sn::Vec3;

namespace {

constexpr cdouble I{0.0, 1.0};

// Plane wave on grid wavenumbers: A exp(i k . x).
sn::ComplexField3 plane_wave(const sn::Grid3& g, cdouble A, int mx, int my, int mz) {
    sn::ComplexField3 f(g);
    const double k0 = 2.0 * std::numbers::pi / g.L;
    for (int iz = 0; iz < g.n; ++iz)
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix)
                f.at(ix, iy, iz) =
                    A * std::exp(I * (k0 * (mx * g.coord(ix) + my * g.coord(iy) +
                                            mz * g.coord(iz))));
    return f;
}

sn::ComplexField3 gaussian(const sn::Grid3& g, const Vec3& center, double sigma,
                           const Vec3& q) {
    sn::ComplexField3 f(g);
    for (int iz = 0; iz < g.n; ++iz)
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix) {
                const Vec3 r{g.coord(ix), g.coord(iy), g.coord(iz)};
                const Vec3 d = r - center;
                f.at(ix, iy, iz) = std::exp(-0.5 * d.norm2() / (sigma * sigma)) *
                                   std::exp(I * dot(q, r));
            }
    return f;
}

} // namespace

TEST_CASE("norm of a constant field is |c|^2 L^3") {
    const sn::Grid3 g{64, 20.0};
    sn::ComplexField3 f(g);
    const cdouble c{0.3, -0.4};
    for (auto& z : f.v) z = c;
    CHECK(sn::field_norm(f) ==
          doctest::Approx(std::norm(c) * g.L * g.L * g.L).epsilon(1e-14));
}

TEST_CASE("plane-wave energy splits into exact kinetic and potential parts") {
    const sn::Grid3 g{64, 20.0};
    const cdouble A{0.8, 0.6};
    const sn::ComplexField3 psi = plane_wave(g, A, 2, -1, 3);
    sn::RealField3 phi(g);
    const double c = -0.37;
    for (auto& v : phi.v) v = c;

    const double k0 = 2.0 * std::numbers::pi / g.L;
    const double k2 = k0 * k0 * (4.0 + 1.0 + 9.0);
    const double vol = g.L * g.L * g.L;
    const sn::EnergyReport er = sn::energy(psi, phi);
    CHECK(er.norm == doctest::Approx(std::norm(A) * vol).epsilon(1e-13));
    CHECK(er.kinetic == doctest::Approx(0.5 * k2 * std::norm(A) * vol).epsilon(1e-12));
    CHECK(er.potential ==
          doctest::Approx(0.25 * c * std::norm(A) * vol).epsilon(1e-13));
    CHECK(er.total == doctest::Approx(er.kinetic + er.potential).epsilon(1e-15));

    // Mismatched grids are rejected.
    sn::RealField3 wrong(sn::Grid3{64, 21.0});
    CHECK_THROWS_AS(sn::energy(psi, wrong), sn::ConfigError);
}

TEST_CASE("centroid and momentum of a drifting gaussian packet") {
    const sn::Grid3 g{64, 40.0};
    const Vec3 a{3.0, -2.0, 1.0};
    const Vec3 q{0.9424777960769379, 0.0, -0.4712388980384690}; // on-grid k
    const sn::ComplexField3 psi = gaussian(g, a, 2.5, q);

    const Vec3 c = sn::centroid(psi);
    CHECK(c.x == doctest::Approx(a.x).epsilon(1e-6));
    CHECK(c.y == doctest::Approx(a.y).epsilon(1e-6));
    CHECK(c.z == doctest::Approx(a.z).epsilon(1e-6));

    const double nrm = sn::field_norm(psi);
    const Vec3 p = sn::momentum(psi);
    CHECK(p.x == doctest::Approx(q.x * nrm).epsilon(1e-10));
    CHECK(p.y == doctest::Approx(0.0).scale(nrm));
    CHECK(p.z == doctest::Approx(q.z * nrm).epsilon(1e-10));
}

TEST_CASE("spectral measure matches the energy kinetic term") {
    const sn::Grid3 g{64, 40.0};
    const sn::ComplexField3 psi = gaussian(g, {1.0, 0.0, -1.0}, 3.0, {0.5, 0, 0});
    std::vector<cdouble> hat = psi.v;
    sn::Fft3C2C fft(g.n);
    fft.forward(hat.data());
    const sn::SpectralMeasure sm = sn::spectral_measure(hat, g);

    sn::RealField3 zero(g);
    const sn::EnergyReport er = sn::energy(psi, zero);
    CHECK(sm.grad2 == doctest::Approx(2.0 * er.kinetic).epsilon(1e-13));
    const Vec3 p = sn::momentum(psi);
    CHECK(sm.p.x == doctest::Approx(p.x).epsilon(1e-13));
}

TEST_CASE("equation residuals vanish exactly on an exact plane-wave solution") {
    // psi(t) = exp(i (k.x - w t)) with w = k^2 + c solves the matter
    // equation against the constant potential c; the potential equation is
    // then off by exactly |psi|^2 = 1.
    const sn::Grid3 g{64, 40.0};
    const double k0 = 2.0 * std::numbers::pi / g.L;
    const double k2 = k0 * k0 * (4.0 + 1.0);
    const double c = -0.25;
    const double w = k2 + c;
    const double dt = 1e-3;

    auto wave_at = [&](double t) {
        sn::ComplexField3 f = plane_wave(g, 1.0, 2, 1, 0);
        const cdouble ph = std::exp(-I * w * t);
        for (auto& z : f.v) z *= ph;
        return f;
    };
    sn::RealField3 phi(g);
    for (auto& v : phi.v) v = c;

    const sn::FieldResiduals res =
        sn::residual_H(wave_at(-dt), wave_at(0.0), wave_at(dt), phi, dt);
    CHECK(res.h1 < 1e-8);
    CHECK(res.h2 < 1e-8);
    CHECK(res.h3 == doctest::Approx(1.0).epsilon(1e-12));

    // Detuning the frequency by 0.5 shows up one-for-one in both matter
    // residuals.
    auto detuned_at = [&](double t) {
        sn::ComplexField3 f = plane_wave(g, 1.0, 2, 1, 0);
        const cdouble ph = std::exp(-I * (w + 0.5) * t);
        for (auto& z : f.v) z *= ph;
        return f;
    };
    const sn::FieldResiduals off =
        sn::residual_H(detuned_at(-dt), detuned_at(0.0), detuned_at(dt), phi, dt);
    CHECK(off.h1 == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(off.h2 == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("predicted two-lump energy: internal, kinetic, and binding terms") {
    sn::LumpSystem sys{{{0.5, {-500.0, 0.0, 0.0}, {0.1, 0.0, 0.0}},
                        {0.5, {+500.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}}};
    const double E0 = -5.153740249227e-4;
    const double internal = 2.0 * (0.125 * E0 / 6.0);
    const double kinetic = 0.5 * 0.01 / 8.0;
    const double binding = -2.0 * (0.25 / 1000.0) / (16.0 * std::numbers::pi);
    CHECK(sn::predicted_energy(sys, E0) ==
          doctest::Approx(internal + kinetic + binding).epsilon(1e-14));
}

TEST_CASE("virial check rejects a profile without an eigenvalue") {
    sn::GroundStateProfile p;
    p.grid = sn::RadialGrid{10.0, 2001};
    p.psi0.assign(p.grid.n, 1e-3);
    p.phi0.assign(p.grid.n, -1e-3);
    p.E0 = 0.0;
    p.norm = 1.0;
    CHECK_THROWS_AS(sn::virial_check(p), sn::ConfigError);
}
