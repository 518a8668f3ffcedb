// Acceptance gate. Each numbered check prints one [PASS]/[FAIL] line with
// the measured value and its bound, and the process exits nonzero if any
// check in the requested group fails. Run with the group index 1..9 as the
// only argument (the CTest registration runs each group as its own test).

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sn/diagnostics.hpp"
#include "sn/evolve.hpp"
#include "sn/lie.hpp"
#include "sn/lumps.hpp"
#include "sn/nbody.hpp"
#include "sn/poisson.hpp"
#include "sn/radial.hpp"
#include "support/relax.hpp"

namespace {

int g_failures = 0;

void report(bool ok, int group, const char* what, double measured, double bound) {
    std::printf("[%s] %d: %-52s measured=%.6e bound=%.6e\n", ok ? "PASS" : "FAIL",
                group, what, measured, bound);
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

void check_le(int group, const char* what, double measured, double bound) {
    report(measured <= bound, group, what, measured, bound);
}

void check_ge(int group, const char* what, double measured, double bound) {
    report(measured >= bound, group, what, measured, bound);
}

const sn::GroundStateProfile& profile() {
    static sn::GroundStateProfile p = sn::find_ground_state(1e-12, {40.0, 20000});
    return p;
}

// ---------------------------------------------------------------- group 1
// Virial identities of the shooting-method ground state.
void group1() {
    sn::VirialReport vr = sn::virial_check(profile());
    check_le(1, "virial kinetic ratio vs -1/3", std::abs(vr.kinetic_ratio + 1.0 / 3.0),
             1e-3);
    check_le(1, "virial potential ratio vs 4/3",
             std::abs(vr.potential_ratio - 4.0 / 3.0), 1e-3);
}

// ---------------------------------------------------------------- group 2
// Eigenvalue cross-check: radial shooting vs 3-d imaginary-time relaxation.
void group2() {
    const sn::GroundStateProfile& p = profile();
    sn::Grid3 g{64, 1200.0};
    sn_test::RelaxResult rr = sn_test::relax_ground_state(g, 20.0, 3500, 130.0);
    std::printf("  shooting E0 = %.12e, relaxed E = %.12e (%ld sweeps)\n", p.E0,
                rr.eigenvalue, rr.iterations);
    check_le(2, "relaxed eigenvalue vs shooting, relative",
             std::abs(rr.eigenvalue - p.E0) / std::abs(p.E0), 1e-2);
}

// ---------------------------------------------------------------- group 3
// Far-field of the ground-state potential: 4 pi r phi0 -> -1.
void group3() {
    const sn::GroundStateProfile& p = profile();
    double rmax = p.grid.r_max;
    double h = p.grid.h();
    double worst = 0.0;
    for (int i = 0; i < p.grid.n; ++i) {
        double r = i * h;
        if (r < 0.5 * rmax || r > 0.9 * rmax) continue;
        worst = std::max(worst,
                         std::abs(4.0 * std::numbers::pi * r * p.phi0[static_cast<std::size_t>(i)] + 1.0));
    }
    check_le(3, "sup |4 pi r phi0 + 1| on [0.5, 0.9] r_max", worst, 1e-3);
}

// ---------------------------------------------------------------- group 4
// Symmetry generators annihilate the field equations on random jets;
// deliberately broken variants must not.
void group4() {
    const std::uint64_t seed = 1;
    const int points = 100;

    auto family_worst = [&](const sn::GeneratorSpec& spec) {
        std::mt19937_64 rng(seed);
        double worst = 0.0;
        for (int i = 0; i < points; ++i) {
            sn::JetPoint p = sn::random_jet(rng);
            auto res = sn::symmetry_residual(spec, p);
            double scale = sn::jet_scale(p);
            for (const auto& r : res) worst = std::max(worst, std::abs(r) / scale);
        }
        return worst;
    };

    const std::array<sn::GenKind, 10> kinds = {
        sn::GenKind::X1, sn::GenKind::X2, sn::GenKind::X3, sn::GenKind::X4,
        sn::GenKind::X5, sn::GenKind::X6, sn::GenKind::X7, sn::GenKind::X8,
        sn::GenKind::X9, sn::GenKind::X10};
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        double worst = family_worst(sn::GeneratorSpec::basis(kinds[i]));
        char label[64];
        std::snprintf(label, sizeof label, "generator X%zu residual / scale, 100 jets",
                      i + 1);
        check_le(4, label, worst, 1e-9);
    }

    sn::GeneratorSpec b9 = sn::GeneratorSpec::basis(sn::GenKind::X9);
    b9.broken = sn::BreakTerm::X9DropEtaW;
    check_ge(4, "control: gauge term without eta^w", family_worst(b9), 1e-3);

    sn::GeneratorSpec b10p = sn::GeneratorSpec::basis(sn::GenKind::X10);
    b10p.broken = sn::BreakTerm::X10DropPhase;
    check_ge(4, "control: moving frame without phase", family_worst(b10p), 1e-3);

    sn::GeneratorSpec b10w = sn::GeneratorSpec::basis(sn::GenKind::X10);
    b10w.broken = sn::BreakTerm::X10DropEtaW;
    check_ge(4, "control: moving frame without eta^w", family_worst(b10w), 1e-3);
}

// ---------------------------------------------------------------- group 5
// Boosted lump transport: conservation and centroid velocity.
void group5() {
    const sn::GroundStateProfile& p = profile();
    sn::Grid3 g{64, 1000.0};
    sn::LumpSystem sys;
    sys.lumps.push_back({1.0, {0.0, 0.0, 0.0}, {0.1, 0.0, 0.0}});
    sn::SuperposeResult sup =
        sn::superpose(sys, p, 0.0, g, sn::PlacementPolicy::AllowTruncatedTail);

    sn::EvolveConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 10000;
    cfg.diag_every = 500;
    sn::EvolveResult res = sn::evolve(sup.fields.psi, cfg);

    const auto& d0 = res.diag.front();
    double worst_norm = 0.0, worst_energy = 0.0;
    for (const auto& row : res.diag) {
        worst_norm = std::max(worst_norm, std::abs(row.norm - d0.norm) / d0.norm);
        worst_energy =
            std::max(worst_energy, std::abs(row.energy - d0.energy) / std::abs(d0.energy));
    }
    const auto& dT = res.diag.back();
    double v_meas = (dT.c.x - d0.c.x) / (dT.t - d0.t);

    check_le(5, "norm drift over 10^4 steps, relative", worst_norm, 1e-10);
    check_le(5, "energy drift over 10^4 steps, relative", worst_energy, 1e-4);
    check_le(5, "centroid velocity vs 0.1, relative", std::abs(v_meas / 0.1 - 1.0),
             1e-2);
}

// ---------------------------------------------------------------- group 6
// Stationarity of the resting ground state over t = 10.
void group6() {
    const sn::GroundStateProfile& p = profile();
    sn::Grid3 g{64, 1000.0};
    sn::LumpSystem sys;
    sys.lumps.push_back({1.0, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}});
    sn::SuperposeResult sup =
        sn::superpose(sys, p, 0.0, g, sn::PlacementPolicy::AllowTruncatedTail);

    sn::EvolveConfig cfg;
    cfg.dt = 5e-3;
    cfg.steps = 2000;
    cfg.diag_every = 0;
    sn::EvolveResult res = sn::evolve(sup.fields.psi, cfg);

    double peak = 0.0;
    for (const auto& c : sup.fields.psi.v) peak = std::max(peak, std::abs(c));
    double worst = 0.0;
    for (std::size_t i = 0; i < res.psi.v.size(); ++i)
        worst = std::max(worst,
                         std::abs(std::abs(res.psi.v[i]) - std::abs(sup.fields.psi.v[i])));

    check_le(6, "sup ||psi(10)| - |psi(0)|| / peak", worst / peak, 1e-3);
}

// ---------------------------------------------------------------- group 7
// Two-lump infall: measures the effective attraction strength and compares
// the separation history against the point-lump trajectory model.
struct InfallSample {
    std::vector<double> t, sep;
};

double separation_x(const sn::ComplexField3& psi) {
    const sn::Grid3& g = psi.grid;
    double wl = 0.0, wr = 0.0, xl = 0.0, xr = 0.0;
    for (int iz = 0; iz < g.n; ++iz)
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix) {
                double a2 = std::norm(psi.at(ix, iy, iz));
                double x = g.coord(ix);
                if (x < 0) {
                    wl += a2;
                    xl += a2 * x;
                } else {
                    wr += a2;
                    xr += a2 * x;
                }
            }
    return xr / wr - xl / wl;
}

void group7() {
    const bool fine = std::getenv("SN_ACCEPT_128") != nullptr;
    const int n = fine ? 128 : 64;
    const double gate = fine ? 0.10 : 0.20;

    const sn::GroundStateProfile& p = profile();
    const double d0 = 1000.0;
    sn::Grid3 g{n, 2400.0};
    sn::LumpSystem sys;
    sys.lumps.push_back({0.5, {-d0 / 2, 0.0, 0.0}, {0.0, 0.0, 0.0}});
    sys.lumps.push_back({0.5, {d0 / 2, 0.0, 0.0}, {0.0, 0.0, 0.0}});
    sn::SuperposeResult sup =
        sn::superpose(sys, p, 0.0, g, sn::PlacementPolicy::AllowTruncatedTail);

    // Separation in units of the half-density lump radius, for the record.
    double r_half = sn::profile_support_radius(p, 1.0 / std::numbers::sqrt2) / 0.5;
    std::printf("  separation %.0f = %.2f half-density radii\n", d0, d0 / r_half);

    InfallSample pde;
    sn::SnapshotHook hook = [&](long, double t, const sn::ComplexField3& psi,
                                const sn::RealField3&) {
        pde.t.push_back(t);
        pde.sep.push_back(separation_x(psi));
    };
    sn::EvolveConfig cfg;
    cfg.dt = 25.0;
    cfg.steps = 2200;
    cfg.diag_every = 0;
    sn::evolve(sup.fields.psi, cfg, 0.0, hook, 4);

    // Early-window fit sep(t) = A + B t^2. The intercept absorbs the small
    // tail-overlap bias of the half-box centroid estimator at t = 0; the
    // curvature gives the mutual acceleration, B = -kappa M / (2 d0^2).
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < pde.t.size(); ++i) {
        if (pde.t[i] > 8000.0) break;
        double x = pde.t[i] * pde.t[i];
        sx += x;
        sy += pde.sep[i];
        sxx += x * x;
        sxy += x * pde.sep[i];
        ++used;
    }
    double nn = static_cast<double>(used);
    double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    double kappa_meas = -2.0 * slope * d0 * d0; // total mass M = 1

    check_le(7, "|kappa * 2 pi - 1| (field-measured coupling)",
             std::abs(kappa_meas * 2.0 * std::numbers::pi - 1.0), gate);
    double alt = kappa_meas * 4.0 * std::numbers::pi;
    report(alt > 1.6 && alt < 2.6, 7, "kappa * 4 pi rejects 1/(4 pi) by ~2x", alt, 2.0);

    // Trajectory comparison against the point-lump model at kappa and at
    // kappa / 2, normalized by the quarter-infall distance.
    auto model_track = [&](double kappa) {
        sn::NBodyState s;
        s.m = {0.5, 0.5};
        s.a = {{-d0 / 2, 0.0, 0.0}, {d0 / 2, 0.0, 0.0}};
        s.v = {{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
        std::vector<double> sep;
        std::size_t next = 0;
        for (long step = 0; step <= cfg.steps && next < pde.t.size(); ++step) {
            double t = step * cfg.dt;
            if (std::abs(t - pde.t[next]) < 0.5 * cfg.dt) {
                sep.push_back(s.a[1].x - s.a[0].x);
                ++next;
            }
            s = sn::leapfrog_step(s, cfg.dt, kappa);
        }
        return sep;
    };
    std::vector<double> ref = model_track(sn::default_kappa());
    std::vector<double> half = model_track(0.5 * sn::default_kappa());

    double infall = d0 / 4.0;
    double mis = 0.0, mis_half = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        mis = std::max(mis, std::abs(pde.sep[i] - ref[i]) / infall);
        mis_half = std::max(mis_half, std::abs(pde.sep[i] - half[i]) / infall);
    }
    check_le(7, "trajectory mismatch / quarter infall, kappa", mis, gate);
    check_ge(7, "trajectory mismatch at kappa / 2 (control)", mis_half, 2.0 * gate);
}

// ---------------------------------------------------------------- group 8
// Point-lump circular orbit over ten periods.
void group8() {
    const double r = 100.0;
    const double kappa = sn::default_kappa();
    const double T = 2.0 * std::numbers::pi * std::sqrt(r * r * r / kappa);
    const double dt = T / 2000.0;
    const long steps = 20000;

    sn::NBodyState s;
    s.m = {0.5, 0.5};
    s.a = {{-r / 2, 0.0, 0.0}, {r / 2, 0.0, 0.0}};
    double v = std::sqrt(kappa / r); // relative speed for M = 1
    s.v = {{0.0, -v / 2, 0.0}, {0.0, v / 2, 0.0}};

    double e0 = sn::nbody_energy(s);
    double worst = 0.0;
    std::vector<double> ts, ys;
    ts.reserve(static_cast<std::size_t>(steps) + 1);
    for (long i = 0; i <= steps; ++i) {
        ts.push_back(s.t);
        ys.push_back(s.a[0].y);
        worst = std::max(worst, std::abs(sn::nbody_energy(s) - e0) / std::abs(e0));
        if (i < steps) s = sn::leapfrog_step(s, dt, kappa);
    }

    // Period from upward zero crossings of body 0's y coordinate.
    std::vector<double> crossings;
    for (std::size_t i = 1; i < ys.size(); ++i)
        if (ys[i - 1] < 0.0 && ys[i] >= 0.0)
            crossings.push_back(ts[i - 1] +
                                (ts[i] - ts[i - 1]) * (-ys[i - 1]) / (ys[i] - ys[i - 1]));
    double period = (crossings.back() - crossings.front()) /
                    static_cast<double>(crossings.size() - 1);

    check_le(8, "orbit energy drift over 10 periods, relative", worst, 1e-8);
    check_le(8, "orbit period vs 2 pi sqrt(r^3 / kappa M), relative",
             std::abs(period / T - 1.0), 1e-4);
}

// ---------------------------------------------------------------- group 9
// Grid energy of a wide two-lump snapshot vs the point-lump prediction.
void group9() {
    const sn::GroundStateProfile& p = profile();
    const double d = 1000.0;
    sn::Grid3 g{64, 2400.0};
    sn::LumpSystem sys;
    sys.lumps.push_back({0.5, {-d / 2, 0.0, 0.0}, {0.0, 0.0, 0.0}});
    sys.lumps.push_back({0.5, {d / 2, 0.0, 0.0}, {0.0, 0.0, 0.0}});
    sn::SuperposeResult sup =
        sn::superpose(sys, p, 0.0, g, sn::PlacementPolicy::AllowTruncatedTail);

    sn::RealField3 phi = sn::potential_of(sup.fields.psi);
    double e_grid = sn::energy(sup.fields.psi, phi).total;
    double e_pred = sn::predicted_energy(sys, p.E0);

    double binding = -(1.0 / (16.0 * std::numbers::pi)) * 2.0 * (0.5 * 0.5) / d;
    double e_ctrl = e_pred - 0.5 * binding; // interaction halved

    std::printf("  E_grid = %.9e, E_pred = %.9e, E_halved = %.9e\n", e_grid, e_pred,
                e_ctrl);
    check_le(9, "two-lump grid energy vs prediction, relative",
             std::abs(e_grid - e_pred) / std::abs(e_pred), 2e-2);
    check_ge(9, "mismatch with interaction halved (control)",
             std::abs(e_grid - e_ctrl) / std::abs(e_ctrl), 4e-2);
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s <group 1..9>\n", argv[0]);
        return 2;
    }
    int k = std::atoi(argv[1]);
    try {
        switch (k) {
            case 1: group1(); break;
            case 2: group2(); break;
            case 3: group3(); break;
            case 4: group4(); break;
            case 5: group5(); break;
            case 6: group6(); break;
            case 7: group7(); break;
            case 8: group8(); break;
            case 9: group9(); break;
            default:
                std::fprintf(stderr, "unknown group %d\n", k);
                return 2;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance group %d aborted: %s\n", k, e.what());
        return 1;
    }
    return g_failures == 0 ? 0 : 1;
}
