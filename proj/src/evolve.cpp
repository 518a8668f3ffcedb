#include "sn/evolve.hpp"

#include <cmath>
#include <cstdio>

#include "sn/diagnostics.hpp"
#include "sn/errors.hpp"
#include "sn/fft3.hpp"
#include "sn/reduce.hpp"

namespace sn {

void EvolveConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
    if (steps < 0) throw ConfigError("steps must be non-negative");
}

RealField3 potential_of(const ComplexField3& psi, PoissonMode mode) {
    RealField3 rho(psi.grid);
    for (std::size_t i = 0; i < psi.v.size(); ++i) rho.v[i] = std::norm(psi.v[i]);
    return mode == PoissonMode::FREE_SPACE ? poisson_free_space(rho)
                                           : poisson_periodic_zero_mean(rho);
}

namespace {

void half_kick(ComplexField3& psi, const RealField3& phi, double dt) {
    for (std::size_t i = 0; i < psi.v.size(); ++i)
        psi.v[i] *= std::polar(1.0, -0.5 * dt * phi.v[i]);
}

// exp(-i k^2 dt) with the inverse-transform normalization folded in.
std::vector<cdouble> kinetic_factor(const Grid3& g, double dt) {
    const int n = g.n;
    std::vector<cdouble> f(g.size());
    const double amp = 1.0 / static_cast<double>(g.size());
    std::vector<double> k2_1d(n);
    for (int i = 0; i < n; ++i) {
        const double k = g.wavenumber(i);
        k2_1d[i] = k * k;
    }
    std::size_t id = 0;
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy) {
            const double kyz = k2_1d[iy] + k2_1d[iz];
            for (int ix = 0; ix < n; ++ix, ++id)
                f[id] = std::polar(amp, -dt * (k2_1d[ix] + kyz));
        }
    return f;
}

double wall_max_abs(const ComplexField3& f) {
    const int n = f.grid.n;
    double w = 0.0;
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                if (ix != 0 && iy != 0 && iz != 0 && ix != n - 1 && iy != n - 1 &&
                    iz != n - 1)
                    continue;
                const double a = std::abs(f.at(ix, iy, iz));
                if (a > w) w = a;
            }
    return w;
}

DiagRow measure(const ComplexField3& psi, const RealField3& phi, double t,
                Fft3C2C& fft, std::vector<cdouble>& work) {
    const Grid3& g = psi.grid;
    const double h3 = g.h() * g.h() * g.h();

    DiagRow row;
    row.t = t;
    row.norm = field_norm(psi);

    work = psi.v;
    fft.forward(work.data());
    const SpectralMeasure sm = spectral_measure(work, g);
    const double pot =
        0.25 * h3 * pairwise_map_sum(std::size_t{0}, psi.v.size(), [&](std::size_t i) {
            return phi.v[i] * std::norm(psi.v[i]);
        });
    row.energy = 0.5 * sm.grad2 + pot;
    row.p = sm.p;
    row.c = centroid(psi);
    return row;
}

} // namespace

ComplexField3 strang_step(const ComplexField3& psi, double dt, PoissonMode mode) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
    const Grid3& g = psi.grid;
    ComplexField3 out = psi;

    RealField3 phi = potential_of(out, mode);
    half_kick(out, phi, dt);

    Fft3C2C fft(g.n);
    const std::vector<cdouble> kf = kinetic_factor(g, dt);
    fft.forward(out.v.data());
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] *= kf[i];
    fft.backward(out.v.data());

    phi = potential_of(out, mode);
    half_kick(out, phi, dt);
    return out;
}

EvolveResult evolve(const ComplexField3& psi0, const EvolveConfig& cfg, double t0,
                    const SnapshotHook& hook, long snap_every) {
    cfg.validate();
    const Grid3& g = psi0.grid;
    g.validate();

    EvolveResult res(g);
    res.psi = psi0;

    Fft3C2C fft(g.n);
    PoissonSolver solver(g, cfg.mode);
    const std::vector<cdouble> kf = kinetic_factor(g, cfg.dt);
    std::vector<cdouble> work(g.size());

    RealField3 rho(g);
    auto refresh_phi = [&]() {
        for (std::size_t i = 0; i < res.psi.v.size(); ++i)
            rho.v[i] = std::norm(res.psi.v[i]);
        res.phi = solver.solve(rho);
    };
    refresh_phi();

    bool warned = false;
    auto monitor = [&](long step, double t) {
        const double gm = [&] {
            double m = 0.0;
            for (const cdouble& c : res.psi.v) m = std::max(m, std::abs(c));
            return m;
        }();
        if (!std::isfinite(gm))
            throw RuntimeError("field diverged at step " + std::to_string(step));
        if (wall_max_abs(res.psi) > 1e-10 * gm) {
            ++res.boundary_warnings;
            if (!warned) {
                std::fprintf(stderr,
                             "warning: wall amplitude above 1e-10 of peak at "
                             "t = %.6g; box-size effects possible\n",
                             t);
                warned = true;
            }
        }
    };

    res.diag.push_back(measure(res.psi, res.phi, t0, fft, work));
    monitor(0, t0);
    if (hook && (snap_every > 0 || cfg.steps == 0)) hook(0, t0, res.psi, res.phi);

    for (long step = 1; step <= cfg.steps; ++step) {
        // Leading half kick uses the carried potential: the trailing kick of
        // the previous step left |psi| unchanged, so it is still the solve
        // at this half-step boundary.
        half_kick(res.psi, res.phi, cfg.dt);
        fft.forward(res.psi.v.data());
        for (std::size_t i = 0; i < res.psi.v.size(); ++i) res.psi.v[i] *= kf[i];
        fft.backward(res.psi.v.data());
        refresh_phi();
        half_kick(res.psi, res.phi, cfg.dt);

        const double t = t0 + step * cfg.dt;
        const bool last = step == cfg.steps;
        if (last || (cfg.diag_every > 0 && step % cfg.diag_every == 0)) {
            res.diag.push_back(measure(res.psi, res.phi, t, fft, work));
            monitor(step, t);
        }
        if (hook && ((snap_every > 0 && step % snap_every == 0) || last))
            hook(step, t, res.psi, res.phi);
        res.t = t;
    }
    if (cfg.steps == 0) res.t = t0;
    return res;
}

} // namespace sn
