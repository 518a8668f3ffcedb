#include "sn/diagnostics.hpp"

#include <cmath>
#include <numbers>

#include "sn/errors.hpp"
#include "sn/fft3.hpp"
#include "sn/reduce.hpp"

namespace sn {

double field_norm(const ComplexField3& psi) {
    const Grid3& g = psi.grid;
    const double h3 = g.h() * g.h() * g.h();
    const double s = pairwise_map_sum(std::size_t{0}, psi.v.size(),
                                      [&](std::size_t i) { return std::norm(psi.v[i]); });
    return h3 * s;
}

SpectralMeasure spectral_measure(const std::vector<cdouble>& psi_hat, const Grid3& g) {
    const std::size_t n3 = g.size();
    if (psi_hat.size() != n3) throw ConfigError("spectral_measure: size mismatch");
    const int n = g.n;
    const double w = g.h() * g.h() * g.h() / static_cast<double>(n3);

    auto k_of = [&](std::size_t id, int axis) {
        const int n_ = n;
        int i;
        if (axis == 0)
            i = static_cast<int>(id % n_);
        else if (axis == 1)
            i = static_cast<int>((id / n_) % n_);
        else
            i = static_cast<int>(id / (static_cast<std::size_t>(n_) * n_));
        return g.wavenumber(i);
    };

    SpectralMeasure m;
    m.grad2 = w * pairwise_map_sum(std::size_t{0}, n3, [&](std::size_t id) {
                  const double kx = k_of(id, 0), ky = k_of(id, 1), kz = k_of(id, 2);
                  return (kx * kx + ky * ky + kz * kz) * std::norm(psi_hat[id]);
              });
    m.p.x = w * pairwise_map_sum(std::size_t{0}, n3, [&](std::size_t id) {
                return k_of(id, 0) * std::norm(psi_hat[id]);
            });
    m.p.y = w * pairwise_map_sum(std::size_t{0}, n3, [&](std::size_t id) {
                return k_of(id, 1) * std::norm(psi_hat[id]);
            });
    m.p.z = w * pairwise_map_sum(std::size_t{0}, n3, [&](std::size_t id) {
                return k_of(id, 2) * std::norm(psi_hat[id]);
            });
    return m;
}

EnergyReport energy(const ComplexField3& psi, const RealField3& phi) {
    require_same_grid(psi.grid, phi.grid, "energy");
    const Grid3& g = psi.grid;
    const double h3 = g.h() * g.h() * g.h();

    std::vector<cdouble> hat = psi.v;
    Fft3C2C fft(g.n);
    fft.forward(hat.data());
    const SpectralMeasure sm = spectral_measure(hat, g);

    EnergyReport r;
    r.kinetic = 0.5 * sm.grad2;
    r.potential = 0.25 * h3 *
                  pairwise_map_sum(std::size_t{0}, psi.v.size(), [&](std::size_t i) {
                      return phi.v[i] * std::norm(psi.v[i]);
                  });
    r.total = r.kinetic + r.potential;
    r.norm = field_norm(psi);
    return r;
}

Vec3 centroid(const ComplexField3& psi) {
    const Grid3& g = psi.grid;
    const int n = g.n;
    auto coord_of = [&](std::size_t id, int axis) {
        int i;
        if (axis == 0)
            i = static_cast<int>(id % n);
        else if (axis == 1)
            i = static_cast<int>((id / n) % n);
        else
            i = static_cast<int>(id / (static_cast<std::size_t>(n) * n));
        return g.coord(i);
    };
    const double w = pairwise_map_sum(std::size_t{0}, psi.v.size(),
                                      [&](std::size_t i) { return std::norm(psi.v[i]); });
    if (w == 0.0) throw RuntimeError("centroid of a zero field");
    Vec3 c;
    for (int ax = 0; ax < 3; ++ax) {
        const double s = pairwise_map_sum(std::size_t{0}, psi.v.size(), [&](std::size_t i) {
            return coord_of(i, ax) * std::norm(psi.v[i]);
        });
        c[ax] = s / w;
    }
    return c;
}

Vec3 momentum(const ComplexField3& psi) {
    std::vector<cdouble> hat = psi.v;
    Fft3C2C fft(psi.grid.n);
    fft.forward(hat.data());
    return spectral_measure(hat, psi.grid).p;
}

VirialReport virial_check(const GroundStateProfile& p) {
    if (p.E0 == 0.0) throw ConfigError("virial_check: zero eigenvalue");
    const int n = p.grid.n;
    if (n < 7) throw ConfigError("virial_check: grid too small");
    const double h = p.grid.h();

    // 4th-order first derivative: centered in the interior, one-sided
    // 5-point stencils at the edges.
    std::vector<double> dpsi(n);
    auto f = [&](int k) { return p.psi0[k]; };
    for (int k = 0; k < n; ++k) {
        if (k >= 2 && k <= n - 3) {
            dpsi[k] = (-f(k + 2) + 8.0 * f(k + 1) - 8.0 * f(k - 1) + f(k - 2)) /
                      (12.0 * h);
        } else if (k < 2) {
            dpsi[k] = (-25.0 * f(k) + 48.0 * f(k + 1) - 36.0 * f(k + 2) +
                       16.0 * f(k + 3) - 3.0 * f(k + 4)) /
                      (12.0 * h);
        } else {
            dpsi[k] = (25.0 * f(k) - 48.0 * f(k - 1) + 36.0 * f(k - 2) -
                       16.0 * f(k - 3) + 3.0 * f(k - 4)) /
                      (12.0 * h);
        }
    }

    std::vector<double> kin_f(n), pot_f(n);
    for (int k = 0; k < n; ++k) {
        kin_f[k] = dpsi[k] * dpsi[k];
        pot_f[k] = p.phi0[k] * p.psi0[k] * p.psi0[k];
    }
    const double kin = radial_quadrature(p.grid, kin_f);
    const double pot = radial_quadrature(p.grid, pot_f);

    VirialReport r;
    r.kinetic_ratio = kin / p.E0;
    r.potential_ratio = pot / p.E0;
    return r;
}

FieldResiduals residual_H(const ComplexField3& prev, const ComplexField3& now,
                          const ComplexField3& next, const RealField3& phi,
                          double dt) {
    require_same_grid(prev.grid, now.grid, "residual_H");
    require_same_grid(now.grid, next.grid, "residual_H");
    require_same_grid(now.grid, phi.grid, "residual_H");
    if (!(dt > 0.0)) throw ConfigError("residual_H: dt must be positive");
    const Grid3& g = now.grid;
    const int n = g.n;

    Fft3C2C fft(n);

    // Spectral Laplacian of psi and of phi (phi embedded as a complex array).
    std::vector<cdouble> lap_psi = now.v;
    fft.forward(lap_psi.data());
    std::vector<cdouble> lap_phi(g.size());
    for (std::size_t i = 0; i < lap_phi.size(); ++i) lap_phi[i] = cdouble(phi.v[i], 0.0);
    fft.forward(lap_phi.data());

    const double inv_n3 = 1.0 / static_cast<double>(g.size());
    std::size_t id = 0;
    for (int iz = 0; iz < n; ++iz) {
        const double kz = g.wavenumber(iz);
        for (int iy = 0; iy < n; ++iy) {
            const double ky = g.wavenumber(iy);
            for (int ix = 0; ix < n; ++ix, ++id) {
                const double kx = g.wavenumber(ix);
                const double mk2 = -(kx * kx + ky * ky + kz * kz) * inv_n3;
                lap_psi[id] *= mk2;
                lap_phi[id] *= mk2;
            }
        }
    }
    fft.backward(lap_psi.data());
    fft.backward(lap_phi.data());

    const double quarter = 0.25 * g.L;
    FieldResiduals r;
    const cdouble I(0.0, 1.0);
    id = 0;
    for (int iz = 0; iz < n; ++iz) {
        const bool inz = std::fabs(g.coord(iz)) <= quarter;
        for (int iy = 0; iy < n; ++iy) {
            const bool iny = inz && std::fabs(g.coord(iy)) <= quarter;
            for (int ix = 0; ix < n; ++ix, ++id) {
                if (!iny || std::fabs(g.coord(ix)) > quarter) continue;
                const cdouble ut = (next.v[id] - prev.v[id]) / (2.0 * dt);
                const cdouble u = now.v[id];
                const double w = phi.v[id];
                const cdouble h1 = I * ut + lap_psi[id] - w * u;
                const cdouble h2 =
                    I * std::conj(ut) - std::conj(lap_psi[id]) + w * std::conj(u);
                const double h3 = lap_phi[id].real() - std::norm(u);
                r.h1 = std::max(r.h1, std::abs(h1));
                r.h2 = std::max(r.h2, std::abs(h2));
                r.h3 = std::max(r.h3, std::fabs(h3));
            }
        }
    }
    return r;
}

double predicted_energy(const LumpSystem& sys, double E0) {
    sys.validate();
    double e = 0.0;
    for (const LumpSpec& s : sys.lumps)
        e += s.m * s.m * s.m * E0 / 6.0 + s.m * dot(s.v, s.v) / 8.0;
    double inter = 0.0;
    for (std::size_t i = 0; i < sys.lumps.size(); ++i)
        for (std::size_t j = 0; j < sys.lumps.size(); ++j) {
            if (i == j) continue;
            const double d = norm(sys.lumps[i].a - sys.lumps[j].a);
            if (d == 0.0) throw ConfigError("coincident lumps in predicted_energy");
            inter += sys.lumps[i].m * sys.lumps[j].m / d;
        }
    e -= inter / (16.0 * std::numbers::pi);
    return e;
}

} // namespace sn
