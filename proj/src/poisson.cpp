#include "sn/poisson.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <utility>

#include "sn/errors.hpp"

namespace sn {

double singular_cell_constant() {
    // integral over the unit cube of dV/|r|, in closed form
    return 1.5 * std::log(2.0 + std::sqrt(3.0)) - std::numbers::pi / 4.0;
}

PoissonSolver::PoissonSolver(const Grid3& grid, PoissonMode mode)
    : grid_(grid), mode_(mode) {
    grid_.validate();
    const int n = grid_.n;
    const double h = grid_.h();
    if (mode_ == PoissonMode::FREE_SPACE) {
        const int m = 2 * n;
        fft_ = std::make_unique<Fft3R2C>(m);
        pad_.assign(static_cast<std::size_t>(m) * m * m, 0.0);
        spec_.resize(fft_->spectral_size());

        // Sample G(r) = -1/(4 pi |r|) on the padded box with mirror indexing,
        // so that index distances wrap to the nearest image: the convolution
        // then sees true signed offsets in [-(n-1), n].
        std::vector<double> g(pad_.size());
        const double inv4pi = 1.0 / (4.0 * std::numbers::pi);
        auto mirror = [n, m](int i) { return i <= n ? i : i - m; };
        for (int iz = 0; iz < m; ++iz) {
            const double dz = mirror(iz);
            for (int iy = 0; iy < m; ++iy) {
                const double dy = mirror(iy);
                for (int ix = 0; ix < m; ++ix) {
                    const double dx = mirror(ix);
                    const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
                    const std::size_t id =
                        static_cast<std::size_t>(ix) +
                        static_cast<std::size_t>(m) * (static_cast<std::size_t>(iy) +
                                                       static_cast<std::size_t>(m) * iz);
                    g[id] = r > 0.0 ? -inv4pi / (r * h) : 0.0;
                }
            }
        }
        // r = 0: use the exact cell average instead of the infinite sample.
        g[0] = -singular_cell_constant() / (2.0 * std::numbers::pi * h);

        std::vector<cdouble> gspec(fft_->spectral_size());
        fft_->forward(g.data(), gspec.data());
        // The kernel is even in every axis, so its transform is real; store
        // just the real part (imaginary parts are roundoff).
        ghat_.resize(gspec.size());
        for (std::size_t i = 0; i < gspec.size(); ++i) ghat_[i] = gspec[i].real();
    } else {
        fft_cell_ = std::make_unique<Fft3R2C>(n);
        pad_.assign(static_cast<std::size_t>(n) * n * n, 0.0);
        spec_.resize(fft_cell_->spectral_size());
    }
}

RealField3 PoissonSolver::solve(const RealField3& rho) const {
    if (!(rho.grid == grid_)) throw ConfigError("PoissonSolver: grid mismatch");
    const int n = grid_.n;
    const double h = grid_.h();

    // Boundary decay check (meaningful for the free-space path).
    double vmax = 0.0, wall = 0.0;
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                const double a = std::fabs(rho.at(ix, iy, iz));
                if (a > vmax) vmax = a;
                if (ix == 0 || iy == 0 || iz == 0 || ix == n - 1 || iy == n - 1 ||
                    iz == n - 1) {
                    if (a > wall) wall = a;
                }
            }
    boundary_warning_ = (mode_ == PoissonMode::FREE_SPACE) && wall > 1e-10 * vmax;

    RealField3 phi(grid_);
    if (mode_ == PoissonMode::FREE_SPACE) {
        const int m = 2 * n;
        std::fill(pad_.begin(), pad_.end(), 0.0);
        for (int iz = 0; iz < n; ++iz)
            for (int iy = 0; iy < n; ++iy)
                for (int ix = 0; ix < n; ++ix) {
                    const std::size_t id =
                        static_cast<std::size_t>(ix) +
                        static_cast<std::size_t>(m) * (static_cast<std::size_t>(iy) +
                                                       static_cast<std::size_t>(m) * iz);
                    pad_[id] = rho.at(ix, iy, iz);
                }
        fft_->forward(pad_.data(), spec_.data());
        // Convolution weight: h^3 for the Riemann sum over source cells and
        // 1/m^3 to undo the unnormalized transform pair.
        const double scale = h * h * h / (static_cast<double>(m) * m * m);
        for (std::size_t i = 0; i < spec_.size(); ++i) spec_[i] *= ghat_[i] * scale;
        fft_->backward(spec_.data(), pad_.data());
        for (int iz = 0; iz < n; ++iz)
            for (int iy = 0; iy < n; ++iy)
                for (int ix = 0; ix < n; ++ix) {
                    const std::size_t id =
                        static_cast<std::size_t>(ix) +
                        static_cast<std::size_t>(m) * (static_cast<std::size_t>(iy) +
                                                       static_cast<std::size_t>(m) * iz);
                    phi.at(ix, iy, iz) = pad_[id];
                }
    } else {
        std::copy(rho.v.begin(), rho.v.end(), pad_.begin());
        fft_cell_->forward(pad_.data(), spec_.data());
        const int nc = n / 2 + 1;
        const double inv_vol = 1.0 / (static_cast<double>(n) * n * n);
        for (int kz = 0; kz < n; ++kz) {
            const double wz = grid_.wavenumber(kz);
            for (int ky = 0; ky < n; ++ky) {
                const double wy = grid_.wavenumber(ky);
                for (int kx = 0; kx < nc; ++kx) {
                    const double wx = grid_.wavenumber(kx);
                    const double k2 = wx * wx + wy * wy + wz * wz;
                    const std::size_t id =
                        static_cast<std::size_t>(kx) +
                        static_cast<std::size_t>(nc) * (static_cast<std::size_t>(ky) +
                                                        static_cast<std::size_t>(n) * kz);
                    spec_[id] = k2 > 0.0 ? spec_[id] * (-inv_vol / k2) : cdouble(0.0, 0.0);
                }
            }
        }
        fft_cell_->backward(spec_.data(), pad_.data());
        std::copy(pad_.begin(), pad_.end(), phi.v.begin());
    }
    return phi;
}

namespace {

PoissonSolver& cached_solver(const Grid3& g, PoissonMode mode) {
    // Cache keyed on the exact grid; single-threaded by design (FFTW plans
    // here are not thread safe anyway).
    static std::map<std::tuple<int, double, int>, std::unique_ptr<PoissonSolver>> cache;
    const auto key = std::make_tuple(g.n, g.L, static_cast<int>(mode));
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<PoissonSolver>(g, mode)).first;
    return *it->second;
}

} // namespace

RealField3 poisson_free_space(const RealField3& rho) {
    PoissonSolver& s = cached_solver(rho.grid, PoissonMode::FREE_SPACE);
    RealField3 phi = s.solve(rho);
    if (s.boundary_warning())
        std::fprintf(stderr,
                     "warning: source does not decay at the box walls; "
                     "free-space potential may be contaminated\n");
    return phi;
}

RealField3 poisson_periodic_zero_mean(const RealField3& rho) {
    return cached_solver(rho.grid, PoissonMode::PERIODIC_ZERO_MEAN).solve(rho);
}

} // namespace sn
