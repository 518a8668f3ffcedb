#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

#include "sn/errors.hpp"

namespace sn {

// Uniform radial grid: n nodes r_k = k h, k = 0..n-1, with r_0 = 0 and
// r_{n-1} = r_max, so h = r_max / (n - 1).
struct RadialGrid {
    double r_max = 0.0;
    int n = 0;

    double h() const { return r_max / (n - 1); }
    double r(int k) const { return k * h(); }

    void validate() const {
        if (!(r_max > 0.0)) throw ConfigError("RadialGrid: r_max must be positive");
        if (n < 1000) throw ConfigError("RadialGrid: need at least 1000 nodes");
    }

    bool operator==(const RadialGrid&) const = default;
};

// Periodic cubic grid, n nodes per axis, box edge L, node coordinates
// centered on the box: x_i = (i - n/2) h. Linear index is x-fastest:
// idx = ix + n (iy + n iz).
struct Grid3 {
    int n = 0;
    double L = 0.0;

    double h() const { return L / n; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }

    double coord(int i) const { return (i - n / 2) * h(); }

    // Angular wavenumber for FFT bin i with the standard wrap-around layout.
    double wavenumber(int i) const {
        const int s = (i <= n / 2 - 1) ? i : i - n;
        return 2.0 * std::numbers::pi / L * s;
    }

    std::size_t idx(int ix, int iy, int iz) const {
        return static_cast<std::size_t>(ix) +
               static_cast<std::size_t>(n) * (static_cast<std::size_t>(iy) + static_cast<std::size_t>(n) * iz);
    }

    void validate() const {
        if (!(L > 0.0)) throw ConfigError("Grid3: L must be positive");
        if (n < 32) throw ConfigError("Grid3: need n >= 32");
        if ((n & (n - 1)) != 0) throw ConfigError("Grid3: n must be a power of two");
    }

    bool operator==(const Grid3&) const = default;
};

} // namespace sn
