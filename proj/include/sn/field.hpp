#pragma once

#include <complex>
#include <vector>

#include "sn/grid.hpp"

namespace sn {

using cdouble = std::complex<double>;

struct ComplexField3 {
    Grid3 grid;
    std::vector<cdouble> v;

    ComplexField3() = default;
    explicit ComplexField3(const Grid3& g) : grid(g), v(g.size()) {}

    cdouble& at(int ix, int iy, int iz) { return v[grid.idx(ix, iy, iz)]; }
    cdouble at(int ix, int iy, int iz) const { return v[grid.idx(ix, iy, iz)]; }
};

struct RealField3 {
    Grid3 grid;
    std::vector<double> v;

    RealField3() = default;
    explicit RealField3(const Grid3& g) : grid(g), v(g.size()) {}

    double& at(int ix, int iy, int iz) { return v[grid.idx(ix, iy, iz)]; }
    double at(int ix, int iy, int iz) const { return v[grid.idx(ix, iy, iz)]; }
};

inline void require_same_grid(const Grid3& a, const Grid3& b, const char* what) {
    if (!(a == b)) throw ConfigError(std::string(what) + ": grid mismatch");
}

} // namespace sn
