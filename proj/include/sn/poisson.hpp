#pragma once

#include <memory>
#include <vector>

#include "sn/fft3.hpp"
#include "sn/field.hpp"

namespace sn {

enum class PoissonMode {
    FREE_SPACE,         // isolated source, phi -> -Q/(4 pi r) far away
    PERIODIC_ZERO_MEAN, // spectral inverse Laplacian, mean(phi) = 0; cross-checks only
};

// Solves lap(phi) = rho on the cubic grid.
//
// FREE_SPACE uses the standard zero-padding trick: the source is embedded in
// a (2n)^3 box, convolved with the sampled Green function G(r) = -1/(4 pi r)
// via real-to-complex FFTs, and the n^3 corner is extracted. Zero padding
// makes the circular convolution equal the open-boundary one exactly, so the
// only approximation is the kernel quadrature (one sample per cell).
//
// The r = 0 sample is replaced by the exact mean of -1/(4 pi r) over the
// singular cell. With the source cell normalized to a unit cube,
//     integral over [0,1]^3 of dV/|r| = (3/2) ln(2 + sqrt(3)) - pi/4,
// (split the cube into pyramids over each face and integrate in polar
// coordinates), which gives G(0) = -C/(2 pi h) after averaging the eight
// unit-cube corners that meet at the singular node.
class PoissonSolver {
public:
    PoissonSolver(const Grid3& grid, PoissonMode mode = PoissonMode::FREE_SPACE);

    RealField3 solve(const RealField3& rho) const;

    const Grid3& grid() const { return grid_; }
    PoissonMode mode() const { return mode_; }

    // True when the most recent solve() saw boundary-face source amplitude
    // above 1e-10 of the global max (free-space answers are then suspect).
    bool boundary_warning() const { return boundary_warning_; }

private:
    Grid3 grid_;
    PoissonMode mode_;
    std::unique_ptr<Fft3R2C> fft_;      // padded (2n)^3 transforms (free space)
    std::unique_ptr<Fft3R2C> fft_cell_; // n^3 transforms (periodic)
    std::vector<double> ghat_;          // spectral kernel, real by symmetry
    mutable std::vector<double> pad_;
    mutable std::vector<cdouble> spec_;
    mutable bool boundary_warning_ = false;
};

// Convenience wrapper with a per-(n, L) solver cache; prints a one-line
// stderr warning when the source does not decay at the box walls.
RealField3 poisson_free_space(const RealField3& rho);

RealField3 poisson_periodic_zero_mean(const RealField3& rho);

// Exact mean of 1/|r| over the unit cube (times the unit cube volume).
double singular_cell_constant();

} // namespace sn
