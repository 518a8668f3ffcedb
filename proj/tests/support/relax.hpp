#pragma once

// Imaginary-time relaxation of the self-consistent ground state on a cubic
// grid. This is the second, independent oracle for the eigenvalue: it shares
// no code path with the radial shooting solver (spectral kinetic factor and
// a grid Poisson solve instead of an ODE integration).

#include "sn/field.hpp"
#include "sn/grid.hpp"

namespace sn_test {

struct RelaxResult {
    sn::ComplexField3 psi; // unit grid norm
    double eigenvalue = 0.0;
    long iterations = 0;

    explicit RelaxResult(const sn::Grid3& g) : psi(g) {}
};

// Split-step descent psi <- exp(-phi dtau/2) exp(lap dtau) exp(-phi dtau/2)
// psi with renormalization each sweep; the potential is refreshed once per
// sweep. Stops when the eigenvalue settles (relative change below 1e-8 per
// 25-sweep block) or at max_iters. sigma0 sets the Gaussian seed width.
RelaxResult relax_ground_state(const sn::Grid3& g, double dtau, long max_iters,
                               double sigma0);

} // namespace sn_test
