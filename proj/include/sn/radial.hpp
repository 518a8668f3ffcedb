#pragma once

#include <utility>
#include <vector>

#include "sn/grid.hpp"

namespace sn {

// State of the radial boundary-value problem at one radius: the stationary
// reduction of the coupled system with psi = psi0(r) e^{-i E0 t} and the
// shifted potential V = phi - E, giving
//   psi'' = -(2/r) psi' + V psi,
//   V''   = -(2/r) V'   + psi^2.
struct RadialState {
    double psi, dpsi, V, dV;
};

// Returns (psi', psi'', V', V''). At r = 0 the regular limits apply:
// psi''(0) = V(0) psi(0) / 3 and V''(0) = psi(0)^2 / 3 (psi'(0) = V'(0) = 0
// for smooth spherically symmetric data). Throws std::domain_error for r < 0.
RadialState radial_rhs(double r, const RadialState& s);

enum class ShootClass { DIVERGES_UP, DIVERGES_DOWN, BOUND_CANDIDATE };

struct ShootResult {
    ShootClass classification = ShootClass::BOUND_CANDIDATE;
    int node_count = 0;
    // Raw trajectory up to the divergence radius (nodes 0..last inclusive).
    int last = 0;
    std::vector<double> psi, dpsi, V, dV;
};

// Integrates outward from psi(0)=1, psi'(0)=0, V(0)=V0, V'(0)=0 with fixed
// step RK4 (series start over the first step), stopping when |psi| exceeds
// the blow-up threshold 1e6 or r_max is reached. Nodes are strict sign
// changes of psi between consecutive steps.
ShootResult shoot(double V0, const RadialGrid& grid);

struct GroundStateProfile {
    RadialGrid grid;
    std::vector<double> psi0; // wave amplitude per node (real, nodeless)
    std::vector<double> phi0; // potential per node (negative, -> 0 at infinity)
    double E0 = 0.0;          // eigenvalue (negative)
    double norm = 0.0;        // integral |psi0|^2 d^3x
};

// Solves the nodeless bound state by bisection on V(0), extracts the
// eigenvalue from the exact 1/r-tail identity E = -(V + r V') at 0.9 r_max,
// and rescales the solution to unit norm (the returned profile lives on the
// correspondingly stretched radial grid). tol bounds the final bisection
// interval width on V(0).
GroundStateProfile find_ground_state(double tol, const RadialGrid& grid);

// Exact symmetry of the continuum system: psi -> l^2 psi(l r),
// phi -> l^2 phi(l r), E -> l^2 E, norm -> l norm. The output grid covers
// r_max / l so the map is exact node-by-node (no interpolation).
GroundStateProfile rescale_profile(const GroundStateProfile& p, double lambda);

// Cubic interpolation inside the table; beyond r_max, psi0 is extended by a
// fitted decaying tail A e^{-kr}/r and phi0 by the point-mass form
// -norm/(4 pi r), continuous at the seam.
std::pair<double, double> sample_profile(const GroundStateProfile& p, double r);

// Fixed-order quadrature 4 pi * integral f(r) r^2 dr over the profile grid
// (composite Simpson; the last three intervals use the 3/8 rule when the
// interval count is odd). Deterministic pairwise accumulation.
double radial_quadrature(const RadialGrid& grid, const std::vector<double>& f);

// Radius (interpolated) at which psi0 falls below `frac` of its peak value;
// f.ex. frac = 1e-12 defines the lump support radius used for placement.
double profile_support_radius(const GroundStateProfile& p, double frac);

} // namespace sn
