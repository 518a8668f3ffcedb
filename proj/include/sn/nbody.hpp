#pragma once

#include <vector>

#include "sn/vec3.hpp"

namespace sn {

// Point-lump trajectory model: positions a_i, velocities v_i, masses m_i,
// with pairwise attraction
//   acc_i = kappa sum over j != i of m_j (a_j - a_i) / r^3.
// The coupling defaults to kappa = 1/(2 pi); 1/(4 pi) is kept available as
// the alternative hypothesis the field runs rule out.
struct NBodyState {
    std::vector<double> m;
    std::vector<Vec3> a;
    std::vector<Vec3> v;
    double t = 0.0;

    std::size_t size() const { return m.size(); }
    void validate() const;
};

double default_kappa();

// Net accelerations. Each pair contributes one force vector added to one
// body and subtracted from the other, so total momentum is conserved by
// construction. No softening: separations below 1e-9 (desk-scale units)
// raise a singularity error.
std::vector<Vec3> accelerations(const NBodyState& s, double kappa);

// One kick-drift-kick step; time-reversible (stepping +dt then -dt
// restores the state to roundoff).
NBodyState leapfrog_step(NBodyState s, double dt, double kappa);

// (1/8) sum m_i |v_i|^2 - (1/16 pi) sum over ordered pairs of m_i m_j / r_ij.
// Matches the field energy of a well-separated lump system up to the
// per-lump internal terms.
double nbody_energy(const NBodyState& s);

} // namespace sn
