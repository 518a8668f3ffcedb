#pragma once

#include <vector>

#include "sn/field.hpp"
#include "sn/lumps.hpp"
#include "sn/radial.hpp"
#include "sn/vec3.hpp"

namespace sn {

// Measurement operators for grid snapshots. All reductions use the fixed
// pairwise summation tree from reduce.hpp, so repeated runs agree bitwise.

// h^3 sum |psi|^2
double field_norm(const ComplexField3& psi);

struct EnergyReport {
    double kinetic = 0.0;   // (1/2) integral |grad psi|^2, spectral
    double potential = 0.0; // (1/4) integral phi |psi|^2
    double total = 0.0;
    double norm = 0.0;
};

// The conserved functional of the coupled system; phi must be the potential
// sourced by |psi|^2 for `total` to be the conserved value.
EnergyReport energy(const ComplexField3& psi, const RealField3& phi);

// integral x |psi|^2 / integral |psi|^2
Vec3 centroid(const ComplexField3& psi);

// integral Im(conj(psi) grad psi) via spectral derivative (extensive,
// not divided by the norm)
Vec3 momentum(const ComplexField3& psi);

// Kinetic and potential spectral sums from an unnormalized forward
// transform; shared by energy(), momentum() and the evolution loop.
struct SpectralMeasure {
    double grad2 = 0.0; // integral |grad psi|^2
    Vec3 p{0.0, 0.0, 0.0};
};
SpectralMeasure spectral_measure(const std::vector<cdouble>& psi_hat, const Grid3& g);

struct VirialReport {
    double kinetic_ratio = 0.0;   // integral |grad psi0|^2 / E0, exact value -1/3
    double potential_ratio = 0.0; // integral phi0 psi0^2 / E0, exact value 4/3
};

// Scale-identity check on a radial profile: derivative by 4th-order finite
// differences, integrals by the radial quadrature.
VirialReport virial_check(const GroundStateProfile& p);

struct FieldResiduals {
    double h1 = 0.0; // i psi_t + lap psi - phi psi
    double h2 = 0.0; // conjugate-field equation
    double h3 = 0.0; // lap phi - |psi|^2
};

// Sup norms of the three field equations over the inner half box
// (|x_i| <= L/4): the free-space potential has a derivative kink at the
// periodic wrap, so the outer shell is excluded by design. The time
// derivative is the centered difference of the three snapshots.
FieldResiduals residual_H(const ComplexField3& prev, const ComplexField3& now,
                          const ComplexField3& next, const RealField3& phi,
                          double dt);

// Point-lump model energy of a configuration: per-lump internal and kinetic
// terms plus the pairwise interaction,
//   sum_i (m_i^3 E0 / 6 + m_i |v_i|^2 / 8) - (1/16 pi) sum over ordered pairs
//   of m_i m_j / |a_i - a_j|.
double predicted_energy(const LumpSystem& sys, double E0);

} // namespace sn
