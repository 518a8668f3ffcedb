#pragma once

#include <functional>
#include <vector>

#include "sn/field.hpp"
#include "sn/poisson.hpp"
#include "sn/vec3.hpp"

namespace sn {

struct EvolveConfig {
    double dt = 1e-3;
    long steps = 0;
    long diag_every = 100; // <= 0: only the first and last rows
    PoissonMode mode = PoissonMode::FREE_SPACE;

    void validate() const;
};

struct DiagRow {
    double t = 0.0;
    double norm = 0.0;
    double energy = 0.0;
    Vec3 c{0.0, 0.0, 0.0}; // centroid
    Vec3 p{0.0, 0.0, 0.0}; // momentum
};

struct EvolveResult {
    ComplexField3 psi;
    RealField3 phi; // consistent with |psi|^2 at the final time
    double t = 0.0;
    std::vector<DiagRow> diag;
    long boundary_warnings = 0; // diag-cadence wall-amplitude trips

    explicit EvolveResult(const Grid3& g) : psi(g), phi(g) {}
};

// Potential sourced by |psi|^2.
RealField3 potential_of(const ComplexField3& psi,
                        PoissonMode mode = PoissonMode::FREE_SPACE);

// One Strang splitting step: half potential kick, full spectral kinetic
// drift, potential refresh from the drifted amplitude, half kick. The
// potential is recomputed at both half-step boundaries (two solves); the
// kicks are unimodular so the grid norm is exact to roundoff.
ComplexField3 strang_step(const ComplexField3& psi, double dt,
                          PoissonMode mode = PoissonMode::FREE_SPACE);

using SnapshotHook = std::function<void(long step, double t,
                                        const ComplexField3& psi,
                                        const RealField3& phi)>;

// Time-steps psi0 with the same splitting, sharing one potential solve
// across adjacent steps (the trailing half kick leaves |psi| unchanged, so
// the end-of-step potential equals the next step's leading one). Emits a
// diagnostics row at t0, at the cadence, and at the final step; calls the
// hook (if any) at `snap_every` steps plus the first and last.
EvolveResult evolve(const ComplexField3& psi0, const EvolveConfig& cfg,
                    double t0 = 0.0, const SnapshotHook& hook = {},
                    long snap_every = 0);

} // namespace sn
