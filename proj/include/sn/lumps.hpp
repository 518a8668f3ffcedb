#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "sn/field.hpp"
#include "sn/polynomial.hpp"
#include "sn/radial.hpp"
#include "sn/vec3.hpp"

namespace sn {

// One self-gravitating lump: mass m, position a + v t, velocity v.
struct LumpSpec {
    double m = 1.0;
    Vec3 a{0.0, 0.0, 0.0};
    Vec3 v{0.0, 0.0, 0.0};
};

struct LumpSystem {
    std::vector<LumpSpec> lumps;
    // Enforces finite entries, positive masses summing to 1 (the field
    // normalization ties total mass to the unit-norm profile), and distinct
    // positions.
    void validate() const;
};

// Analytic description of a field that is a sum of traveling rescaled
// ground-state lumps. Kept alongside the sampled arrays so symmetry
// transforms can be applied exactly instead of by grid interpolation.
//
//   psi(r) = sum over terms of m^2 psi0(m |r - c|) exp(i (q.r + theta))
//   phi(r) = sum over terms of m^2 phi0(m |r - c|) + b0 + b.r
struct LumpTerm {
    double m = 1.0;
    Vec3 c{0.0, 0.0, 0.0};  // center
    Vec3 q{0.0, 0.0, 0.0};  // plane-wave vector (v/2 for a boosted lump)
    double theta = 0.0;     // constant phase
};

struct AffineReal {
    double b0 = 0.0;
    Vec3 b{0.0, 0.0, 0.0};
};

struct Provenance {
    std::shared_ptr<const GroundStateProfile> profile;
    std::vector<LumpTerm> terms;
    AffineReal phi_extra;
};

// A matter field and its potential on a common grid at a common time.
// `prov` is present when the pair was built analytically; transforms then
// act on the closed form and re-sample, which keeps them exact.
struct FieldPair {
    ComplexField3 psi;
    RealField3 phi;
    double t = 0.0;
    std::optional<Provenance> prov;

    explicit FieldPair(const Grid3& g) : psi(g), phi(g) {}
};

enum class PlacementPolicy {
    Strict,             // require support + 2 lump radii of margin inside the box
    AllowTruncatedTail, // caller accepts wall truncation of the far tail
};

// Support radius (in unit-profile coordinates) where psi0 falls below
// `frac` of its peak; divide by m for a rescaled lump.
// (See profile_support_radius in radial.hpp.)

// Places one lump at a + v t with the measured ground-state profile.
FieldPair make_lump(const GroundStateProfile& p, const LumpSpec& s, double t,
                    const Grid3& g, PlacementPolicy policy = PlacementPolicy::Strict);

struct SuperposeResult {
    FieldPair fields;
    // Rigorous bound on |grid norm - sum of masses| from pairwise tail
    // overlap, computed by bipolar quadrature of 2 integral |psi_i||psi_j|.
    double overlap_bound = 0.0;
    bool separation_warning = false;
};

SuperposeResult superpose(const LumpSystem& sys, const GroundStateProfile& p,
                          double t, const Grid3& g,
                          PlacementPolicy policy = PlacementPolicy::Strict);

// Exact finite symmetry actions. Each takes the snapshot time t (must match
// f.t) and returns the transformed pair at the same time. Provenance-backed
// inputs transform in closed form; plain grid data falls back to periodic
// tricubic resampling (shifts must keep support away from the walls).
FieldPair galilean_boost(const FieldPair& f, const Vec3& v, double t);

// Moving-frame transform for a rigid time-dependent shift a(t) (polynomial,
// degree <= 4). See docs/moving_frames.md for the derivation.
FieldPair accelerated_frame(const FieldPair& f, const PolyVec3& a, double t);

// psi -> psi exp(i Omega(t)), phi -> phi - Omega'(t).
FieldPair phase_gauge(const FieldPair& f, const Poly& Omega, double t);

// Scaling action: psi'(x) = lambda^2 psi(lambda x), phi'(x) = lambda^2 phi(lambda x),
// realized exactly by relabeling the box L -> L/lambda node for node. The
// time relabeling t -> t / lambda^2 is recorded in the result metadata.
FieldPair scale_fields(const FieldPair& f, double lambda);

// Periodic tricubic interpolation (4-point Lagrange per axis).
cdouble sample_periodic(const ComplexField3& f, const Vec3& pos);
double sample_periodic(const RealField3& f, const Vec3& pos);

} // namespace sn
