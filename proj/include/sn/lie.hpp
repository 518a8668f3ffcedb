#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <utility>

#include "sn/field.hpp"
#include "sn/polynomial.hpp"

namespace sn {

// Second-order jet coordinates for the coupled system: base coordinates
// x = (t, x, y, z), fields u = (u, v, w) (matter, conjugate matter,
// potential), first derivatives du[alpha][n] and the ten symmetric second
// derivatives per field.
struct JetPoint {
    std::array<double, 4> x{};
    std::array<cdouble, 3> u{};
    std::array<std::array<cdouble, 4>, 3> du{};
    std::array<std::array<cdouble, 10>, 3> ddu{};

    // Symmetric pair (n, m) -> storage slot, n, m in 0..3.
    static int pair_index(int n, int m);
    cdouble d2(int alpha, int n, int m) const {
        return ddu[alpha][pair_index(n, m)];
    }
    cdouble& d2(int alpha, int n, int m) {
        return ddu[alpha][pair_index(n, m)];
    }
};

// Basis of the invariance algebra: X1 scaling, X2/X3/X4 rotations (x-y,
// x-z, y-z), X5 time translation, X6/X7/X8 space translations, X9 the
// time-dependent phase gauge with parameter Omega(t), X10 the moving-frame
// family with parameter a(t). GENERAL holds an arbitrary linear combination.
enum class GenKind { X1, X2, X3, X4, X5, X6, X7, X8, X9, X10, GENERAL };

// Deliberately broken variants for negative controls; the residual test
// must reject these.
enum class BreakTerm {
    None,
    X9DropEtaW,   // delete the -Omega'(t) compensation in eta^w
    X10DropPhase, // delete the (i/2)(x . a') phase in eta^u and eta^v
    X10DropEtaW,  // delete the -(1/2)(x . a'') term in eta^w
};

struct GeneratorSpec {
    GenKind kind = GenKind::GENERAL;
    // a[0]..a[7] multiply scaling, the three rotations, and the four
    // translations, in that order.
    std::array<double, 8> a{};
    Poly Omega;    // phase gauge, polynomial degree <= 4
    PolyVec3 avec; // moving frame, polynomial degree <= 4 per component
    BreakTerm broken = BreakTerm::None;

    // Canonical basis elements. X9 defaults to Omega(t) = t^2 and X10 to
    // a(t) = (t^2 + t, t^3 - t, t^4 + 2t), which exercise every derivative
    // order that enters the prolongation.
    static GeneratorSpec basis(GenKind k);
    static GeneratorSpec gauge(Poly Omega);
    static GeneratorSpec moving_frame(PolyVec3 a);

    void validate() const;
};

// Linear combination (the algebra is closed under addition); mixing two
// different broken variants is rejected.
GeneratorSpec operator+(const GeneratorSpec& lhs, const GeneratorSpec& rhs);

// Infinitesimal action on base and field coordinates.
struct GeneratorValue {
    std::array<double, 4> xi{};
    std::array<cdouble, 3> eta{};
};
GeneratorValue eval_generator(const GeneratorSpec& spec,
                              const std::array<double, 4>& x,
                              const std::array<cdouble, 3>& u);

// Full second prolongation evaluated at a jet point.
struct ProlongedValue {
    std::array<double, 4> xi{};
    std::array<cdouble, 3> eta{};
    std::array<std::array<cdouble, 4>, 3> eta1{};
    std::array<std::array<cdouble, 10>, 3> eta2{};
};
ProlongedValue prolong(const GeneratorSpec& spec, const JetPoint& p);

// The three field equations evaluated at a jet point (no constraint
// assumed).
std::array<cdouble, 3> equations(const JetPoint& p);

// Solves the field equations for u_t, v_t and w_zz and writes them back,
// leaving every other jet coordinate free.
JetPoint constrain_jet(JetPoint p);

// Residuals of the infinitesimal invariance conditions at a constrained
// jet point; throws if the point does not satisfy the field equations.
std::array<cdouble, 3> symmetry_residual(const GeneratorSpec& spec,
                                         const JetPoint& p);

// 1 + (largest coordinate magnitude)^3: the natural size of the cubic
// terms in the residual, used to normalize tolerances.
double jet_scale(const JetPoint& p);

// Deterministic random jet point with every entry in [-1, 1] (real and
// imaginary parts), then constrained. Draw order is fixed: x, u, du, ddu.
JetPoint random_jet(std::mt19937_64& rng);

} // namespace sn
