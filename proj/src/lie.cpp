#include "sn/lie.hpp"

#include <algorithm>
#include <cmath>

#include "sn/errors.hpp"

namespace sn {

namespace {
constexpr cdouble kI{0.0, 1.0};
} // namespace

int JetPoint::pair_index(int n, int m) {
    if (n > m) std::swap(n, m);
    // (0,0),(0,1),(0,2),(0,3),(1,1),(1,2),(1,3),(2,2),(2,3),(3,3)
    static constexpr int base[4] = {0, 4, 7, 9};
    return base[n] + (m - n);
}

GeneratorSpec GeneratorSpec::basis(GenKind k) {
    GeneratorSpec s;
    s.kind = k;
    switch (k) {
    case GenKind::X1:
    case GenKind::X2:
    case GenKind::X3:
    case GenKind::X4:
    case GenKind::X5:
    case GenKind::X6:
    case GenKind::X7:
    case GenKind::X8:
        s.a[static_cast<int>(k)] = 1.0;
        break;
    case GenKind::X9:
        s.Omega = Poly{0.0, 0.0, 1.0}; // t^2
        break;
    case GenKind::X10:
        // every derivative order up to the fourth appears in the prolongation
        s.avec = PolyVec3{Poly{0.0, 1.0, 1.0},       // t^2 + t
                          Poly{0.0, -1.0, 0.0, 1.0}, // t^3 - t
                          Poly{0.0, 2.0, 0.0, 0.0, 1.0}}; // t^4 + 2t
        break;
    case GenKind::GENERAL:
        throw ConfigError("GENERAL is not a basis element");
    }
    return s;
}

GeneratorSpec GeneratorSpec::gauge(Poly Omega) {
    GeneratorSpec s;
    s.kind = GenKind::X9;
    s.Omega = std::move(Omega);
    s.validate();
    return s;
}

GeneratorSpec GeneratorSpec::moving_frame(PolyVec3 a) {
    GeneratorSpec s;
    s.kind = GenKind::X10;
    s.avec = std::move(a);
    s.validate();
    return s;
}

void GeneratorSpec::validate() const {
    for (double v : a)
        if (!std::isfinite(v)) throw ConfigError("generator coefficients must be finite");
    for (double v : Omega.c)
        if (!std::isfinite(v)) throw ConfigError("Omega coefficients must be finite");
    for (const Poly* p : {&avec.x, &avec.y, &avec.z})
        for (double v : p->c)
            if (!std::isfinite(v)) throw ConfigError("a(t) coefficients must be finite");
    require_degree_le(Omega, 4, "Omega");
    require_degree_le(avec, 4, "a(t)");
    if (kind == GenKind::X9 && !avec.is_zero())
        throw ConfigError("X9 carries only Omega");
    if (kind == GenKind::X10 && !Omega.is_zero())
        throw ConfigError("X10 carries only a(t)");
    if (broken == BreakTerm::X9DropEtaW && Omega.is_zero())
        throw ConfigError("X9 break requires a nonzero Omega");
    if ((broken == BreakTerm::X10DropPhase || broken == BreakTerm::X10DropEtaW) &&
        avec.is_zero())
        throw ConfigError("X10 break requires a nonzero a(t)");
}

GeneratorSpec operator+(const GeneratorSpec& lhs, const GeneratorSpec& rhs) {
    if (lhs.broken != BreakTerm::None && rhs.broken != BreakTerm::None &&
        lhs.broken != rhs.broken)
        throw ConfigError("cannot combine different broken variants");
    GeneratorSpec s;
    s.kind = GenKind::GENERAL;
    for (int k = 0; k < 8; ++k) s.a[k] = lhs.a[k] + rhs.a[k];
    s.Omega = lhs.Omega + rhs.Omega;
    s.avec = lhs.avec + rhs.avec;
    s.broken = lhs.broken != BreakTerm::None ? lhs.broken : rhs.broken;
    return s;
}

namespace {

// Everything the prolongation formulas need at one base point: the
// generator components and their partial derivatives in base and field
// directions. The family is affine in the fields, so all second field
// derivatives vanish; the zero tables are kept anyway to keep the
// prolongation loops a literal transcription of the general formulas.
struct PartialTables {
    std::array<double, 4> xi{};
    double dxi[4][4] = {};        // d xi^i / d x^n
    double ddxi[4][4][4] = {};    // d^2 xi^i / d x^n d x^m
    double dxi_du[4][3] = {};     // d xi^i / d u^beta (identically zero)
    double ddxi_dxdu[4][4][3] = {}; // (identically zero)
    double ddxi_dudu[4][3][3] = {}; // (identically zero)

    std::array<cdouble, 3> eta{};
    cdouble deta_dx[3][4] = {};
    cdouble deta_du[3][3] = {};
    cdouble ddeta_dxdx[3][4][4] = {};
    cdouble ddeta_dxdu[3][4][3] = {};
    cdouble ddeta_dudu[3][3][3] = {}; // (identically zero)
};

PartialTables make_tables(const GeneratorSpec& s, const std::array<double, 4>& x,
                          const std::array<cdouble, 3>& u) {
    const double t = x[0];
    const double a1 = s.a[0], a2 = s.a[1], a3 = s.a[2], a4 = s.a[3];
    const double a5 = s.a[4], a6 = s.a[5], a7 = s.a[6], a8 = s.a[7];

    // Time derivatives of the moving-frame shift and the gauge phase.
    const PolyVec3 ad1 = s.avec.derivative();
    const PolyVec3 ad2 = ad1.derivative();
    const PolyVec3 ad3 = ad2.derivative();
    const PolyVec3 ad4 = ad3.derivative();
    const Vec3 a_d1 = ad1.eval(t), a_d2 = ad2.eval(t), a_d3 = ad3.eval(t),
               a_d4 = ad4.eval(t);
    const double om1 = s.Omega.derivative().eval(t);
    const double om2 = s.Omega.derivative().derivative().eval(t);
    const double om3 = s.Omega.derivative().derivative().derivative().eval(t);

    const bool drop_phase = s.broken == BreakTerm::X10DropPhase;
    const bool drop_x9_w = s.broken == BreakTerm::X9DropEtaW;
    const bool drop_x10_w = s.broken == BreakTerm::X10DropEtaW;

    PartialTables T;

    // Base action: uniform scaling plus rotations, translations, and the
    // time-dependent shift.
    T.xi[0] = 2.0 * a1 * t + a5;
    T.xi[1] = a1 * x[1] + a2 * x[2] + a3 * x[3] + a6 + s.avec.x.eval(t);
    T.xi[2] = -a2 * x[1] + a1 * x[2] + a4 * x[3] + a7 + s.avec.y.eval(t);
    T.xi[3] = -a3 * x[1] - a4 * x[2] + a1 * x[3] + a8 + s.avec.z.eval(t);

    T.dxi[0][0] = 2.0 * a1;
    T.dxi[1][0] = a_d1.x;
    T.dxi[1][1] = a1;
    T.dxi[1][2] = a2;
    T.dxi[1][3] = a3;
    T.dxi[2][0] = a_d1.y;
    T.dxi[2][1] = -a2;
    T.dxi[2][2] = a1;
    T.dxi[2][3] = a4;
    T.dxi[3][0] = a_d1.z;
    T.dxi[3][1] = -a3;
    T.dxi[3][2] = -a4;
    T.dxi[3][3] = a1;

    T.ddxi[1][0][0] = a_d2.x;
    T.ddxi[2][0][0] = a_d2.y;
    T.ddxi[3][0][0] = a_d2.z;

    // Field action. The matter pair picks up a scaling weight, the phase
    // (x . a')/2 of the moving frame, and the gauge phase Omega; the
    // potential compensates with -(x . a'')/2 - Omega'.
    const double xa1 = x[1] * a_d1.x + x[2] * a_d1.y + x[3] * a_d1.z;
    const double xa2 = x[1] * a_d2.x + x[2] * a_d2.y + x[3] * a_d2.z;
    const double xa3 = x[1] * a_d3.x + x[2] * a_d3.y + x[3] * a_d3.z;
    const double xa4 = x[1] * a_d4.x + x[2] * a_d4.y + x[3] * a_d4.z;

    const cdouble g = (drop_phase ? cdouble{0.0, 0.0} : 0.5 * kI * xa1) - 2.0 * a1 +
                      kI * s.Omega.eval(t);
    const cdouble g_t =
        (drop_phase ? cdouble{0.0, 0.0} : 0.5 * kI * xa2) + kI * om1;
    const cdouble g_tt =
        (drop_phase ? cdouble{0.0, 0.0} : 0.5 * kI * xa3) + kI * om2;
    // conjugate-field counterpart (real parameters: the mirror of g with the
    // scaling weight on the opposite side)
    const cdouble gb = -(drop_phase ? cdouble{0.0, 0.0} : 0.5 * kI * xa1) -
                       2.0 * a1 - kI * s.Omega.eval(t);
    const cdouble gb_t =
        -(drop_phase ? cdouble{0.0, 0.0} : 0.5 * kI * xa2) - kI * om1;
    const cdouble gb_tt =
        -(drop_phase ? cdouble{0.0, 0.0} : 0.5 * kI * xa3) - kI * om2;

    T.eta[0] = u[0] * g;
    T.eta[1] = u[1] * gb;
    T.eta[2] = -2.0 * a1 * u[2] - (drop_x10_w ? 0.0 : 0.5 * xa2) -
               (drop_x9_w ? 0.0 : om1);

    T.deta_du[0][0] = g;
    T.deta_du[1][1] = gb;
    T.deta_du[2][2] = -2.0 * a1;

    T.deta_dx[0][0] = u[0] * g_t;
    T.deta_dx[1][0] = u[1] * gb_t;
    T.deta_dx[2][0] = -(drop_x10_w ? 0.0 : 0.5 * xa3) - (drop_x9_w ? 0.0 : om2);
    for (int j = 1; j <= 3; ++j) {
        const double adj = j == 1 ? a_d1.x : (j == 2 ? a_d1.y : a_d1.z);
        const double add2 = j == 1 ? a_d2.x : (j == 2 ? a_d2.y : a_d2.z);
        if (!drop_phase) {
            T.deta_dx[0][j] = u[0] * (0.5 * kI * adj);
            T.deta_dx[1][j] = u[1] * (-0.5 * kI * adj);
        }
        T.deta_dx[2][j] = drop_x10_w ? 0.0 : -0.5 * add2;
    }

    T.ddeta_dxdx[0][0][0] = u[0] * g_tt;
    T.ddeta_dxdx[1][0][0] = u[1] * gb_tt;
    T.ddeta_dxdx[2][0][0] =
        -(drop_x10_w ? 0.0 : 0.5 * xa4) - (drop_x9_w ? 0.0 : om3);
    for (int j = 1; j <= 3; ++j) {
        const double add2 = j == 1 ? a_d2.x : (j == 2 ? a_d2.y : a_d2.z);
        const double add3 = j == 1 ? a_d3.x : (j == 2 ? a_d3.y : a_d3.z);
        if (!drop_phase) {
            T.ddeta_dxdx[0][0][j] = T.ddeta_dxdx[0][j][0] = u[0] * (0.5 * kI * add2);
            T.ddeta_dxdx[1][0][j] = T.ddeta_dxdx[1][j][0] = u[1] * (-0.5 * kI * add2);
        }
        T.ddeta_dxdx[2][0][j] = T.ddeta_dxdx[2][j][0] =
            drop_x10_w ? 0.0 : -0.5 * add3;
    }

    // Mixed base-field derivatives: eta^u = u g(x) gives d^2 eta^u / dx du = dg/dx.
    T.ddeta_dxdu[0][0][0] = g_t;
    T.ddeta_dxdu[1][0][1] = gb_t;
    for (int j = 1; j <= 3; ++j) {
        const double adj = j == 1 ? a_d1.x : (j == 2 ? a_d1.y : a_d1.z);
        if (!drop_phase) {
            T.ddeta_dxdu[0][j][0] = 0.5 * kI * adj;
            T.ddeta_dxdu[1][j][1] = -0.5 * kI * adj;
        }
    }
    return T;
}

} // namespace

GeneratorValue eval_generator(const GeneratorSpec& spec,
                              const std::array<double, 4>& x,
                              const std::array<cdouble, 3>& u) {
    spec.validate();
    const PartialTables T = make_tables(spec, x, u);
    GeneratorValue gv;
    gv.xi = T.xi;
    gv.eta = T.eta;
    return gv;
}

ProlongedValue prolong(const GeneratorSpec& spec, const JetPoint& p) {
    spec.validate();
    const PartialTables T = make_tables(spec, p.x, p.u);

    ProlongedValue pv;
    pv.xi = T.xi;
    pv.eta = T.eta;

    // First prolongation:
    // eta^alpha_n = eta,n + eta,beta u^beta,n - xi^i,n u^alpha,i
    //               - xi^i,beta u^beta,n u^alpha,i
    for (int al = 0; al < 3; ++al) {
        for (int n = 0; n < 4; ++n) {
            cdouble e = T.deta_dx[al][n];
            for (int b = 0; b < 3; ++b) e += T.deta_du[al][b] * p.du[b][n];
            for (int i = 0; i < 4; ++i) e -= T.dxi[i][n] * p.du[al][i];
            for (int i = 0; i < 4; ++i)
                for (int b = 0; b < 3; ++b)
                    e -= T.dxi_du[i][b] * p.du[b][n] * p.du[al][i];
            pv.eta1[al][n] = e;
        }
    }

    // Second prolongation:
    // eta^alpha_nm = eta,nm + eta,n beta u^beta,m + eta,m beta u^beta,n
    //   - xi^i,nm u^alpha,i + eta,beta gamma u^beta,n u^gamma,m
    //   - u^alpha,k (xi^k,n beta u^beta,m + xi^k,m beta u^beta,n)
    //   - xi^k,beta gamma u^beta,n u^gamma,m u^alpha,k
    //   + eta,beta u^beta,nm - xi^i,n u^alpha,mi - xi^i,m u^alpha,ni
    //   - xi^k,beta (u^alpha,k u^beta,nm + u^beta,n u^alpha,mk + u^alpha,nk u^beta,m)
    for (int al = 0; al < 3; ++al) {
        for (int n = 0; n < 4; ++n) {
            for (int m = n; m < 4; ++m) {
                cdouble e = T.ddeta_dxdx[al][n][m];
                for (int b = 0; b < 3; ++b)
                    e += T.ddeta_dxdu[al][n][b] * p.du[b][m] +
                         T.ddeta_dxdu[al][m][b] * p.du[b][n];
                for (int i = 0; i < 4; ++i) e -= T.ddxi[i][n][m] * p.du[al][i];
                for (int b = 0; b < 3; ++b)
                    for (int g = 0; g < 3; ++g)
                        e += T.ddeta_dudu[al][b][g] * p.du[b][n] * p.du[g][m];
                for (int k = 0; k < 4; ++k)
                    for (int b = 0; b < 3; ++b)
                        e -= p.du[al][k] * (T.ddxi_dxdu[k][n][b] * p.du[b][m] +
                                            T.ddxi_dxdu[k][m][b] * p.du[b][n]);
                for (int k = 0; k < 4; ++k)
                    for (int b = 0; b < 3; ++b)
                        for (int g = 0; g < 3; ++g)
                            e -= T.ddxi_dudu[k][b][g] * p.du[b][n] * p.du[g][m] *
                                 p.du[al][k];
                for (int b = 0; b < 3; ++b)
                    e += T.deta_du[al][b] * p.d2(b, n, m);
                for (int i = 0; i < 4; ++i)
                    e -= T.dxi[i][n] * p.d2(al, m, i) + T.dxi[i][m] * p.d2(al, n, i);
                for (int k = 0; k < 4; ++k)
                    for (int b = 0; b < 3; ++b)
                        e -= T.dxi_du[k][b] *
                             (p.du[al][k] * p.d2(b, n, m) +
                              p.du[b][n] * p.d2(al, m, k) +
                              p.d2(al, n, k) * p.du[b][m]);
                pv.eta2[al][JetPoint::pair_index(n, m)] = e;
            }
        }
    }
    return pv;
}

std::array<cdouble, 3> equations(const JetPoint& p) {
    const cdouble u = p.u[0], v = p.u[1], w = p.u[2];
    const cdouble lap_u = p.d2(0, 1, 1) + p.d2(0, 2, 2) + p.d2(0, 3, 3);
    const cdouble lap_v = p.d2(1, 1, 1) + p.d2(1, 2, 2) + p.d2(1, 3, 3);
    const cdouble lap_w = p.d2(2, 1, 1) + p.d2(2, 2, 2) + p.d2(2, 3, 3);
    return {kI * p.du[0][0] + lap_u - u * w,
            kI * p.du[1][0] - lap_v + v * w,
            lap_w - u * v};
}

JetPoint constrain_jet(JetPoint p) {
    const cdouble u = p.u[0], v = p.u[1], w = p.u[2];
    // w_zz from the potential equation first, so the matter Laplacians are
    // taken on the final second derivatives.
    p.d2(2, 3, 3) = u * v - p.d2(2, 1, 1) - p.d2(2, 2, 2);
    const cdouble lap_u = p.d2(0, 1, 1) + p.d2(0, 2, 2) + p.d2(0, 3, 3);
    const cdouble lap_v = p.d2(1, 1, 1) + p.d2(1, 2, 2) + p.d2(1, 3, 3);
    p.du[0][0] = -kI * (u * w - lap_u);
    p.du[1][0] = kI * (v * w - lap_v);
    return p;
}

double jet_scale(const JetPoint& p) {
    double m = 0.0;
    for (double v : p.x) m = std::max(m, std::fabs(v));
    for (const cdouble& c : p.u) m = std::max(m, std::abs(c));
    for (const auto& row : p.du)
        for (const cdouble& c : row) m = std::max(m, std::abs(c));
    for (const auto& row : p.ddu)
        for (const cdouble& c : row) m = std::max(m, std::abs(c));
    return 1.0 + m * m * m;
}

std::array<cdouble, 3> symmetry_residual(const GeneratorSpec& spec,
                                         const JetPoint& p) {
    const auto H = equations(p);
    const double tol = 1e-13 * jet_scale(p);
    for (const cdouble& h : H)
        if (std::abs(h) > tol)
            throw ConfigError("symmetry_residual requires a constrained jet point");

    const ProlongedValue pv = prolong(spec, p);
    const cdouble u = p.u[0], v = p.u[1], w = p.u[2];
    const auto& e1 = pv.eta1;
    const auto& e2 = pv.eta2;
    auto at = [&](int al, int n, int m) { return e2[al][JetPoint::pair_index(n, m)]; };

    const cdouble xh1 = kI * e1[0][0] + at(0, 1, 1) + at(0, 2, 2) + at(0, 3, 3) -
                        pv.eta[0] * w - pv.eta[2] * u;
    const cdouble xh2 = kI * e1[1][0] - at(1, 1, 1) - at(1, 2, 2) - at(1, 3, 3) +
                        pv.eta[1] * w + pv.eta[2] * v;
    const cdouble xh3 = at(2, 1, 1) + at(2, 2, 2) + at(2, 3, 3) - pv.eta[0] * v -
                        pv.eta[1] * u;
    return {xh1, xh2, xh3};
}

JetPoint random_jet(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto real = [&]() { return dist(rng); };
    auto cplx = [&]() {
        const double re = dist(rng);
        const double im = dist(rng);
        return cdouble(re, im);
    };
    JetPoint p;
    for (int n = 0; n < 4; ++n) p.x[n] = real();
    for (int al = 0; al < 3; ++al) p.u[al] = cplx();
    for (int al = 0; al < 3; ++al)
        for (int n = 0; n < 4; ++n) p.du[al][n] = cplx();
    for (int al = 0; al < 3; ++al)
        for (int k = 0; k < 10; ++k) p.ddu[al][k] = cplx();
    return constrain_jet(p);
}

} // namespace sn
