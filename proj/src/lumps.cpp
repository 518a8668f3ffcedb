#include "sn/lumps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <type_traits>
#include <utility>
#include <vector>

#include "sn/errors.hpp"

namespace sn {

namespace {

bool finite3(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

int wrap_index(int i, int n) {
    int r = i % n;
    return r < 0 ? r + n : r;
}

// 4-point Lagrange weights at stencil coordinate s in [1, 2) (nodes at 0..3).
void cubic_weights(double s, double w[4]) {
    w[0] = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
    w[1] = s * (s - 2.0) * (s - 3.0) / 2.0;
    w[2] = -s * (s - 1.0) * (s - 3.0) / 2.0;
    w[3] = s * (s - 1.0) * (s - 2.0) / 6.0;
}

struct AxisStencil {
    int idx[4];
    double w[4];
};

AxisStencil axis_stencil(double x, const Grid3& g) {
    const double u = x / g.h() + g.n * 0.5; // continuous node-index coordinate
    const double fb = std::floor(u);
    const int i1 = static_cast<int>(fb);
    AxisStencil st;
    cubic_weights(u - fb + 1.0, st.w);
    for (int k = 0; k < 4; ++k) st.idx[k] = wrap_index(i1 - 1 + k, g.n);
    return st;
}

template <class Field>
auto sample_periodic_impl(const Field& f, const Vec3& pos) {
    const AxisStencil sx = axis_stencil(pos.x, f.grid);
    const AxisStencil sy = axis_stencil(pos.y, f.grid);
    const AxisStencil sz = axis_stencil(pos.z, f.grid);
    typename std::decay_t<decltype(f.v)>::value_type acc{};
    for (int kz = 0; kz < 4; ++kz)
        for (int ky = 0; ky < 4; ++ky) {
            const double wyz = sy.w[ky] * sz.w[kz];
            for (int kx = 0; kx < 4; ++kx)
                acc += sx.w[kx] * wyz * f.at(sx.idx[kx], sy.idx[ky], sz.idx[kz]);
        }
    return acc;
}

void materialize(FieldPair& f) {
    const Provenance& pv = *f.prov;
    const Grid3& g = f.psi.grid;
    for (int iz = 0; iz < g.n; ++iz) {
        const double z = g.coord(iz);
        for (int iy = 0; iy < g.n; ++iy) {
            const double y = g.coord(iy);
            for (int ix = 0; ix < g.n; ++ix) {
                const Vec3 pos{g.coord(ix), y, z};
                cdouble ps{0.0, 0.0};
                double ph = 0.0;
                for (const LumpTerm& tm : pv.terms) {
                    const double rr = norm(pos - tm.c);
                    const auto [pr, fr] = sample_profile(*pv.profile, tm.m * rr);
                    const double m2 = tm.m * tm.m;
                    ps += m2 * pr * std::polar(1.0, dot(tm.q, pos) + tm.theta);
                    ph += m2 * fr;
                }
                ph += pv.phi_extra.b0 + dot(pv.phi_extra.b, pos);
                f.psi.at(ix, iy, iz) = ps;
                f.phi.at(ix, iy, iz) = ph;
            }
        }
    }
}

void require_time(const FieldPair& f, double t) {
    if (f.t != t)
        throw ConfigError("transform time does not match the snapshot time");
}

double wall_max_abs(const ComplexField3& f) {
    const int n = f.grid.n;
    double w = 0.0;
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                if (ix != 0 && iy != 0 && iz != 0 && ix != n - 1 && iy != n - 1 &&
                    iz != n - 1)
                    continue;
                w = std::max(w, std::abs(f.at(ix, iy, iz)));
            }
    return w;
}

double global_max_abs(const ComplexField3& f) {
    double m = 0.0;
    for (const cdouble& c : f.v) m = std::max(m, std::abs(c));
    return m;
}

void check_shift_ok(const FieldPair& f, const Vec3& shift) {
    if (shift.x == 0.0 && shift.y == 0.0 && shift.z == 0.0) return;
    const double L = f.psi.grid.L;
    const double smax =
        std::max({std::fabs(shift.x), std::fabs(shift.y), std::fabs(shift.z)});
    if (smax > 0.25 * L)
        throw PlacementError("shift exceeds a quarter box; content would wrap");
    const double gm = global_max_abs(f.psi);
    const double wm = wall_max_abs(f.psi);
    if (wm > 1e-10 * gm)
        throw PlacementError(
            "field does not decay at the walls; shifting would wrap support");
}

// Rescaled lump magnitude integrals for the pairwise overlap bound.
// Returns 2 * integral |psi_i| |psi_j| dV for radial envelopes
// F(r1) = mi^2 |psi0(mi r1)| centered d apart, via bipolar coordinates:
//   integral F(r1) G(r2) dV = (2 pi / d) int r1 F(r1) [W(d + r1) - W(|d - r1|)] dr1
// with W(r) = int_0^r s G(s) ds. Quadrature is trapezoidal on a fine table;
// the result is used as an error bound, so modest accuracy suffices.
double pair_overlap(const GroundStateProfile& p, double mi, double mj, double d,
                    double r_unit_support) {
    const int N = 4096;
    const double Ri = r_unit_support / mi;
    const double Rj = r_unit_support / mj;

    const double hj = Rj / N;
    std::vector<double> W(N + 1, 0.0);
    double prev = 0.0; // s * G(s) at s = 0
    for (int k = 1; k <= N; ++k) {
        const double s = k * hj;
        const double cur = s * mj * mj * std::fabs(sample_profile(p, mj * s).first);
        W[k] = W[k - 1] + 0.5 * hj * (prev + cur);
        prev = cur;
    }
    auto Wlook = [&](double r) {
        if (r <= 0.0) return 0.0;
        if (r >= Rj) return W[N];
        const double u = r / hj;
        const int k = static_cast<int>(u);
        return W[k] + (u - k) * (W[k + 1] - W[k]);
    };

    const double hi = Ri / N;
    double outer = 0.0;
    double prev_f = 0.0; // integrand at r1 = 0
    for (int k = 1; k <= N; ++k) {
        const double r1 = k * hi;
        const double F = mi * mi * std::fabs(sample_profile(p, mi * r1).first);
        const double cur = r1 * F * (Wlook(d + r1) - Wlook(std::fabs(d - r1)));
        outer += 0.5 * hi * (prev_f + cur);
        prev_f = cur;
    }
    return 2.0 * (2.0 * std::numbers::pi / d) * outer;
}

LumpTerm lump_term(const GroundStateProfile& p, const LumpSpec& s, double t) {
    LumpTerm tm;
    tm.m = s.m;
    tm.c = s.a + s.v * t;
    tm.q = s.v * 0.5;
    tm.theta = -(s.m * s.m * p.E0 * t) - 0.25 * dot(s.v, s.v) * t;
    return tm;
}

void check_placement(const Vec3& c, double R, const Grid3& g, PlacementPolicy policy) {
    if (policy != PlacementPolicy::Strict) return;
    for (int ax = 0; ax < 3; ++ax) {
        if (std::fabs(c[ax]) + 3.0 * R > 0.5 * g.L) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "lump support (radius %.3g) does not fit the box "
                          "(L = %.3g) with a 2-radius margin",
                          R, g.L);
            throw PlacementError(buf);
        }
    }
}

void check_lump_spec(const LumpSpec& s) {
    if (!(s.m > 0.0) || !std::isfinite(s.m) || !finite3(s.a) || !finite3(s.v))
        throw ConfigError("lump spec must have finite entries and positive mass");
}

} // namespace

void LumpSystem::validate() const {
    if (lumps.empty()) throw ConfigError("lump system is empty");
    double msum = 0.0;
    for (const LumpSpec& s : lumps) {
        check_lump_spec(s);
        msum += s.m;
    }
    if (std::fabs(msum - 1.0) > 1e-12)
        throw ConfigError("lump masses must sum to 1 (field normalization)");
    for (std::size_t i = 0; i < lumps.size(); ++i)
        for (std::size_t j = i + 1; j < lumps.size(); ++j)
            if (norm(lumps[i].a - lumps[j].a) == 0.0)
                throw ConfigError("lump positions must be distinct");
}

cdouble sample_periodic(const ComplexField3& f, const Vec3& pos) {
    return sample_periodic_impl(f, pos);
}

double sample_periodic(const RealField3& f, const Vec3& pos) {
    return sample_periodic_impl(f, pos);
}

FieldPair make_lump(const GroundStateProfile& p, const LumpSpec& s, double t,
                    const Grid3& g, PlacementPolicy policy) {
    g.validate();
    check_lump_spec(s);
    if (std::fabs(p.norm - 1.0) > 1e-8)
        throw ConfigError("make_lump requires a unit-norm profile");
    const double R = profile_support_radius(p, 1e-12) / s.m;
    const Vec3 c = s.a + s.v * t;
    check_placement(c, R, g, policy);

    FieldPair f(g);
    f.t = t;
    Provenance pv;
    pv.profile = std::make_shared<GroundStateProfile>(p);
    pv.terms.push_back(lump_term(p, s, t));
    f.prov = std::move(pv);
    materialize(f);
    return f;
}

SuperposeResult superpose(const LumpSystem& sys, const GroundStateProfile& p,
                          double t, const Grid3& g, PlacementPolicy policy) {
    sys.validate();
    g.validate();
    if (std::fabs(p.norm - 1.0) > 1e-8)
        throw ConfigError("superpose requires a unit-norm profile");

    const double r_unit = profile_support_radius(p, 1e-12);
    SuperposeResult res{FieldPair(g), 0.0, false};
    res.fields.t = t;

    Provenance pv;
    pv.profile = std::make_shared<GroundStateProfile>(p);
    std::vector<Vec3> centers;
    for (const LumpSpec& s : sys.lumps) {
        const Vec3 c = s.a + s.v * t;
        check_placement(c, r_unit / s.m, g, policy);
        pv.terms.push_back(lump_term(p, s, t));
        centers.push_back(c);
    }

    for (std::size_t i = 0; i < sys.lumps.size(); ++i) {
        for (std::size_t j = i + 1; j < sys.lumps.size(); ++j) {
            const double d = norm(centers[i] - centers[j]);
            if (d == 0.0) throw ConfigError("coincident lump centers");
            const double Ri = r_unit / sys.lumps[i].m;
            const double Rj = r_unit / sys.lumps[j].m;
            if (d < 4.0 * std::max(Ri, Rj)) {
                res.separation_warning = true;
                std::fprintf(stderr,
                             "warning: lump separation %.3g below 4 lump radii "
                             "(%.3g); tails overlap\n",
                             d, 4.0 * std::max(Ri, Rj));
            }
            res.overlap_bound +=
                pair_overlap(p, sys.lumps[i].m, sys.lumps[j].m, d, r_unit);
        }
    }

    res.fields.prov = std::move(pv);
    materialize(res.fields);
    return res;
}

FieldPair galilean_boost(const FieldPair& f, const Vec3& v, double t) {
    require_time(f, t);
    if (!finite3(v)) throw ConfigError("boost velocity must be finite");
    const Grid3& g = f.psi.grid;
    const Vec3 shift = v * t;
    FieldPair out(g);
    out.t = t;
    if (f.prov) {
        Provenance pv = *f.prov;
        for (LumpTerm& tm : pv.terms) {
            tm.theta += -dot(tm.q, shift) - 0.25 * dot(v, v) * t;
            tm.c = tm.c + shift;
            tm.q = tm.q + v * 0.5;
        }
        pv.phi_extra.b0 -= dot(pv.phi_extra.b, shift);
        out.prov = std::move(pv);
        materialize(out);
    } else {
        check_shift_ok(f, shift);
        for (int iz = 0; iz < g.n; ++iz)
            for (int iy = 0; iy < g.n; ++iy)
                for (int ix = 0; ix < g.n; ++ix) {
                    const Vec3 pos{g.coord(ix), g.coord(iy), g.coord(iz)};
                    const Vec3 src = pos - shift;
                    const double phase =
                        0.5 * dot(v, pos) - 0.25 * dot(v, v) * t;
                    out.psi.at(ix, iy, iz) =
                        sample_periodic(f.psi, src) * std::polar(1.0, phase);
                    out.phi.at(ix, iy, iz) = sample_periodic(f.phi, src);
                }
    }
    return out;
}

FieldPair accelerated_frame(const FieldPair& f, const PolyVec3& a, double t) {
    require_time(f, t);
    require_degree_le(a, 4, "accelerated_frame shift");
    const Grid3& g = f.psi.grid;
    const Vec3 s = a.eval(t);
    const PolyVec3 ad = a.derivative();
    const Vec3 w = ad.eval(t);              // frame velocity
    const Vec3 acc = ad.derivative().eval(t); // frame acceleration
    const double S = a.speed2_integral(t);  // int_0^t |a'|^2

    FieldPair out(g);
    out.t = t;
    if (f.prov) {
        Provenance pv = *f.prov;
        for (LumpTerm& tm : pv.terms) {
            tm.theta += -dot(tm.q, s) - 0.25 * S;
            tm.c = tm.c + s;
            tm.q = tm.q + w * 0.5;
        }
        pv.phi_extra.b0 -= dot(pv.phi_extra.b, s);
        pv.phi_extra.b = pv.phi_extra.b - acc * 0.5;
        out.prov = std::move(pv);
        materialize(out);
    } else {
        check_shift_ok(f, s);
        for (int iz = 0; iz < g.n; ++iz)
            for (int iy = 0; iy < g.n; ++iy)
                for (int ix = 0; ix < g.n; ++ix) {
                    const Vec3 pos{g.coord(ix), g.coord(iy), g.coord(iz)};
                    const Vec3 src = pos - s;
                    const double phase = 0.5 * dot(w, pos) - 0.25 * S;
                    out.psi.at(ix, iy, iz) =
                        sample_periodic(f.psi, src) * std::polar(1.0, phase);
                    out.phi.at(ix, iy, iz) =
                        sample_periodic(f.phi, src) - 0.5 * dot(acc, pos);
                }
    }
    return out;
}

FieldPair phase_gauge(const FieldPair& f, const Poly& Omega, double t) {
    require_time(f, t);
    const double om = Omega.eval(t);
    const double omp = Omega.derivative().eval(t);
    FieldPair out(f.psi.grid);
    out.t = t;
    const cdouble ph = std::polar(1.0, om);
    for (std::size_t i = 0; i < f.psi.v.size(); ++i) {
        out.psi.v[i] = f.psi.v[i] * ph;
        out.phi.v[i] = f.phi.v[i] - omp;
    }
    if (f.prov) {
        Provenance pv = *f.prov;
        for (LumpTerm& tm : pv.terms) tm.theta += om;
        pv.phi_extra.b0 -= omp;
        out.prov = std::move(pv);
    }
    return out;
}

FieldPair scale_fields(const FieldPair& f, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw ConfigError("scale factor must be positive and finite");
    const Grid3& g = f.psi.grid;
    Grid3 ng{g.n, g.L / lambda};
    if (!(ng.h() > 0.0) || !std::isfinite(ng.h()))
        throw ResolutionError("rescaled box is not representable");

    // Node i of the new box sits at x_i / lambda, so psi'(x') = lambda^2 psi(lambda x')
    // is exact node for node; no interpolation enters.
    FieldPair out(ng);
    out.t = f.t / (lambda * lambda);
    const double l2 = lambda * lambda;
    for (std::size_t i = 0; i < f.psi.v.size(); ++i) {
        out.psi.v[i] = l2 * f.psi.v[i];
        out.phi.v[i] = l2 * f.phi.v[i];
    }
    if (f.prov) {
        Provenance pv = *f.prov;
        for (LumpTerm& tm : pv.terms) {
            tm.m *= lambda;
            tm.c = tm.c * (1.0 / lambda);
            tm.q = tm.q * lambda;
        }
        pv.phi_extra.b0 *= l2;
        pv.phi_extra.b = pv.phi_extra.b * (l2 * lambda);
        out.prov = std::move(pv);
    }
    return out;
}

} // namespace sn
