#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "sn/errors.hpp"
#include "sn/vec3.hpp"

namespace sn {

// Dense polynomial in one variable, c[k] t^k. Time-dependent generator
// parameters are polynomials so that derivatives and the accumulated-phase
// integral are exact (no numerical differentiation in symmetry tests).
struct Poly {
    std::vector<double> c;

    Poly() = default;
    Poly(std::initializer_list<double> coeffs) : c(coeffs) {}
    explicit Poly(std::vector<double> coeffs) : c(std::move(coeffs)) {}

    int degree() const { return c.empty() ? 0 : static_cast<int>(c.size()) - 1; }

    double eval(double t) const {
        double acc = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
        return acc;
    }

    Poly derivative() const {
        if (c.size() <= 1) return Poly{};
        std::vector<double> d(c.size() - 1);
        for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
        return Poly(std::move(d));
    }

    // Antiderivative with zero constant term: (integral)(0) = 0.
    Poly antiderivative() const {
        std::vector<double> d(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) d[k + 1] = c[k] / static_cast<double>(k + 1);
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<double> d(std::max(a.c.size(), b.c.size()), 0.0);
        for (std::size_t k = 0; k < a.c.size(); ++k) d[k] += a.c[k];
        for (std::size_t k = 0; k < b.c.size(); ++k) d[k] += b.c[k];
        return Poly(std::move(d));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c.empty() || b.c.empty()) return Poly{};
        std::vector<double> d(a.c.size() + b.c.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) d[i + j] += a.c[i] * b.c[j];
        return Poly(std::move(d));
    }

    bool is_zero() const {
        for (double v : c)
            if (v != 0.0) return false;
        return true;
    }
};

struct PolyVec3 {
    Poly x, y, z;

    Vec3 eval(double t) const { return {x.eval(t), y.eval(t), z.eval(t)}; }
    PolyVec3 derivative() const { return {x.derivative(), y.derivative(), z.derivative()}; }

    // t -> integral_0^t |d/ds (this)(s)|^2 ds, exact for polynomial components.
    double speed2_integral(double t) const {
        const PolyVec3 d = derivative();
        const Poly s2 = d.x * d.x + d.y * d.y + d.z * d.z;
        return s2.antiderivative().eval(t);
    }

    int degree() const { return std::max({x.degree(), y.degree(), z.degree()}); }
    bool is_zero() const { return x.is_zero() && y.is_zero() && z.is_zero(); }

    friend PolyVec3 operator+(const PolyVec3& a, const PolyVec3& b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
};

inline void require_degree_le(const Poly& p, int maxdeg, const char* what) {
    if (p.degree() > maxdeg)
        throw ConfigError(std::string(what) + ": polynomial degree exceeds " + std::to_string(maxdeg));
}

inline void require_degree_le(const PolyVec3& p, int maxdeg, const char* what) {
    require_degree_le(p.x, maxdeg, what);
    require_degree_le(p.y, maxdeg, what);
    require_degree_le(p.z, maxdeg, what);
}

} // namespace sn
