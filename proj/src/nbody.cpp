#include "sn/nbody.hpp"

#include <cmath>
#include <numbers>

#include "sn/errors.hpp"

namespace sn {

double default_kappa() { return 1.0 / (2.0 * std::numbers::pi); }

void NBodyState::validate() const {
    if (m.empty()) throw ConfigError("empty body list");
    if (a.size() != m.size() || v.size() != m.size())
        throw ConfigError("body arrays have mismatched lengths");
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!(m[i] > 0.0) || !std::isfinite(m[i]))
            throw ConfigError("masses must be positive and finite");
        for (int ax = 0; ax < 3; ++ax)
            if (!std::isfinite(a[i][ax]) || !std::isfinite(v[i][ax]))
                throw ConfigError("positions and velocities must be finite");
    }
}

std::vector<Vec3> accelerations(const NBodyState& s, double kappa) {
    s.validate();
    if (!std::isfinite(kappa)) throw ConfigError("kappa must be finite");
    const std::size_t N = s.size();
    std::vector<Vec3> F(N, Vec3{0.0, 0.0, 0.0});
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i + 1; j < N; ++j) {
            const Vec3 d = s.a[j] - s.a[i];
            const double r2 = dot(d, d);
            const double r = std::sqrt(r2);
            if (!(r > 1e-9))
                throw SingularityError("bodies closer than 1e-9; no softening");
            const Vec3 P = d * (kappa * s.m[i] * s.m[j] / (r2 * r));
            F[i] = F[i] + P;
            F[j] = F[j] - P;
        }
    }
    std::vector<Vec3> acc(N);
    for (std::size_t i = 0; i < N; ++i) acc[i] = F[i] * (1.0 / s.m[i]);
    return acc;
}

NBodyState leapfrog_step(NBodyState s, double dt, double kappa) {
    if (!std::isfinite(dt) || dt == 0.0) throw ConfigError("dt must be nonzero");
    const std::size_t N = s.size();
    std::vector<Vec3> acc = accelerations(s, kappa);
    for (std::size_t i = 0; i < N; ++i) s.v[i] = s.v[i] + acc[i] * (0.5 * dt);
    for (std::size_t i = 0; i < N; ++i) s.a[i] = s.a[i] + s.v[i] * dt;
    acc = accelerations(s, kappa);
    for (std::size_t i = 0; i < N; ++i) s.v[i] = s.v[i] + acc[i] * (0.5 * dt);
    s.t += dt;
    return s;
}

double nbody_energy(const NBodyState& s) {
    s.validate();
    double kin = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) kin += s.m[i] * dot(s.v[i], s.v[i]);
    double inter = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (i == j) continue;
            const double r = norm(s.a[i] - s.a[j]);
            if (!(r > 0.0)) throw SingularityError("coincident bodies in energy");
            inter += s.m[i] * s.m[j] / r;
        }
    return kin / 8.0 - inter / (16.0 * std::numbers::pi);
}

} // namespace sn
