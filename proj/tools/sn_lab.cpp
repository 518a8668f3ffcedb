// sn-lab: command-line laboratory for the coupled matter-wave / potential
// system. Subcommands: ground-state, verify-symmetries, evolve, nbody,
// compare, diag. All file outputs are deterministic: rerunning a command
// with the same inputs reproduces CSV bodies bit for bit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sn/diagnostics.hpp"
#include "sn/errors.hpp"
#include "sn/evolve.hpp"
#include "sn/io_util.hpp"
#include "sn/lie.hpp"
#include "sn/lumps.hpp"
#include "sn/nbody.hpp"
#include "sn/poisson.hpp"
#include "sn/profile_io.hpp"
#include "sn/radial.hpp"
#include "sn/snapshot_io.hpp"

using nlohmann::json;

namespace {

struct LabConfig {
    // 3D grid
    int grid_n = 64;
    double box_L = 1000.0;
    // time stepping
    double dt = 1e-3;
    long steps = 0;
    long diag_every = 100;
    long snap_every = 0;
    // radial profile source
    double rmax = 32.0;
    int rn = 16000;
    double rtol = 1e-12;
    std::string profile_file;
    // lumps (default: one unit lump at rest)
    std::vector<sn::LumpSpec> lumps;
    // trajectory model
    double kappa = sn::default_kappa();
    // misc
    std::uint64_t seed = 1;
    bool allow_truncated = false;
    bool periodic = false;
};

sn::Vec3 vec_from(const json& a, const char* what) {
    if (!a.is_array() || a.size() != 3)
        throw sn::ConfigError(std::string(what) + " must be a 3-element array");
    return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const char* where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok)
            throw sn::ConfigError(std::string("unknown key \"") + it.key() +
                                  "\" in " + where);
    }
}

LabConfig load_config(const std::string& path) {
    LabConfig cfg;
    if (path.empty()) return cfg;
    json j;
    try {
        auto in = sn::open_in(path);
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw sn::ConfigError(std::string("cannot parse config: ") + e.what());
    }
    check_keys(j,
               {"grid", "dt", "steps", "diag_every", "snap_every", "profile",
                "profile_file", "lumps", "kappa", "seed", "allow_truncated_tail",
                "poisson"},
               "config");
    if (j.contains("grid")) {
        check_keys(j["grid"], {"n", "L"}, "grid");
        cfg.grid_n = j["grid"].value("n", cfg.grid_n);
        cfg.box_L = j["grid"].value("L", cfg.box_L);
    }
    cfg.dt = j.value("dt", cfg.dt);
    cfg.steps = j.value("steps", cfg.steps);
    cfg.diag_every = j.value("diag_every", cfg.diag_every);
    cfg.snap_every = j.value("snap_every", cfg.snap_every);
    if (j.contains("profile")) {
        check_keys(j["profile"], {"rmax", "n", "tol"}, "profile");
        cfg.rmax = j["profile"].value("rmax", cfg.rmax);
        cfg.rn = j["profile"].value("n", cfg.rn);
        cfg.rtol = j["profile"].value("tol", cfg.rtol);
    }
    cfg.profile_file = j.value("profile_file", cfg.profile_file);
    if (j.contains("lumps")) {
        for (const json& item : j["lumps"]) {
            check_keys(item, {"m", "a", "v"}, "lump");
            sn::LumpSpec s;
            s.m = item.value("m", 1.0);
            if (item.contains("a")) s.a = vec_from(item["a"], "lump a");
            if (item.contains("v")) s.v = vec_from(item["v"], "lump v");
            cfg.lumps.push_back(s);
        }
    }
    cfg.kappa = j.value("kappa", cfg.kappa);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.allow_truncated = j.value("allow_truncated_tail", cfg.allow_truncated);
    if (j.contains("poisson")) {
        const std::string p = j["poisson"].get<std::string>();
        if (p == "free-space")
            cfg.periodic = false;
        else if (p == "periodic-zero-mean")
            cfg.periodic = true;
        else
            throw sn::ConfigError("poisson must be free-space or periodic-zero-mean");
    }
    return cfg;
}

// Scan argv for --config before CLI11 runs so file values become the
// defaults that explicit flags then override.
std::string prescan_config(int argc, char** argv) {
    for (int i = 1; i < argc - 1; ++i)
        if (std::string(argv[i]) == "--config") return argv[i + 1];
    return {};
}

sn::GroundStateProfile obtain_profile(const LabConfig& cfg) {
    if (!cfg.profile_file.empty()) return sn::read_profile(cfg.profile_file);
    return sn::find_ground_state(cfg.rtol, sn::RadialGrid{cfg.rmax, cfg.rn});
}

std::vector<sn::LumpSpec> effective_lumps(const LabConfig& cfg) {
    if (!cfg.lumps.empty()) return cfg.lumps;
    return {sn::LumpSpec{1.0, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}};
}

void print_kv(const char* key, const std::string& val) {
    std::printf("%s=%s\n", key, val.c_str());
}
void print_kv(const char* key, double val) { print_kv(key, sn::fmt17(val)); }

// ---------------------------------------------------------------- ground-state

struct GroundStateOpts {
    double rmax = 32.0;
    int n = 16000;
    double tol = 1e-12;
    std::string out = "profile.csv";
};

int cmd_ground_state(const GroundStateOpts& o) {
    const sn::GroundStateProfile p =
        sn::find_ground_state(o.tol, sn::RadialGrid{o.rmax, o.n});
    sn::write_profile(o.out, p);
    const sn::VirialReport vr = sn::virial_check(p);
    print_kv("E0", p.E0);
    print_kv("norm", p.norm);
    print_kv("r_max", p.grid.r_max);
    print_kv("n", std::to_string(p.grid.n));
    print_kv("psi0_peak", p.psi0[0]);
    print_kv("virial_kinetic_ratio", vr.kinetic_ratio);
    print_kv("virial_potential_ratio", vr.potential_ratio);
    print_kv("out", o.out);
    return 0;
}

// ---------------------------------------------------------- verify-symmetries

struct VerifyOpts {
    int points = 100;
    std::uint64_t seed = 1;
    std::string generator = "all";
    std::string break_term = "none";
    std::string out;
};

int cmd_verify(const VerifyOpts& o) {
    if (o.points <= 0) throw sn::ConfigError("--points must be positive");

    static const std::map<std::string, sn::GenKind> kinds = {
        {"X1", sn::GenKind::X1}, {"X2", sn::GenKind::X2}, {"X3", sn::GenKind::X3},
        {"X4", sn::GenKind::X4}, {"X5", sn::GenKind::X5}, {"X6", sn::GenKind::X6},
        {"X7", sn::GenKind::X7}, {"X8", sn::GenKind::X8}, {"X9", sn::GenKind::X9},
        {"X10", sn::GenKind::X10}};
    static const std::map<std::string, sn::BreakTerm> breaks = {
        {"none", sn::BreakTerm::None},
        {"x9-eta-w", sn::BreakTerm::X9DropEtaW},
        {"x10-phase", sn::BreakTerm::X10DropPhase},
        {"x10-eta-w", sn::BreakTerm::X10DropEtaW}};

    const auto bit = breaks.find(o.break_term);
    if (bit == breaks.end()) throw sn::ConfigError("unknown --break-term");

    std::vector<std::pair<std::string, sn::GenKind>> todo;
    if (o.generator == "all") {
        for (const auto& [name, k] : kinds) todo.emplace_back(name, k);
        std::sort(todo.begin(), todo.end(), [](const auto& a, const auto& b) {
            // X1..X10 in numeric order
            return std::stoi(a.first.substr(1)) < std::stoi(b.first.substr(1));
        });
    } else {
        const auto it = kinds.find(o.generator);
        if (it == kinds.end()) throw sn::ConfigError("unknown --generator");
        todo.emplace_back(it->first, it->second);
    }

    std::string csv = "generator,point_index,resH1,resH2,resH3\n";
    bool all_pass = true;
    double worst = 0.0;
    for (const auto& [name, kind] : todo) {
        sn::GeneratorSpec spec = sn::GeneratorSpec::basis(kind);
        if (bit->second != sn::BreakTerm::None) {
            // A break applies only to the family that carries the term.
            if ((bit->second == sn::BreakTerm::X9DropEtaW && kind == sn::GenKind::X9) ||
                (bit->second != sn::BreakTerm::X9DropEtaW && kind == sn::GenKind::X10))
                spec.broken = bit->second;
        }
        // Each family sees the same point stream for comparability.
        std::mt19937_64 rng(o.seed);
        for (int i = 0; i < o.points; ++i) {
            const sn::JetPoint p = sn::random_jet(rng);
            const auto res = sn::symmetry_residual(spec, p);
            const double scale = sn::jet_scale(p);
            csv += name;
            csv += ',';
            csv += std::to_string(i);
            for (const auto& r : res) {
                csv += ',';
                csv += sn::fmt17(std::abs(r));
            }
            csv += '\n';
            for (const auto& r : res) {
                worst = std::max(worst, std::abs(r) / scale);
                if (std::abs(r) > 1e-9 * scale) all_pass = false;
            }
        }
    }

    if (o.out.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        auto f = sn::open_out(o.out);
        f << csv;
        sn::write_kv(o.out + ".meta",
                     {{"points", std::to_string(o.points)},
                      {"seed", std::to_string(o.seed)},
                      {"generator", o.generator},
                      {"break_term", o.break_term}});
    }
    std::fprintf(stderr, "worst residual / scale = %.3e -> %s\n", worst,
                 all_pass ? "PASS" : "FAIL");
    return all_pass ? 0 : 1;
}

// ----------------------------------------------------------------- evolve

struct EvolveOpts {
    LabConfig cfg;
    std::string out = "diagnostics.csv";
    std::string snap_prefix = "snap";
    bool snap_phi = false;
};

std::string diag_csv(const std::vector<sn::DiagRow>& rows) {
    std::string csv = "t,norm,energy,cx,cy,cz,px,py,pz\n";
    for (const sn::DiagRow& r : rows) {
        csv += sn::fmt17(r.t);
        for (double v : {r.norm, r.energy, r.c.x, r.c.y, r.c.z, r.p.x, r.p.y, r.p.z}) {
            csv += ',';
            csv += sn::fmt17(v);
        }
        csv += '\n';
    }
    return csv;
}

int cmd_evolve(const EvolveOpts& o) {
    const LabConfig& cfg = o.cfg;
    const sn::Grid3 grid{cfg.grid_n, cfg.box_L};
    grid.validate();

    const sn::GroundStateProfile prof = obtain_profile(cfg);
    sn::LumpSystem sys{effective_lumps(cfg)};
    const auto policy = cfg.allow_truncated ? sn::PlacementPolicy::AllowTruncatedTail
                                            : sn::PlacementPolicy::Strict;
    sn::SuperposeResult sup = sn::superpose(sys, prof, 0.0, grid, policy);

    sn::EvolveConfig ec;
    ec.dt = cfg.dt;
    ec.steps = cfg.steps;
    ec.diag_every = cfg.diag_every;
    ec.mode = cfg.periodic ? sn::PoissonMode::PERIODIC_ZERO_MEAN
                           : sn::PoissonMode::FREE_SPACE;

    sn::SnapshotHook hook;
    if (cfg.snap_every > 0) {
        hook = [&](long step, double t, const sn::ComplexField3& psi,
                   const sn::RealField3& phi) {
            char tag[32];
            std::snprintf(tag, sizeof tag, "_%06ld", step);
            sn::write_snapshot(o.snap_prefix + tag + ".snf", psi, t);
            if (o.snap_phi)
                sn::write_snapshot(o.snap_prefix + tag + "_phi.snf", phi, t);
        };
    }

    const sn::EvolveResult res =
        sn::evolve(sup.fields.psi, ec, 0.0, hook, cfg.snap_every);

    auto f = sn::open_out(o.out);
    f << diag_csv(res.diag);
    f.close();

    std::map<std::string, std::string> meta = {
        {"grid_n", std::to_string(cfg.grid_n)},
        {"box_L", sn::fmt17(cfg.box_L)},
        {"dt", sn::fmt17(cfg.dt)},
        {"steps", std::to_string(cfg.steps)},
        {"diag_every", std::to_string(cfg.diag_every)},
        {"poisson", cfg.periodic ? "periodic-zero-mean" : "free-space"},
        {"placement", cfg.allow_truncated ? "allow-truncated-tail" : "strict"},
        {"profile_E0", sn::fmt17(prof.E0)},
        {"lump_count", std::to_string(sys.lumps.size())},
        {"overlap_bound", sn::fmt17(sup.overlap_bound)},
        {"boundary_warnings", std::to_string(res.boundary_warnings)},
    };
    sn::write_kv(o.out + ".meta", meta);

    const sn::DiagRow& first = res.diag.front();
    const sn::DiagRow& last = res.diag.back();
    print_kv("rows", std::to_string(res.diag.size()));
    print_kv("norm_initial", first.norm);
    print_kv("norm_drift_rel", std::fabs(last.norm - first.norm) / first.norm);
    print_kv("energy_initial", first.energy);
    print_kv("energy_drift_rel",
             std::fabs(last.energy - first.energy) / std::fabs(first.energy));
    if (last.t > first.t) {
        print_kv("centroid_velocity_x", (last.c.x - first.c.x) / (last.t - first.t));
        print_kv("centroid_velocity_y", (last.c.y - first.c.y) / (last.t - first.t));
        print_kv("centroid_velocity_z", (last.c.z - first.c.z) / (last.t - first.t));
    }
    print_kv("boundary_warnings", std::to_string(res.boundary_warnings));
    print_kv("out", o.out);
    return 0;
}

// ------------------------------------------------------------------ nbody

struct NBodyOpts {
    LabConfig cfg;
    std::string out = "trajectory.csv";
    long every = 1;
    std::string preset;
    double separation = 1.0;
    bool dt_given = false; // --dt on the subcommand overrides preset-derived dt
};

std::string nbody_header(std::size_t nbodies) {
    std::string h = "t";
    for (std::size_t i = 0; i < nbodies; ++i) {
        const std::string b = std::to_string(i);
        for (const char* c : {"a", "v"})
            for (const char* ax : {"x", "y", "z"})
                h += "," + std::string(c) + b + "_" + ax;
    }
    return h + ",energy\n";
}

void nbody_row(std::string& csv, const sn::NBodyState& s) {
    csv += sn::fmt17(s.t);
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (int ax = 0; ax < 3; ++ax) {
            csv += ',';
            csv += sn::fmt17(s.a[i][ax]);
        }
        for (int ax = 0; ax < 3; ++ax) {
            csv += ',';
            csv += sn::fmt17(s.v[i][ax]);
        }
    }
    csv += ',';
    csv += sn::fmt17(sn::nbody_energy(s));
    csv += '\n';
}

int cmd_nbody(NBodyOpts o) {
    LabConfig& cfg = o.cfg;
    sn::NBodyState state;
    if (o.preset == "circular-orbit") {
        // Two equal masses on a circular orbit in the x-y plane.
        const double r = o.separation;
        const double vrel = std::sqrt(cfg.kappa * 1.0 / r);
        state.m = {0.5, 0.5};
        state.a = {{+0.5 * r, 0.0, 0.0}, {-0.5 * r, 0.0, 0.0}};
        state.v = {{0.0, +0.5 * vrel, 0.0}, {0.0, -0.5 * vrel, 0.0}};
        // The preset derives its own time step from the orbit period (the
        // global dt default is a field-evolution scale); an explicit --dt
        // still wins.
        const double T = 2.0 * std::numbers::pi * std::sqrt(r * r * r / cfg.kappa);
        if (!o.dt_given) cfg.dt = T / 2000.0;
        if (cfg.steps == 0) cfg.steps = 20000; // ten periods
    } else if (!o.preset.empty()) {
        throw sn::ConfigError("unknown preset (available: circular-orbit)");
    } else {
        for (const sn::LumpSpec& s : effective_lumps(cfg)) {
            state.m.push_back(s.m);
            state.a.push_back(s.a);
            state.v.push_back(s.v);
        }
    }
    state.validate();
    if (cfg.steps <= 0) throw sn::ConfigError("nbody needs steps > 0");
    if (o.every <= 0) o.every = 1;

    std::string csv = nbody_header(state.size());
    nbody_row(csv, state);
    const double e0 = sn::nbody_energy(state);
    double max_drift = 0.0;
    std::vector<double> ts, ys;
    ts.push_back(state.t);
    ys.push_back(state.a[0].y);
    for (long step = 1; step <= cfg.steps; ++step) {
        state = sn::leapfrog_step(std::move(state), cfg.dt, cfg.kappa);
        if (step % o.every == 0 || step == cfg.steps) nbody_row(csv, state);
        max_drift = std::max(max_drift,
                             std::fabs(sn::nbody_energy(state) - e0) / std::fabs(e0));
        ts.push_back(state.t);
        ys.push_back(state.a[0].y);
    }

    auto f = sn::open_out(o.out);
    f << csv;
    f.close();
    sn::write_kv(o.out + ".meta",
                 {{"dt", sn::fmt17(cfg.dt)},
                  {"steps", std::to_string(cfg.steps)},
                  {"kappa", sn::fmt17(cfg.kappa)},
                  {"bodies", std::to_string(state.size())},
                  {"preset", o.preset.empty() ? "none" : o.preset}});

    print_kv("energy_initial", e0);
    print_kv("energy_drift_rel_max", max_drift);
    if (o.preset == "circular-orbit") {
        // Period from upward zero crossings of body 0's y coordinate.
        std::vector<double> crossings;
        for (std::size_t k = 1; k < ys.size(); ++k)
            if (ys[k - 1] < 0.0 && ys[k] >= 0.0)
                crossings.push_back(ts[k - 1] + (ts[k] - ts[k - 1]) * (-ys[k - 1]) /
                                                    (ys[k] - ys[k - 1]));
        if (crossings.size() >= 2) {
            const double period = (crossings.back() - crossings.front()) /
                                  static_cast<double>(crossings.size() - 1);
            const double expected =
                2.0 * std::numbers::pi *
                std::sqrt(o.separation * o.separation * o.separation / cfg.kappa);
            print_kv("period_measured", period);
            print_kv("period_expected", expected);
            print_kv("period_rel_err", std::fabs(period - expected) / expected);
        }
    }
    print_kv("out", o.out);
    return 0;
}

// ----------------------------------------------------------------- compare

struct CompareOpts {
    LabConfig cfg;
    std::string out = "compare.csv";
    double fit_window = 8000.0;
};

// Separation of a symmetric two-lump state along x, measured as the
// distance between the centroids of the two half boxes.
double separation_x(const sn::ComplexField3& psi) {
    const sn::Grid3& g = psi.grid;
    double wl = 0.0, wr = 0.0, xl = 0.0, xr = 0.0;
    for (int iz = 0; iz < g.n; ++iz)
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix) {
                const double x = g.coord(ix);
                const double a = std::norm(psi.at(ix, iy, iz));
                if (x < 0.0) {
                    wl += a;
                    xl += a * x;
                } else {
                    wr += a;
                    xr += a * x;
                }
            }
    if (wl == 0.0 || wr == 0.0) throw sn::RuntimeError("empty half box");
    return xr / wr - xl / wl;
}

int cmd_compare(CompareOpts o) {
    LabConfig& cfg = o.cfg;
    if (cfg.lumps.empty()) {
        // Default arbiter geometry: two half-mass lumps 1000 apart, at rest.
        cfg.lumps = {{0.5, {-500.0, 0.0, 0.0}, {0.0, 0.0, 0.0}},
                     {0.5, {+500.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}};
        cfg.grid_n = std::max(cfg.grid_n, 64);
        cfg.box_L = 2400.0;
        cfg.dt = 25.0;
        cfg.steps = 2200;
        cfg.allow_truncated = true; // half-mass tails always clip at this box
    }
    if (cfg.lumps.size() != 2) throw sn::ConfigError("compare needs exactly two lumps");
    if (cfg.steps <= 0) throw sn::ConfigError("compare needs steps > 0");

    const sn::Grid3 grid{cfg.grid_n, cfg.box_L};
    grid.validate();
    const sn::GroundStateProfile prof = obtain_profile(cfg);
    sn::LumpSystem sys{cfg.lumps};
    const auto policy = cfg.allow_truncated ? sn::PlacementPolicy::AllowTruncatedTail
                                            : sn::PlacementPolicy::Strict;
    sn::SuperposeResult sup = sn::superpose(sys, prof, 0.0, grid, policy);

    const long cadence = std::max<long>(1, cfg.diag_every);
    std::vector<double> ts, sep_pde;
    sn::SnapshotHook hook = [&](long, double t, const sn::ComplexField3& psi,
                                const sn::RealField3&) {
        ts.push_back(t);
        sep_pde.push_back(separation_x(psi));
    };

    sn::EvolveConfig ec;
    ec.dt = cfg.dt;
    ec.steps = cfg.steps;
    ec.diag_every = 0; // separation is sampled via the hook
    ec.mode = cfg.periodic ? sn::PoissonMode::PERIODIC_ZERO_MEAN
                           : sn::PoissonMode::FREE_SPACE;
    sn::evolve(sup.fields.psi, ec, 0.0, hook, cadence);

    // Matched trajectory-model runs: the working coupling and the halved
    // alternative the field run is meant to arbitrate.
    auto run_nbody = [&](double kappa) {
        sn::NBodyState s;
        for (const sn::LumpSpec& l : cfg.lumps) {
            s.m.push_back(l.m);
            s.a.push_back(l.a);
            s.v.push_back(l.v);
        }
        std::vector<double> sep;
        std::size_t next = 0;
        for (long step = 0; step <= cfg.steps; ++step) {
            if (next < ts.size() && std::fabs(step * cfg.dt - ts[next]) < 0.5 * cfg.dt) {
                sep.push_back(norm(s.a[1] - s.a[0]));
                ++next;
            }
            if (step < cfg.steps) s = sn::leapfrog_step(std::move(s), cfg.dt, kappa);
        }
        return sep;
    };
    const std::vector<double> sep_nb = run_nbody(cfg.kappa);
    const std::vector<double> sep_nb_alt = run_nbody(0.5 * cfg.kappa);

    std::string csv = "t,sep_pde,sep_nbody,sep_nbody_half\n";
    for (std::size_t k = 0; k < ts.size(); ++k) {
        csv += sn::fmt17(ts[k]);
        for (double v : {sep_pde[k], sep_nb[k], sep_nb_alt[k]}) {
            csv += ',';
            csv += sn::fmt17(v);
        }
        csv += '\n';
    }
    auto f = sn::open_out(o.out);
    f << csv;
    f.close();

    // Early-window fit sep(t) = A + B t^2: the intercept absorbs the small
    // tail-overlap bias of the half-box centroid at t = 0, and the curvature
    // is the mutual acceleration, B = -kappa M / (2 d0^2).
    const double d0 = sep_pde.front();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t used = 0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (ts[k] > o.fit_window) break;
        const double x = ts[k] * ts[k];
        sx += x;
        sy += sep_pde[k];
        sxx += x * x;
        sxy += x * sep_pde[k];
        ++used;
    }
    if (used < 3) throw sn::ConfigError("fit window contains too few samples");
    const double nn = static_cast<double>(used);
    const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    double mass_total = 0.0;
    for (const sn::LumpSpec& l : cfg.lumps) mass_total += l.m;
    const double kappa_meas = -2.0 * slope * d0 * d0 / mass_total;

    auto mismatch = [&](const std::vector<double>& ref) {
        double m = 0.0;
        for (std::size_t k = 0; k < sep_pde.size(); ++k)
            m = std::max(m, std::fabs(sep_pde[k] - ref[k]));
        return m;
    };
    const double infall = d0 - *std::min_element(sep_pde.begin(), sep_pde.end());

    sn::write_kv(o.out + ".meta",
                 {{"grid_n", std::to_string(cfg.grid_n)},
                  {"box_L", sn::fmt17(cfg.box_L)},
                  {"dt", sn::fmt17(cfg.dt)},
                  {"steps", std::to_string(cfg.steps)},
                  {"kappa", sn::fmt17(cfg.kappa)},
                  {"fit_window", sn::fmt17(o.fit_window)},
                  {"placement", cfg.allow_truncated ? "allow-truncated-tail" : "strict"}});

    print_kv("d0", d0);
    print_kv("infall", infall);
    print_kv("kappa_measured", kappa_meas);
    print_kv("kappa_measured_x2pi", kappa_meas * 2.0 * std::numbers::pi);
    print_kv("kappa_measured_x4pi", kappa_meas * 4.0 * std::numbers::pi);
    if (infall > 0.0) {
        print_kv("traj_mismatch_frac", mismatch(sep_nb) / infall);
        print_kv("traj_mismatch_half_frac", mismatch(sep_nb_alt) / infall);
    }
    print_kv("out", o.out);
    return 0;
}

// -------------------------------------------------------------------- diag

struct DiagOpts {
    std::string snapshot;
    std::string phi_file;
    bool periodic = false;
};

int cmd_diag(const DiagOpts& o) {
    sn::SnapshotData sd = sn::read_snapshot(o.snapshot);
    const auto* psi = std::get_if<sn::ComplexField3>(&sd.field);
    if (!psi) throw sn::ConfigError("diag expects a complex (matter) snapshot");

    sn::RealField3 phi(psi->grid);
    if (!o.phi_file.empty()) {
        sn::SnapshotData pd = sn::read_snapshot(o.phi_file);
        const auto* ph = std::get_if<sn::RealField3>(&pd.field);
        if (!ph) throw sn::ConfigError("--phi must name a real (potential) snapshot");
        if (!(ph->grid == psi->grid))
            throw sn::ConfigError("snapshot and potential grids differ");
        phi = *ph;
    } else {
        phi = sn::potential_of(*psi, o.periodic ? sn::PoissonMode::PERIODIC_ZERO_MEAN
                                                : sn::PoissonMode::FREE_SPACE);
    }

    const sn::EnergyReport er = sn::energy(*psi, phi);
    const sn::Vec3 c = sn::centroid(*psi);
    const sn::Vec3 p = sn::momentum(*psi);

    double peak = 0.0, wall = 0.0;
    const int n = psi->grid.n;
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                const double a = std::abs(psi->at(ix, iy, iz));
                peak = std::max(peak, a);
                if (ix == 0 || iy == 0 || iz == 0 || ix == n - 1 || iy == n - 1 ||
                    iz == n - 1)
                    wall = std::max(wall, a);
            }

    print_kv("n", std::to_string(psi->grid.n));
    print_kv("L", psi->grid.L);
    print_kv("t", sd.t);
    print_kv("norm", er.norm);
    print_kv("kinetic", er.kinetic);
    print_kv("potential", er.potential);
    print_kv("energy", er.total);
    print_kv("cx", c.x);
    print_kv("cy", c.y);
    print_kv("cz", c.z);
    print_kv("px", p.x);
    print_kv("py", p.y);
    print_kv("pz", p.z);
    print_kv("wall_over_peak", peak > 0.0 ? wall / peak : 0.0);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale laboratory for self-gravitating matter waves"};
    app.require_subcommand(1);
    int rc = 0;

    LabConfig base;
    try {
        base = load_config(prescan_config(argc, argv));
    } catch (const sn::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    std::string config_path; // consumed by prescan; registered so CLI11 accepts it

    GroundStateOpts gso;
    auto* gs = app.add_subcommand("ground-state",
                                  "solve the radial bound state, write profile CSV");
    gs->add_option("--rmax", gso.rmax, "radial extent of the shooting grid");
    gs->add_option("--n", gso.n, "radial node count");
    gs->add_option("--tol", gso.tol, "bisection width tolerance on V(0)");
    gs->add_option("--out", gso.out, "output profile path");
    gs->callback([&]() { rc = cmd_ground_state(gso); });

    VerifyOpts vo;
    auto* vs = app.add_subcommand("verify-symmetries",
                                  "residuals of the invariance conditions at random jets");
    vs->add_option("--points", vo.points, "jet points per generator");
    vs->add_option("--seed", vo.seed, "random seed");
    vs->add_option("--generator", vo.generator, "X1..X10 or all");
    vs->add_option("--break-term", vo.break_term,
                   "none|x9-eta-w|x10-phase|x10-eta-w (negative controls)");
    vs->add_option("--out", vo.out, "CSV path (default: stdout)");
    vs->callback([&]() { rc = cmd_verify(vo); });

    EvolveOpts eo;
    eo.cfg = base;
    auto* ev = app.add_subcommand("evolve", "time-step a lump configuration");
    ev->add_option("--config", config_path, "JSON config file");
    ev->add_option("--grid", eo.cfg.grid_n, "grid points per axis (power of two)");
    ev->add_option("--box", eo.cfg.box_L, "box side length");
    ev->add_option("--dt", eo.cfg.dt, "time step");
    ev->add_option("--steps", eo.cfg.steps, "number of steps");
    ev->add_option("--diag-every", eo.cfg.diag_every, "diagnostics cadence");
    ev->add_option("--snap-every", eo.cfg.snap_every, "snapshot cadence (0 = off)");
    ev->add_option("--snap-prefix", eo.snap_prefix, "snapshot file prefix");
    ev->add_flag("--snap-phi", eo.snap_phi, "also write potential snapshots");
    ev->add_option("--profile", eo.cfg.profile_file, "load profile instead of solving");
    ev->add_flag("--allow-truncated-tail", eo.cfg.allow_truncated,
                 "accept wall truncation of lump tails");
    ev->add_flag("--periodic", eo.cfg.periodic,
                 "periodic zero-mean potential (cross-checks only)");
    ev->add_option("--out", eo.out, "diagnostics CSV path");
    ev->callback([&]() { rc = cmd_evolve(eo); });

    NBodyOpts no;
    no.cfg = base;
    auto* nb = app.add_subcommand("nbody", "integrate the point-lump trajectory model");
    nb->add_option("--config", config_path, "JSON config file");
    nb->add_option("--dt", no.cfg.dt, "time step")
        ->each([&no](const std::string&) { no.dt_given = true; });
    nb->add_option("--steps", no.cfg.steps, "number of steps");
    nb->add_option("--kappa", no.cfg.kappa, "coupling constant");
    nb->add_option("--every", no.every, "trajectory row cadence");
    nb->add_option("--preset", no.preset, "circular-orbit");
    nb->add_option("--separation", no.separation, "preset orbit separation");
    nb->add_option("--out", no.out, "trajectory CSV path");
    nb->callback([&]() { rc = cmd_nbody(no); });

    CompareOpts co;
    co.cfg = base;
    auto* cp = app.add_subcommand(
        "compare", "two-lump field run against the trajectory model");
    cp->add_option("--config", config_path, "JSON config file");
    cp->add_option("--grid", co.cfg.grid_n, "grid points per axis");
    cp->add_option("--box", co.cfg.box_L, "box side length");
    cp->add_option("--dt", co.cfg.dt, "time step");
    cp->add_option("--steps", co.cfg.steps, "number of steps");
    cp->add_option("--diag-every", co.cfg.diag_every, "separation sample cadence");
    cp->add_option("--kappa", co.cfg.kappa, "trajectory-model coupling");
    cp->add_option("--fit-window", co.fit_window, "early-time fit window");
    cp->add_option("--profile", co.cfg.profile_file, "load profile instead of solving");
    cp->add_option("--out", co.out, "comparison CSV path");
    cp->callback([&]() { rc = cmd_compare(co); });

    DiagOpts dg;
    auto* di = app.add_subcommand("diag", "measurements of a stored snapshot");
    di->add_option("--snapshot", dg.snapshot, "matter snapshot (SNF1)")->required();
    di->add_option("--phi", dg.phi_file, "potential snapshot (SNF1)");
    di->add_flag("--periodic", dg.periodic, "periodic potential when recomputing");
    di->callback([&]() { rc = cmd_diag(dg); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const sn::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return rc;
}
