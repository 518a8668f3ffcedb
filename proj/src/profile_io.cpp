#include "sn/profile_io.hpp"

#include <sstream>

#include "sn/errors.hpp"
#include "sn/io_util.hpp"

namespace sn {

void write_kv(const std::string& path, const std::map<std::string, std::string>& kv) {
    auto f = open_out(path);
    for (const auto& [k, v] : kv) f << k << "=" << v << "\n";
}

std::map<std::string, std::string> read_kv(const std::string& path) {
    auto f = open_in(path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw RuntimeError("malformed key=value line in " + path);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

void write_profile(const std::string& path, const GroundStateProfile& p) {
    auto f = open_out(path);
    f << "r,psi0,phi0\n";
    for (int k = 0; k < p.grid.n; ++k)
        f << fmt17(p.grid.r(k)) << "," << fmt17(p.psi0[k]) << "," << fmt17(p.phi0[k]) << "\n";
    write_kv(path + ".meta", {
        {"E0", fmt17(p.E0)},
        {"norm", fmt17(p.norm)},
        {"n", std::to_string(p.grid.n)},
        {"r_max", fmt17(p.grid.r_max)},
    });
}

GroundStateProfile read_profile(const std::string& path) {
    const auto kv = read_kv(path + ".meta");
    GroundStateProfile p;
    try {
        p.E0 = std::stod(kv.at("E0"));
        p.norm = std::stod(kv.at("norm"));
        p.grid.n = std::stoi(kv.at("n"));
        p.grid.r_max = std::stod(kv.at("r_max"));
    } catch (const std::out_of_range&) {
        throw RuntimeError("profile sidecar missing a required key: " + path + ".meta");
    }

    auto f = open_in(path);
    std::string line;
    if (!std::getline(f, line) || line != "r,psi0,phi0")
        throw RuntimeError("profile CSV missing r,psi0,phi0 header: " + path);
    p.psi0.reserve(p.grid.n);
    p.phi0.reserve(p.grid.n);
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string r, a, b;
        if (!std::getline(ss, r, ',') || !std::getline(ss, a, ',') || !std::getline(ss, b))
            throw RuntimeError("malformed profile CSV row: " + path);
        p.psi0.push_back(std::stod(a));
        p.phi0.push_back(std::stod(b));
    }
    if (static_cast<int>(p.psi0.size()) != p.grid.n)
        throw RuntimeError("profile CSV row count does not match sidecar n: " + path);
    return p;
}

} // namespace sn
