#include "sn/snapshot_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>

#include "sn/errors.hpp"
#include "sn/io_util.hpp"

static_assert(std::endian::native == std::endian::little,
              "SNF1 snapshots are little-endian; big-endian hosts are not supported");

namespace sn {

namespace {

constexpr std::uint32_t kKindComplex = 0;
constexpr std::uint32_t kKindReal = 1;

struct Header {
    char magic[4];
    std::uint32_t n;
    double L;
    double t;
    std::uint32_t kind;
    std::uint32_t pad;
};
static_assert(sizeof(Header) == 32);

void write_header(std::ofstream& f, const Grid3& g, double t, std::uint32_t kind) {
    Header h{};
    std::memcpy(h.magic, "SNF1", 4);
    h.n = static_cast<std::uint32_t>(g.n);
    h.L = g.L;
    h.t = t;
    h.kind = kind;
    h.pad = 0;
    f.write(reinterpret_cast<const char*>(&h), sizeof h);
}

Header read_header(std::ifstream& f, const std::string& path) {
    Header h{};
    f.read(reinterpret_cast<char*>(&h), sizeof h);
    if (!f || std::memcmp(h.magic, "SNF1", 4) != 0)
        throw RuntimeError("not an SNF1 snapshot: " + path);
    if (h.kind != kKindComplex && h.kind != kKindReal)
        throw RuntimeError("SNF1 snapshot with unknown kind field: " + path);
    return h;
}

} // namespace

void write_snapshot(const std::string& path, const ComplexField3& fld, double t) {
    auto f = open_out(path);
    write_header(f, fld.grid, t, kKindComplex);
    f.write(reinterpret_cast<const char*>(fld.v.data()),
            static_cast<std::streamsize>(fld.v.size() * sizeof(cdouble)));
    if (!f) throw RuntimeError("short write: " + path);
}

void write_snapshot(const std::string& path, const RealField3& fld, double t) {
    auto f = open_out(path);
    write_header(f, fld.grid, t, kKindReal);
    f.write(reinterpret_cast<const char*>(fld.v.data()),
            static_cast<std::streamsize>(fld.v.size() * sizeof(double)));
    if (!f) throw RuntimeError("short write: " + path);
}

SnapshotData read_snapshot(const std::string& path) {
    auto f = open_in(path);
    const Header h = read_header(f, path);
    Grid3 g{static_cast<int>(h.n), h.L};
    g.validate();
    SnapshotData out;
    out.t = h.t;
    if (h.kind == kKindComplex) {
        ComplexField3 fld(g);
        f.read(reinterpret_cast<char*>(fld.v.data()),
               static_cast<std::streamsize>(fld.v.size() * sizeof(cdouble)));
        if (!f) throw RuntimeError("short read: " + path);
        out.field = std::move(fld);
    } else {
        RealField3 fld(g);
        f.read(reinterpret_cast<char*>(fld.v.data()),
               static_cast<std::streamsize>(fld.v.size() * sizeof(double)));
        if (!f) throw RuntimeError("short read: " + path);
        out.field = std::move(fld);
    }
    return out;
}

} // namespace sn
