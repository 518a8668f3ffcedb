#pragma once

#include <string>
#include <variant>

#include "sn/field.hpp"

namespace sn {

// Binary snapshot format "SNF1", little-endian:
//   32-byte header: magic "SNF1" | u32 n | f64 L | f64 t | u32 kind | 4 pad bytes
//   kind 0 = complex (n^3 re,im f64 pairs), kind 1 = real (n^3 f64)
//   data row-major with x fastest: index = ix + n*(iy + n*iz)
void write_snapshot(const std::string& path, const ComplexField3& f, double t);
void write_snapshot(const std::string& path, const RealField3& f, double t);

struct SnapshotData {
    std::variant<ComplexField3, RealField3> field;
    double t = 0.0;
};

SnapshotData read_snapshot(const std::string& path);

} // namespace sn
