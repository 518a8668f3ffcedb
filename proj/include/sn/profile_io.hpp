#pragma once

#include <string>

#include "sn/radial.hpp"

namespace sn {

// Writes `<path>` as CSV with header r,psi0,phi0 (17 significant digits, LF)
// and `<path>.meta` as a key=value sidecar holding E0, norm, n, r_max.
void write_profile(const std::string& path, const GroundStateProfile& p);

// Reads the pair written by write_profile; values round-trip bit-exactly.
GroundStateProfile read_profile(const std::string& path);

} // namespace sn
