#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include "sn/errors.hpp"

namespace sn {

// 17 significant digits: the shortest fixed precision that round-trips an
// IEEE double exactly, so CSV bodies are bit-stable across runs.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary); // binary: LF line endings everywhere
    if (!f) throw RuntimeError("cannot open for writing: " + path);
    return f;
}

inline std::ifstream open_in(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw RuntimeError("cannot open for reading: " + path);
    return f;
}

// Flat key=value sidecar files used for all run metadata.
void write_kv(const std::string& path, const std::map<std::string, std::string>& kv);
std::map<std::string, std::string> read_kv(const std::string& path);

} // namespace sn
