#pragma once

// Deterministic number formatting and atomic file emission.

#include "error.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace quadcorr::io {

/// 17 significant digits in scientific notation.
inline std::string format_real(double x) {
    if (x == 0) x = 0; // fold -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

/// Writes `bytes` to `path` through a sibling temporary file and rename(2).
inline void atomic_write(const std::filesystem::path& path, const std::string& bytes) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw configuration_error("cannot open " + tmp.string() + " for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw configuration_error("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw configuration_error("cannot rename into " + path.string());
    }
}

/// Binary P5 graymap, maxval 65535, samples big-endian, row-major.
/// Samples are scaled linearly from [min, max]; a flat field maps to 0.
inline std::string encode_pgm16(const std::vector<double>& values, int width, int height) {
    if (width <= 0 || height <= 0 || values.size() != static_cast<std::size_t>(width) * height)
        throw configuration_error("encode_pgm16: size mismatch");
    double lo = values.front(), hi = values.front();
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n65535\n";
    out.reserve(out.size() + 2 * values.size());
    for (double v : values) {
        std::uint16_t s = 0;
        if (hi > lo) s = static_cast<std::uint16_t>(std::lround(65535.0 * (v - lo) / (hi - lo)));
        out.push_back(static_cast<char>(s >> 8));
        out.push_back(static_cast<char>(s & 0xff));
    }
    return out;
}

} // namespace quadcorr::io
