#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "mmnn/errors.hpp"
#include "mmnn/noise.hpp"
#include "mmnn/preprocess.hpp"
#include "mmnn/recognizer.hpp"

namespace mmnn {

// Trained model plus the configuration that produced it, as persisted.
struct Model {
    DriftArray array;
    PreprocessConfig prep;
    NoiseConfig noise;
};

inline constexpr const char* kModelMagic = "MMNW";
inline constexpr int kModelVersion = 1;

namespace detail {

// 17 significant digits round-trip an IEEE double exactly.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& s, const std::string& path, const char* what) {
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw FormatError(path + ": malformed " + what + " value '" + s + "'");
    }
    return v;
}

inline std::string expect_field(std::istream& in, const std::string& path, const char* key) {
    std::string name, value;
    if (!(in >> name >> value)) throw FormatError(path + ": missing field " + key);
    if (name != key) {
        throw FormatError(path + ": expected field " + key + ", found " + name);
    }
    return value;
}

}  // namespace detail

// Text layout: magic + version line, one "key value" line per parameter,
// then one memristance per line in class-major, row-major order.
inline void save_model(const Model& model, const std::string& path) {
    std::ostringstream body;
    body << kModelMagic << ' ' << kModelVersion << '\n';
    body << "r_on " << detail::format_double(model.array.params.r_on) << '\n';
    body << "r_off " << detail::format_double(model.array.params.r_off) << '\n';
    body << "k2 " << detail::format_double(model.array.params.k2) << '\n';
    body << "window_factor " << detail::format_double(model.array.params.window_factor) << '\n';
    body << "edge_threshold " << detail::format_double(model.prep.edge_threshold_mv) << '\n';
    body << "noise_seed " << model.noise.seed << '\n';
    body << "noise_sigma " << detail::format_double(model.noise.sigma) << '\n';
    body << "rows " << kMapRows << '\n';
    body << "cols " << kMapCols << '\n';
    body << "classes " << kNumClasses << '\n';
    for (double m : model.array.memristances) {
        body << detail::format_double(m) << '\n';
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << body.str();
    out.flush();
    if (!out) throw IoError(path + ": write failed");
}

inline Model load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open");
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version)) throw FormatError(path + ": missing header");
    if (magic != kModelMagic) throw FormatError(path + ": bad magic '" + magic + "'");
    if (version != kModelVersion) {
        throw FormatError(path + ": unsupported model version " + std::to_string(version) +
                          " (expected " + std::to_string(kModelVersion) + ")");
    }

    Model model;
    model.array.params.r_on = detail::parse_double(detail::expect_field(in, path, "r_on"), path, "r_on");
    model.array.params.r_off =
        detail::parse_double(detail::expect_field(in, path, "r_off"), path, "r_off");
    model.array.params.k2 = detail::parse_double(detail::expect_field(in, path, "k2"), path, "k2");
    model.array.params.window_factor = detail::parse_double(
        detail::expect_field(in, path, "window_factor"), path, "window_factor");
    model.prep.edge_threshold_mv = detail::parse_double(
        detail::expect_field(in, path, "edge_threshold"), path, "edge_threshold");
    {
        std::string seed = detail::expect_field(in, path, "noise_seed");
        char* end = nullptr;
        model.noise.seed = std::strtoull(seed.c_str(), &end, 10);
        if (end == seed.c_str() || *end != '\0') {
            throw FormatError(path + ": malformed noise_seed '" + seed + "'");
        }
    }
    model.noise.sigma = detail::parse_double(detail::expect_field(in, path, "noise_sigma"), path,
                                             "noise_sigma");
    int rows = static_cast<int>(
        detail::parse_double(detail::expect_field(in, path, "rows"), path, "rows"));
    int cols = static_cast<int>(
        detail::parse_double(detail::expect_field(in, path, "cols"), path, "cols"));
    int classes = static_cast<int>(
        detail::parse_double(detail::expect_field(in, path, "classes"), path, "classes"));
    if (rows != kMapRows || cols != kMapCols || classes != kNumClasses) {
        throw FormatError(path + ": unexpected grid geometry " + std::to_string(classes) + "x" +
                          std::to_string(rows) + "x" + std::to_string(cols));
    }

    model.array.params.validate();
    const std::size_t expected = static_cast<std::size_t>(classes) * rows * cols;
    model.array.memristances.reserve(expected);
    std::string line;
    std::getline(in, line);  // consume end of header line
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (model.array.memristances.size() == expected) {
            throw FormatError(path + ": more memristance lines than header declares");
        }
        double m = detail::parse_double(line, path, "memristance");
        if (m < model.array.params.r_on || m > model.array.params.r_off) {
            throw ValidationError(path + ": memristance " + line + " outside [r_on, r_off]");
        }
        model.array.memristances.push_back(m);
    }
    if (model.array.memristances.size() != expected) {
        throw FormatError(path + ": expected " + std::to_string(expected) +
                          " memristance lines, found " +
                          std::to_string(model.array.memristances.size()));
    }
    model.array.a_max = (model.array.params.r_off - model.array.params.r_on) /
                        (model.array.params.k2 * model.array.params.window_factor);
    return model;
}

}  // namespace mmnn
