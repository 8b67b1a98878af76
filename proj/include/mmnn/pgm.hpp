#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include "mmnn/errors.hpp"
#include "mmnn/grid.hpp"

namespace mmnn {

// Plain-text PGM (P2) writer.
inline void save_pgm(const std::string& path, const Image& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << "P2\n" << image.cols() << ' ' << image.rows() << "\n255\n";
    for (int r = 0; r < image.rows(); ++r) {
        for (int c = 0; c < image.cols(); ++c) {
            out << static_cast<int>(image(r, c)) << (c + 1 == image.cols() ? '\n' : ' ');
        }
    }
    out.flush();
    if (!out) throw IoError(path + ": write failed");
}

// Accepts P2 (ASCII) and P5 (binary), maxval up to 255, '#' comments.
inline Image load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open");

    auto next_token = [&]() -> std::string {
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return tok;
        }
        throw TruncationError(path + ": truncated PGM header");
    };

    std::string magic = next_token();
    if (magic != "P2" && magic != "P5") {
        throw FormatError(path + ": not a PGM file (magic '" + magic + "')");
    }
    int cols = std::stoi(next_token());
    int rows = std::stoi(next_token());
    int maxval = std::stoi(next_token());
    if (cols <= 0 || rows <= 0 || maxval <= 0 || maxval > 255) {
        throw FormatError(path + ": unsupported PGM geometry or maxval");
    }

    Image img(rows, cols);
    if (magic == "P2") {
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                int v;
                if (!(in >> v)) throw TruncationError(path + ": truncated PGM payload");
                if (v < 0 || v > maxval) throw FormatError(path + ": pixel outside [0, maxval]");
                img(r, c) = static_cast<std::uint8_t>(v);
            }
        }
    } else {
        in.get();  // single whitespace after maxval
        if (!in.read(reinterpret_cast<char*>(img.data().data()),
                     static_cast<std::streamsize>(img.size()))) {
            throw TruncationError(path + ": truncated PGM payload");
        }
    }
    return img;
}

}  // namespace mmnn
