#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "mmnn/errors.hpp"
#include "mmnn/grid.hpp"

namespace mmnn {

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

namespace detail {

inline std::uint32_t read_be32(std::istream& in, const std::string& path, const char* what) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) {
        throw TruncationError(path + ": truncated while reading " + what);
    }
    return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
           (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
}

inline void write_be32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v >> 24), static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

}  // namespace detail

// IDX image container: big-endian magic 0x00000803, count, rows, cols,
// then row-major u8 pixels. Only 28x28 frames are accepted.
inline std::vector<Image> load_idx_images(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open");
    std::uint32_t magic = detail::read_be32(in, path, "magic");
    if (magic != kIdxImageMagic) {
        throw FormatError(path + ": bad image magic " + std::to_string(magic));
    }
    std::uint32_t count = detail::read_be32(in, path, "count");
    std::uint32_t rows = detail::read_be32(in, path, "rows");
    std::uint32_t cols = detail::read_be32(in, path, "cols");
    if (rows != 28 || cols != 28) {
        throw FormatError(path + ": expected 28x28 frames, got " + std::to_string(rows) + "x" +
                          std::to_string(cols));
    }
    std::vector<Image> images;
    images.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        Image img(28, 28);
        if (!in.read(reinterpret_cast<char*>(img.data().data()),
                     static_cast<std::streamsize>(img.size()))) {
            throw TruncationError(path + ": truncated at image " + std::to_string(i));
        }
        images.push_back(std::move(img));
    }
    return images;
}

// IDX label container: big-endian magic 0x00000801, count, then u8 labels.
inline std::vector<std::uint8_t> load_idx_labels(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path + ": cannot open");
    std::uint32_t magic = detail::read_be32(in, path, "magic");
    if (magic != kIdxLabelMagic) {
        throw FormatError(path + ": bad label magic " + std::to_string(magic));
    }
    std::uint32_t count = detail::read_be32(in, path, "count");
    std::vector<std::uint8_t> labels(count);
    if (count > 0 &&
        !in.read(reinterpret_cast<char*>(labels.data()), static_cast<std::streamsize>(count))) {
        throw TruncationError(path + ": truncated label payload");
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] > 9) {
            throw FormatError(path + ": label " + std::to_string(labels[i]) + " at index " +
                              std::to_string(i) + " outside [0, 9]");
        }
    }
    return labels;
}

inline void save_idx_images(const std::string& path, const std::vector<Image>& images) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    detail::write_be32(out, kIdxImageMagic);
    detail::write_be32(out, static_cast<std::uint32_t>(images.size()));
    detail::write_be32(out, 28);
    detail::write_be32(out, 28);
    for (const Image& img : images) {
        out.write(reinterpret_cast<const char*>(img.data().data()),
                  static_cast<std::streamsize>(img.size()));
    }
    out.flush();
    if (!out) throw IoError(path + ": write failed");
}

inline void save_idx_labels(const std::string& path, const std::vector<std::uint8_t>& labels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path + ": cannot open for writing");
    detail::write_be32(out, kIdxLabelMagic);
    detail::write_be32(out, static_cast<std::uint32_t>(labels.size()));
    out.write(reinterpret_cast<const char*>(labels.data()),
              static_cast<std::streamsize>(labels.size()));
    out.flush();
    if (!out) throw IoError(path + ": write failed");
}

struct Dataset {
    std::vector<Image> images;
    std::vector<std::uint8_t> labels;

    std::size_t size() const { return images.size(); }
};

inline Dataset load_dataset(const std::string& images_path, const std::string& labels_path) {
    Dataset ds;
    ds.images = load_idx_images(images_path);
    ds.labels = load_idx_labels(labels_path);
    if (ds.images.size() != ds.labels.size()) {
        throw FormatError(images_path + " / " + labels_path + ": count mismatch (" +
                          std::to_string(ds.images.size()) + " images vs " +
                          std::to_string(ds.labels.size()) + " labels)");
    }
    return ds;
}

// Canonical MNIST file names inside --mnist-dir.
struct MnistPaths {
    std::string train_images;
    std::string train_labels;
    std::string test_images;
    std::string test_labels;
};

inline MnistPaths mnist_paths(const std::string& dir) {
    namespace fs = std::filesystem;
    auto join = [&](const char* name) { return (fs::path(dir) / name).string(); };
    return MnistPaths{join("train-images-idx3-ubyte"), join("train-labels-idx1-ubyte"),
                      join("t10k-images-idx3-ubyte"), join("t10k-labels-idx1-ubyte")};
}

}  // namespace mmnn
