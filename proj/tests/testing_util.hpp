#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "mmnn/grid.hpp"
#include "mmnn/noise.hpp"

namespace testing_util {

inline std::string mnist_dir() {
    if (const char* env = std::getenv("MMNN_MNIST_DIR")) return env;
    return "/root/data/mnist";
}

inline bool mnist_available() {
    namespace fs = std::filesystem;
    return fs::exists(fs::path(mnist_dir()) / "train-images-idx3-ubyte");
}

// Independent SplitMix64 step, written from the published algorithm rather
// than shared with the library, so the two act as cross-checks.
inline std::uint64_t reference_splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// Cheap deterministic generators for property tests.
struct Rand {
    mmnn::SplitMix64 rng;
    explicit Rand(std::uint64_t seed) : rng(seed) {}
    double uniform(double lo, double hi) {
        double u = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }
    int integer(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(rng.next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

inline mmnn::Image random_image(Rand& rand, int rows = 28, int cols = 28) {
    mmnn::Image img(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            img(r, c) = static_cast<std::uint8_t>(rand.integer(0, 255));
        }
    }
    return img;
}

}  // namespace testing_util
