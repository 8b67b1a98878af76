#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "mmnn/core_models.hpp"
#include "mmnn/encoding.hpp"
#include "mmnn/grid.hpp"

namespace mmnn {

// 3x3 pixel window encoded as spike voltages. Neighbor order is fixed
// (row-major around the center) so floating-point sums are bit-stable.
struct Window3x3 {
    double center = 0.0;                      // mV
    std::array<double, 8> neighbors = {};     // NW, N, NE, W, E, SW, S, SE (mV)
};

struct PreprocessConfig {
    double edge_threshold_mv = 3.0;  // layer-2 fire threshold

    void validate() const {
        if (edge_threshold_mv < 0.0) {
            throw std::invalid_argument("PreprocessConfig: edge_threshold must be non-negative");
        }
    }
};

// Layer-1 fire threshold: mean of the eight surrounding spike voltages.
inline double layer1_threshold(const std::array<double, 8>& neighbors) {
    double sum = 0.0;
    for (double n : neighbors) sum += n;
    return sum / 8.0;
}

// Denoising pass: the center spike passes only when it exceeds the
// neighborhood mean.
inline double layer1_denoise(const Window3x3& w) {
    return diffusion_transfer(w.center, layer1_threshold(w.neighbors));
}

// Edge compensation: each neighbor is compared against the center through a
// positive/negative device pair, folded here into an absolute difference.
// Differences above the threshold pass through and are summed.
inline double layer2_edge(const Window3x3& w, double edge_threshold_mv) {
    if (edge_threshold_mv < 0.0) {
        throw std::invalid_argument("layer2_edge: threshold must be non-negative");
    }
    double sum = 0.0;
    for (double n : w.neighbors) {
        double diff = std::fabs(w.center - n);
        if (diff > edge_threshold_mv) sum += diff;
    }
    return sum;
}

// Extracts the training-scale voltage window centered at (r, c).
inline Window3x3 window_at(const Image& image, int r, int c) {
    Window3x3 w;
    w.center = pixel_to_training_voltage(image(r, c));
    static constexpr int kOffsets[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                           {0, 1},   {1, -1}, {1, 0},  {1, 1}};
    for (std::size_t i = 0; i < 8; ++i) {
        w.neighbors[i] = pixel_to_training_voltage(image(r + kOffsets[i][0], c + kOffsets[i][1]));
    }
    return w;
}

// Full preprocessing pass over the image interior: denoised center current
// plus edge compensation, one output per interior pixel. A 28x28 input
// yields a 26x26 current map bounded by 25.5 + 8 * 25.5 = 229.5 mA.
inline CurrentMap preprocess_image(const Image& image, const PreprocessConfig& cfg) {
    cfg.validate();
    if (image.rows() < 3 || image.cols() < 3) {
        throw std::invalid_argument("preprocess_image: image must be at least 3x3");
    }
    CurrentMap out(image.rows() - 2, image.cols() - 2);
    for (int r = 1; r + 1 < image.rows(); ++r) {
        for (int c = 1; c + 1 < image.cols(); ++c) {
            Window3x3 w = window_at(image, r, c);
            out(r - 1, c - 1) = layer1_denoise(w) + layer2_edge(w, cfg.edge_threshold_mv);
        }
    }
    return out;
}

}  // namespace mmnn
