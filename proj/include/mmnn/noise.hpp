#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "mmnn/grid.hpp"

namespace mmnn {

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 (Vigna's reference finalizer). Value-semantic state so streams
// can be copied and forked freely.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kSplitMixGamma;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state() const { return state_; }

  private:
    std::uint64_t state_;
};

// Standard-normal stream: Box-Muller over SplitMix64 uniforms. Each pair of
// uniforms yields two variates; both are consumed in order.
class GaussianSource {
  public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = next_uniform();
        double u2 = next_uniform();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * std::numbers::pi * u2;
        cached_ = radius * std::sin(angle);
        have_cached_ = true;
        return radius * std::cos(angle);
    }

  private:
    // Uniform in (0, 1): the zero draw is mapped to the smallest
    // representable step so log(u1) stays finite.
    double next_uniform() {
        double u = static_cast<double>(rng_.next() >> 11) * 0x1.0p-53;
        return u > 0.0 ? u : 0x1.0p-53;
    }

    SplitMix64 rng_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

struct NoiseConfig {
    double sigma = 100.0;  // pixel-intensity units
    std::uint64_t seed = 0;

    void validate() const {
        if (sigma < 0.0) {
            throw std::invalid_argument("NoiseConfig: sigma must be non-negative");
        }
    }
};

// Each image gets its own stream so dataset order never reshuffles noise.
inline std::uint64_t noise_stream_seed(std::uint64_t seed, std::uint64_t image_index) {
    return seed ^ (image_index * kSplitMixGamma);
}

// p' = round(p + sigma * z), half away from zero, clamped to [0, 255],
// drawn in row-major pixel order.
inline Image add_noise(const Image& image, const NoiseConfig& cfg, std::uint64_t image_index) {
    cfg.validate();
    GaussianSource gauss(noise_stream_seed(cfg.seed, image_index));
    Image out(image.rows(), image.cols());
    for (int r = 0; r < image.rows(); ++r) {
        for (int c = 0; c < image.cols(); ++c) {
            double v = image(r, c) + cfg.sigma * gauss.next();
            v = std::round(v);
            if (v < 0.0) v = 0.0;
            if (v > 255.0) v = 255.0;
            out(r, c) = static_cast<std::uint8_t>(v);
        }
    }
    return out;
}

}  // namespace mmnn
