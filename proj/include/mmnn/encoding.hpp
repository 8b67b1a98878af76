#pragma once

#include <stdexcept>

namespace mmnn {

// Pixel-to-spike encoding. Every spike has unit hold time, so its area
// equals its amplitude. Training drives at pixel/10 mV, inference at a
// tenth of that (pixel/100 mV) so reads do not disturb trained devices.

inline void check_pixel(int p) {
    if (p < 0 || p > 255) {
        throw std::invalid_argument("pixel value must be in [0, 255]");
    }
}

inline double pixel_to_training_voltage(int p) {
    check_pixel(p);
    return p / 10.0;
}

// Defined as exactly a tenth of the training scale so the two encodings
// stay in lockstep at every pixel value.
inline double pixel_to_inference_voltage(int p) {
    return pixel_to_training_voltage(p) / 10.0;
}

inline double spike_area(double amplitude, int hold_cycles) {
    if (amplitude < 0.0) {
        throw std::invalid_argument("spike_area: amplitude must be non-negative");
    }
    if (hold_cycles < 1) {
        throw std::invalid_argument("spike_area: hold_cycles must be >= 1");
    }
    return amplitude * hold_cycles;
}

}  // namespace mmnn
