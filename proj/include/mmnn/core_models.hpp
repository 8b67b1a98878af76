#pragma once

#include <algorithm>
#include <stdexcept>

namespace mmnn {

// Unit convention used throughout: voltages in mV, resistances in ohms,
// currents in mA. With these units Ohm's law needs no scale factor:
// 14 mV across 14 ohms is exactly 1 mA, and a 0.1 mA probe across
// 14 kOhm reads 1400 mV.

// Drift memristor: memristance falls linearly with accumulated spike area,
// M = r_off - k2 * window_factor * area, clamped into [r_on, r_off].
struct DriftParams {
    double r_on = 14.0;       // ohms
    double r_off = 14000.0;   // ohms
    double k2 = 1.0;          // ohms per unit of accumulated spike area
    double window_factor = 1.0;

    void validate() const {
        if (!(0.0 < r_on && r_on < r_off)) {
            throw std::invalid_argument("DriftParams: requires 0 < r_on < r_off");
        }
        if (!(k2 > 0.0)) {
            throw std::invalid_argument("DriftParams: requires k2 > 0");
        }
        if (!(window_factor > 0.0 && window_factor <= 1.0)) {
            throw std::invalid_argument("DriftParams: requires 0 < window_factor <= 1");
        }
    }
};

// Diffusion memristor as a threshold switch: passes the input through
// (mV in, numerically equal mA out) strictly above threshold, else blocks.
inline double diffusion_transfer(double u_input_mv, double threshold_mv) {
    if (u_input_mv < 0.0 || threshold_mv < 0.0) {
        throw std::invalid_argument("diffusion_transfer: inputs must be non-negative");
    }
    return u_input_mv > threshold_mv ? u_input_mv : 0.0;
}

inline double drift_memristance(const DriftParams& params, double area) {
    params.validate();
    if (area < 0.0) {
        throw std::invalid_argument("drift_memristance: area must be non-negative");
    }
    double m = params.r_off - params.k2 * params.window_factor * area;
    return std::clamp(m, params.r_on, params.r_off);
}

// Same law with an explicit window factor check; at f = 1 this is exactly
// drift_memristance.
inline double windowed_drift_memristance(const DriftParams& params, double area) {
    if (!(params.window_factor > 0.0 && params.window_factor <= 1.0)) {
        throw std::invalid_argument("windowed_drift_memristance: window_factor outside (0, 1]");
    }
    return drift_memristance(params, area);
}

// Ohm's law read: mV / ohm = mA.
inline double drift_current(double u_mv, double m_ohm) {
    if (!(m_ohm > 0.0)) {
        throw std::domain_error("drift_current: memristance must be positive");
    }
    return u_mv / m_ohm;
}

// Non-destructive readout with a current probe: mA * ohm = mV.
inline double drift_readout(double m_ohm, double probe_ma) {
    if (!(probe_ma > 0.0)) {
        throw std::invalid_argument("drift_readout: probe current must be positive");
    }
    return probe_ma * m_ohm;
}

}  // namespace mmnn
