#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <locale>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mmnn {

// Analytical timing model of the pipelined hardware: one 3x3 window is
// loaded and computed per clock cycle, so per-image work is the interior
// window count.

struct PerfConfig {
    double clock_hz = 517.87e6;
    int image_h = 28;
    int image_w = 28;
    std::int64_t n_train = 60000;

    void validate() const {
        if (!(clock_hz > 0.0)) throw std::invalid_argument("PerfConfig: clock_hz must be positive");
        if (image_h < 3 || image_w < 3) {
            throw std::invalid_argument("PerfConfig: image dimensions must be >= 3");
        }
        if (n_train < 0) throw std::invalid_argument("PerfConfig: n_train must be non-negative");
    }
};

inline std::int64_t windows_per_image(int h, int w) {
    if (h < 3 || w < 3) {
        throw std::invalid_argument("windows_per_image: dimensions must be >= 3");
    }
    return static_cast<std::int64_t>(h - 2) * (w - 2);
}

inline double round_to_decimals(double x, int decimals) {
    double scale = std::pow(10.0, decimals);
    return std::round(x * scale) / scale;
}

inline double round_to_sig_digits(double x, int digits) {
    if (x == 0.0) return 0.0;
    double mag = std::floor(std::log10(std::fabs(x)));
    double scale = std::pow(10.0, mag - digits + 1);
    return std::round(x / scale) * scale;
}

struct PerfReport {
    std::int64_t windows = 0;
    // Paper-convention chain: ms at 2 decimals, us at 3 significant digits,
    // throughput as the floored reciprocal of the ROUNDED latency.
    double train_time_ms = 0.0;
    double infer_latency_us = 0.0;
    std::int64_t throughput_images_per_s = 0;
    // Unrounded figures, reported alongside.
    double exact_train_time_ms = 0.0;
    double exact_infer_latency_us = 0.0;
    std::int64_t exact_throughput_images_per_s = 0;
};

inline double training_time_ms(const PerfConfig& cfg) {
    cfg.validate();
    double windows = static_cast<double>(windows_per_image(cfg.image_h, cfg.image_w));
    double seconds = static_cast<double>(cfg.n_train) * windows / cfg.clock_hz;
    return round_to_decimals(seconds * 1e3, 2);
}

inline PerfReport perf_report(const PerfConfig& cfg) {
    cfg.validate();
    PerfReport r;
    r.windows = windows_per_image(cfg.image_h, cfg.image_w);
    double windows = static_cast<double>(r.windows);
    r.exact_train_time_ms = static_cast<double>(cfg.n_train) * windows / cfg.clock_hz * 1e3;
    r.train_time_ms = round_to_decimals(r.exact_train_time_ms, 2);
    r.exact_infer_latency_us = windows / cfg.clock_hz * 1e6;
    r.infer_latency_us = round_to_sig_digits(r.exact_infer_latency_us, 3);
    r.throughput_images_per_s =
        static_cast<std::int64_t>(std::floor(1.0 / (r.infer_latency_us * 1e-6)));
    r.exact_throughput_images_per_s = std::llround(cfg.clock_hz / windows);
    return r;
}

// Locale-independent thousands grouping for the human-readable report.
inline std::string group_thousands(std::int64_t v) {
    std::string digits = std::to_string(v);
    std::string out;
    int count = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (count > 0 && count % 3 == 0 && *it != '-') out.push_back(',');
        out.push_back(*it);
        ++count;
    }
    return std::string(out.rbegin(), out.rend());
}

inline std::string format_perf_report(const PerfReport& r, bool key_value = false) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    if (key_value) {
        os << "windows_per_image=" << r.windows << '\n';
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.2f", r.train_time_ms);
        os << "train_time_ms=" << buf << '\n';
        std::snprintf(buf, sizeof(buf), "%.3g", r.infer_latency_us);
        os << "infer_latency_us=" << buf << '\n';
        os << "throughput_images_per_s=" << r.throughput_images_per_s << '\n';
        os << "exact_train_time_ms=" << r.exact_train_time_ms << '\n';
        os << "exact_infer_latency_us=" << r.exact_infer_latency_us << '\n';
        os << "exact_throughput_images_per_s=" << r.exact_throughput_images_per_s << '\n';
    } else {
        char line[160];
        std::snprintf(line, sizeof(line), "windows per image    : %s\n",
                      group_thousands(r.windows).c_str());
        os << line;
        std::snprintf(line, sizeof(line), "training time        : %.2f ms (exact %.6f ms)\n",
                      r.train_time_ms, r.exact_train_time_ms);
        os << line;
        std::snprintf(line, sizeof(line), "inference latency    : %.3g us (exact %.6f us)\n",
                      r.infer_latency_us, r.exact_infer_latency_us);
        os << line;
        std::snprintf(line, sizeof(line), "throughput           : %s images/s (exact %s images/s)\n",
                      group_thousands(r.throughput_images_per_s).c_str(),
                      group_thousands(r.exact_throughput_images_per_s).c_str());
        os << line;
    }
    return os.str();
}

}  // namespace mmnn
