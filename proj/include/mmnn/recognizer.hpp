#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "mmnn/core_models.hpp"
#include "mmnn/dataset.hpp"
#include "mmnn/encoding.hpp"
#include "mmnn/errors.hpp"
#include "mmnn/noise.hpp"
#include "mmnn/preprocess.hpp"

namespace mmnn {

inline constexpr int kNumClasses = 10;
inline constexpr int kMapRows = 26;
inline constexpr int kMapCols = 26;
inline constexpr int kCellsPerClass = kMapRows * kMapCols;

// Trained layer-3 state: one drift memristor per (class, interior pixel),
// class-major, row-major within a class.
struct DriftArray {
    DriftParams params;
    double a_max = 0.0;  // accumulated spike area mapped to r_on by calibration
    std::vector<double> memristances;  // kNumClasses * kCellsPerClass ohms

    double memristance(int cls, int cell) const {
        return memristances[static_cast<std::size_t>(cls) * kCellsPerClass + cell];
    }
};

struct TrainOptions {
    NoiseConfig noise;
    PreprocessConfig prep;
    double r_on = 14.0;
    double r_off = 14000.0;
    double window_factor = 1.0;
    // When false the cellular layers are bypassed and layer 3 accumulates the
    // raw noisy interior crop at training scale (control configuration).
    bool use_preprocessing = true;
};

// Training-side drive map for one image: preprocessed currents, or the raw
// interior crop at training scale for the control path.
inline CurrentMap training_drive(const Image& noisy, const TrainOptions& opt) {
    if (opt.use_preprocessing) {
        return preprocess_image(noisy, opt.prep);
    }
    CurrentMap out(noisy.rows() - 2, noisy.cols() - 2);
    for (int r = 1; r + 1 < noisy.rows(); ++r) {
        for (int c = 1; c + 1 < noisy.cols(); ++c) {
            out(r - 1, c - 1) = pixel_to_training_voltage(noisy(r, c));
        }
    }
    return out;
}

// Pass 1 accumulates per-class spike areas in ascending image-index order;
// pass 2 calibrates k2 so the globally largest area lands exactly on r_on.
inline DriftArray train(const Dataset& data, const TrainOptions& opt) {
    if (data.images.empty()) {
        throw std::invalid_argument("train: dataset is empty");
    }
    if (!(opt.window_factor > 0.0 && opt.window_factor <= 1.0)) {
        throw std::invalid_argument("train: window_factor outside (0, 1]");
    }
    std::vector<double> area(static_cast<std::size_t>(kNumClasses) * kCellsPerClass, 0.0);
    for (std::size_t i = 0; i < data.images.size(); ++i) {
        Image noisy = add_noise(data.images[i], opt.noise, i);
        CurrentMap drive = training_drive(noisy, opt);
        if (drive.rows() != kMapRows || drive.cols() != kMapCols) {
            throw std::invalid_argument("train: images must be 28x28");
        }
        double* cls_area = area.data() + static_cast<std::size_t>(data.labels[i]) * kCellsPerClass;
        const double* d = drive.data().data();
        for (int p = 0; p < kCellsPerClass; ++p) {
            cls_area[p] += d[p];  // hold time is 1 cycle, area == amplitude
        }
    }

    double a_max = 0.0;
    for (double a : area) a_max = std::max(a_max, a);
    if (a_max <= 0.0) {
        throw CalibrationError("train: no accumulated spike area (all-blank data)");
    }

    DriftArray model;
    model.params.r_on = opt.r_on;
    model.params.r_off = opt.r_off;
    model.params.window_factor = opt.window_factor;
    // Calibration renormalizes through the window factor, so rescaling either
    // k2 or window_factor leaves every memristance (and decision) unchanged.
    model.params.k2 = (opt.r_off - opt.r_on) / (opt.window_factor * a_max);
    model.a_max = a_max;
    model.memristances.resize(area.size());
    for (std::size_t i = 0; i < area.size(); ++i) {
        model.memristances[i] = drift_memristance(model.params, area[i]);
    }
    return model;
}

// Per-class output currents for one test image. Default drive is the
// interior 26x26 crop at inference scale; the optional preprocessed path
// drives with preprocess_image outputs rescaled by 1/10.
inline std::array<double, kNumClasses> class_scores(const DriftArray& model, const Image& image,
                                                    bool preprocess_inference = false,
                                                    const PreprocessConfig& prep = {}) {
    if (image.rows() != 28 || image.cols() != 28) {
        throw std::invalid_argument("class_scores: image must be 28x28");
    }
    std::vector<double> drive(kCellsPerClass);
    if (preprocess_inference) {
        CurrentMap cm = preprocess_image(image, prep);
        for (int p = 0; p < kCellsPerClass; ++p) drive[p] = cm.data()[p] / 10.0;
    } else {
        int p = 0;
        for (int r = 1; r < 27; ++r) {
            for (int c = 1; c < 27; ++c) {
                drive[p++] = pixel_to_inference_voltage(image(r, c));
            }
        }
    }
    std::array<double, kNumClasses> scores{};
    for (int cls = 0; cls < kNumClasses; ++cls) {
        const double* m = model.memristances.data() + static_cast<std::size_t>(cls) * kCellsPerClass;
        double sum = 0.0;
        for (int p = 0; p < kCellsPerClass; ++p) {
            sum += drift_current(drive[p], m[p]);
        }
        scores[cls] = sum;
    }
    return scores;
}

// Argmax over class scores; ties go to the lowest class index.
inline int classify(const DriftArray& model, const Image& image, bool preprocess_inference = false,
                    const PreprocessConfig& prep = {}) {
    auto scores = class_scores(model, image, preprocess_inference, prep);
    int best = 0;
    for (int cls = 1; cls < kNumClasses; ++cls) {
        if (scores[cls] > scores[best]) best = cls;
    }
    return best;
}

// Rows are predicted classes ("Experiment results"), columns are true
// classes ("Expectation").
struct ConfusionMatrix {
    std::array<std::array<std::uint64_t, kNumClasses>, kNumClasses> counts{};

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (const auto& row : counts)
            for (std::uint64_t v : row) t += v;
        return t;
    }

    std::uint64_t trace() const {
        std::uint64_t t = 0;
        for (int i = 0; i < kNumClasses; ++i) t += counts[i][i];
        return t;
    }

    double accuracy() const {
        std::uint64_t t = total();
        return t == 0 ? 0.0 : static_cast<double>(trace()) / static_cast<double>(t);
    }

    std::array<std::uint64_t, kNumClasses> column_sums() const {
        std::array<std::uint64_t, kNumClasses> sums{};
        for (const auto& row : counts)
            for (int c = 0; c < kNumClasses; ++c) sums[c] += row[c];
        return sums;
    }
};

inline void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm) {
    out << "predicted\\true";
    for (int c = 0; c < kNumClasses; ++c) out << ',' << c;
    out << '\n';
    for (int r = 0; r < kNumClasses; ++r) {
        out << r;
        for (int c = 0; c < kNumClasses; ++c) out << ',' << cm.counts[r][c];
        out << '\n';
    }
}

struct EvalResult {
    ConfusionMatrix confusion;
    double accuracy = 0.0;
};

// Classifies each test image after per-index noise injection.
inline EvalResult evaluate(const DriftArray& model, const Dataset& test, const NoiseConfig& noise,
                           bool preprocess_inference = false, const PreprocessConfig& prep = {}) {
    EvalResult res;
    for (std::size_t i = 0; i < test.images.size(); ++i) {
        Image noisy = add_noise(test.images[i], noise, i);
        int pred = classify(model, noisy, preprocess_inference, prep);
        res.confusion.counts[pred][test.labels[i]] += 1;
    }
    res.accuracy = res.confusion.accuracy();
    return res;
}

}  // namespace mmnn
