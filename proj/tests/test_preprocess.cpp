#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mmnn/preprocess.hpp"
#include "testing_util.hpp"

using namespace mmnn;

namespace {

// Direct re-evaluation of one window outside the pipeline code: mean
// threshold pass for the center, plus thresholded absolute differences.
double window_oracle(const Image& img, int r, int c, double edge_t) {
    double center = img(r, c) / 10.0;
    double vals[8];
    int k = 0;
    double mean = 0.0;
    for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            vals[k] = img(r + dr, c + dc) / 10.0;
            mean += vals[k];
            ++k;
        }
    }
    mean /= 8.0;
    double out = center > mean ? center : 0.0;
    for (double v : vals) {
        double d = std::fabs(center - v);
        if (d > edge_t) out += d;
    }
    return out;
}

}  // namespace

TEST_CASE("layer1_threshold is the neighbor mean") {
    CHECK(layer1_threshold({10, 10, 10, 10, 10, 10, 10, 10}) == 10.0);
    CHECK(layer1_threshold({0, 0, 0, 0, 25.5, 25.5, 25.5, 25.5}) == 12.75);
    CHECK(layer1_threshold({0, 0, 0, 0, 0, 0, 0, 0}) == 0.0);
}

TEST_CASE("layer1_denoise pass/block") {
    Window3x3 w;
    w.center = 25.5;
    w.neighbors.fill(0.0);
    CHECK(layer1_denoise(w) == 25.5);

    w.center = 0.0;
    w.neighbors.fill(7.0);
    CHECK(layer1_denoise(w) == 0.0);

    w.center = 10.0;
    w.neighbors.fill(20.0);
    CHECK(layer1_denoise(w) == 0.0);
}

TEST_CASE("layer2_edge examples") {
    Window3x3 w;
    w.center = 12.0;
    w.neighbors.fill(12.0);
    CHECK(layer2_edge(w, 3.0) == 0.0);

    w.center = 25.5;
    w.neighbors.fill(0.0);
    CHECK(layer2_edge(w, 5.0) == 204.0);

    w.neighbors.fill(22.0);
    CHECK(layer2_edge(w, 5.0) == 0.0);
}

TEST_CASE("layer2_edge is invariant under neighbor permutations") {
    testing_util::Rand rand(31);
    for (int trial = 0; trial < 200; ++trial) {
        Window3x3 w;
        w.center = rand.uniform(0.0, 25.5);
        for (double& n : w.neighbors) n = rand.uniform(0.0, 25.5);
        double t = rand.uniform(0.0, 10.0);
        double base = layer2_edge(w, t);
        Window3x3 shuffled = w;
        for (int i = 7; i > 0; --i) {
            std::swap(shuffled.neighbors[i], shuffled.neighbors[rand.integer(0, i)]);
        }
        CHECK(layer2_edge(shuffled, t) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("layer2_edge is non-increasing in the threshold") {
    testing_util::Rand rand(32);
    for (int trial = 0; trial < 200; ++trial) {
        Window3x3 w;
        w.center = rand.uniform(0.0, 25.5);
        for (double& n : w.neighbors) n = rand.uniform(0.0, 25.5);
        double t1 = rand.uniform(0.0, 10.0);
        double t2 = t1 + rand.uniform(0.0, 10.0);
        CHECK(layer2_edge(w, t2) <= layer2_edge(w, t1));
    }
}

TEST_CASE("constant shifts preserve differences and the pass decision") {
    testing_util::Rand rand(33);
    for (int trial = 0; trial < 200; ++trial) {
        Window3x3 w;
        w.center = rand.uniform(0.0, 12.0);
        for (double& n : w.neighbors) n = rand.uniform(0.0, 12.0);
        double t = rand.uniform(0.0, 5.0);
        double shift = rand.uniform(0.0, 10.0);
        Window3x3 shifted = w;
        shifted.center += shift;
        for (double& n : shifted.neighbors) n += shift;
        CHECK(layer2_edge(shifted, t) == doctest::Approx(layer2_edge(w, t)).epsilon(1e-9));
        CHECK((layer1_denoise(w) > 0.0) == (layer1_denoise(shifted) > 0.0));
    }
}

TEST_CASE("preprocess_image output shape and bound") {
    testing_util::Rand rand(34);
    PreprocessConfig cfg;
    Image zero(28, 28, 0);
    CurrentMap zero_map = preprocess_image(zero, cfg);
    CHECK(zero_map.rows() == 26);
    CHECK(zero_map.cols() == 26);
    for (double v : zero_map.data()) CHECK(v == 0.0);

    for (int trial = 0; trial < 500; ++trial) {
        CurrentMap m = preprocess_image(testing_util::random_image(rand), cfg);
        for (double v : m.data()) {
            CHECK(v >= 0.0);
            CHECK(v <= 229.5);
        }
    }

    Image small(8, 5);
    CurrentMap sm = preprocess_image(small, cfg);
    CHECK(sm.rows() == 6);
    CHECK(sm.cols() == 3);

    CHECK_THROWS_AS(preprocess_image(Image(2, 28), cfg), std::invalid_argument);
}

TEST_CASE("preprocess_image matches the per-window oracle") {
    testing_util::Rand rand(35);
    PreprocessConfig cfg{3.0};
    for (int trial = 0; trial < 50; ++trial) {
        Image img = testing_util::random_image(rand);
        CurrentMap m = preprocess_image(img, cfg);
        for (int probe = 0; probe < 20; ++probe) {
            int r = rand.integer(1, 26);
            int c = rand.integer(1, 26);
            CHECK(m(r - 1, c - 1) ==
                  doctest::Approx(window_oracle(img, r, c, cfg.edge_threshold_mv)).epsilon(1e-12));
        }
    }
}

TEST_CASE("hand-picked noisy window against the oracle") {
    Image img(28, 28, 30);
    // Noisy-looking cluster around (5, 5).
    img(4, 4) = 200; img(4, 5) = 10;  img(4, 6) = 55;
    img(5, 4) = 0;   img(5, 5) = 180; img(5, 6) = 90;
    img(6, 4) = 33;  img(6, 5) = 250; img(6, 6) = 17;
    PreprocessConfig cfg{3.0};
    CurrentMap m = preprocess_image(img, cfg);
    CHECK(m(4, 4) == doctest::Approx(window_oracle(img, 5, 5, 3.0)).epsilon(1e-12));
}
