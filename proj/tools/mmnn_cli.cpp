// Command-line front end for the memristive multilayer network simulator:
// dataset checks, noise materialization, preprocessing visualization,
// training, evaluation, and the hardware timing model.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mmnn/mmnn.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct RunConfig {
    std::string mnist_dir;
    std::uint64_t seed = 0;
    double sigma = 100.0;
    double edge_threshold_mv = 3.0;
    bool preprocess_inference = false;
};

mmnn::NoiseConfig noise_cfg(const RunConfig& rc) { return {rc.sigma, rc.seed}; }
mmnn::PreprocessConfig prep_cfg(const RunConfig& rc) { return {rc.edge_threshold_mv}; }

void write_text_or_die(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw mmnn::IoError(path + ": cannot open for writing");
    out << text;
    out.flush();
    if (!out) throw mmnn::IoError(path + ": write failed");
}

int cmd_train(const RunConfig& rc, const std::string& model_path, std::int64_t limit) {
    auto paths = mmnn::mnist_paths(rc.mnist_dir);
    mmnn::Dataset train = mmnn::load_dataset(paths.train_images, paths.train_labels);
    if (limit > 0 && static_cast<std::size_t>(limit) < train.size()) {
        train.images.resize(limit);
        train.labels.resize(limit);
    }

    mmnn::TrainOptions opt;
    opt.noise = noise_cfg(rc);
    opt.prep = prep_cfg(rc);

    auto t0 = std::chrono::steady_clock::now();
    mmnn::DriftArray array = mmnn::train(train, opt);
    auto t1 = std::chrono::steady_clock::now();
    double wall_s = std::chrono::duration<double>(t1 - t0).count();

    mmnn::Model model{array, opt.prep, opt.noise};
    mmnn::save_model(model, model_path);

    std::printf("trained on %zu images\n", train.size());
    std::printf("a_max=%.17g\n", array.a_max);
    std::printf("k2=%.17g\n", array.params.k2);
    std::printf("drift devices=%d (%d classes x %d cells)\n",
                mmnn::kNumClasses * mmnn::kCellsPerClass, mmnn::kNumClasses,
                mmnn::kCellsPerClass);
    std::printf("diffusion devices per window=%d (1 denoise + 8 comparer pairs)\n", 17);
    std::printf("wall_time_s=%.3f\n", wall_s);
    std::printf("model=%s\n", model_path.c_str());
    return kExitOk;
}

int cmd_eval(const RunConfig& rc, const std::string& model_path, const std::string& csv_path) {
    auto paths = mmnn::mnist_paths(rc.mnist_dir);
    mmnn::Dataset test = mmnn::load_dataset(paths.test_images, paths.test_labels);
    mmnn::Model model = mmnn::load_model(model_path);

    mmnn::NoiseConfig noise = noise_cfg(rc);
    mmnn::EvalResult res =
        mmnn::evaluate(model.array, test, noise, rc.preprocess_inference, model.prep);

    std::ostringstream csv;
    csv << "# seed=" << noise.seed << " sigma=" << noise.sigma
        << " edge_threshold=" << model.prep.edge_threshold_mv
        << " preprocess_inference=" << (rc.preprocess_inference ? 1 : 0) << '\n';
    mmnn::write_confusion_csv(csv, res.confusion);
    if (!csv_path.empty()) {
        write_text_or_die(csv_path, csv.str());
    } else {
        std::cout << csv.str();
    }
    std::printf("accuracy=%.4f\n", res.accuracy);
    return kExitOk;
}

int cmd_preprocess(const RunConfig& rc, const std::string& pgm_in, std::int64_t index,
                   const std::string& out_prefix) {
    mmnn::Image image(28, 28);
    if (!pgm_in.empty()) {
        image = mmnn::load_pgm(pgm_in);
    } else {
        auto paths = mmnn::mnist_paths(rc.mnist_dir);
        auto images = mmnn::load_idx_images(paths.test_images);
        if (index < 0 || static_cast<std::size_t>(index) >= images.size()) {
            throw std::invalid_argument("--index out of range (dataset has " +
                                        std::to_string(images.size()) + " images)");
        }
        image = images[index];
    }

    mmnn::Image noisy = mmnn::add_noise(image, noise_cfg(rc), static_cast<std::uint64_t>(index));
    mmnn::CurrentMap cm = mmnn::preprocess_image(noisy, prep_cfg(rc));

    std::ostringstream txt;
    char buf[64];
    for (int r = 0; r < cm.rows(); ++r) {
        for (int c = 0; c < cm.cols(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", cm(r, c));
            txt << buf << (c + 1 == cm.cols() ? '\n' : ' ');
        }
    }
    write_text_or_die(out_prefix + ".txt", txt.str());

    // Fig. 5 style visualization: full current range mapped onto 8-bit gray.
    mmnn::Image vis(cm.rows(), cm.cols());
    for (int r = 0; r < cm.rows(); ++r) {
        for (int c = 0; c < cm.cols(); ++c) {
            vis(r, c) = static_cast<std::uint8_t>(std::lround(cm(r, c) * 255.0 / 229.5));
        }
    }
    mmnn::save_pgm(out_prefix + ".pgm", vis);
    std::printf("wrote %s.txt and %s.pgm\n", out_prefix.c_str(), out_prefix.c_str());
    return kExitOk;
}

int cmd_perf(double freq_hz, std::int64_t images, bool key_value) {
    mmnn::PerfConfig cfg;
    cfg.clock_hz = freq_hz;
    cfg.n_train = images;
    mmnn::PerfReport report = mmnn::perf_report(cfg);
    std::cout << mmnn::format_perf_report(report, key_value);
    return kExitOk;
}

int cmd_noise(const RunConfig& rc, const std::string& split, const std::string& out_dir) {
    auto paths = mmnn::mnist_paths(rc.mnist_dir);
    bool train_split = split == "train";
    mmnn::Dataset ds = train_split ? mmnn::load_dataset(paths.train_images, paths.train_labels)
                                   : mmnn::load_dataset(paths.test_images, paths.test_labels);
    mmnn::NoiseConfig noise = noise_cfg(rc);
    std::vector<mmnn::Image> noisy;
    noisy.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        noisy.push_back(mmnn::add_noise(ds.images[i], noise, i));
    }
    std::filesystem::create_directories(out_dir);
    namespace fs = std::filesystem;
    std::string img_name = train_split ? "train-images-idx3-ubyte" : "t10k-images-idx3-ubyte";
    std::string lab_name = train_split ? "train-labels-idx1-ubyte" : "t10k-labels-idx1-ubyte";
    mmnn::save_idx_images((fs::path(out_dir) / img_name).string(), noisy);
    mmnn::save_idx_labels((fs::path(out_dir) / lab_name).string(), ds.labels);
    std::printf("wrote %zu noisy %s images to %s\n", noisy.size(), split.c_str(),
                out_dir.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Memristive multilayer network simulator (diffusion preprocessing + drift recognition)"};
    app.require_subcommand(1);

    RunConfig rc;
    std::string model_path = "model.mmnw";
    std::string out_path;
    std::string pgm_in;
    std::string split = "test";
    std::int64_t index = 0;
    std::int64_t train_limit = 0;
    std::int64_t images = 60000;
    double freq_hz = 517.87e6;
    bool key_value = false;

    auto add_common = [&](CLI::App* cmd, bool needs_mnist) {
        if (needs_mnist) {
            cmd->add_option("--mnist-dir", rc.mnist_dir,
                            "directory with the four canonical MNIST IDX files")
                ->required();
        }
        cmd->add_option("--seed", rc.seed, "noise PRNG seed");
        cmd->add_option("--sigma", rc.sigma, "Gaussian noise sigma in pixel units")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--edge-threshold", rc.edge_threshold_mv,
                        "layer-2 fire threshold in mV")
            ->check(CLI::NonNegativeNumber);
    };

    CLI::App* train = app.add_subcommand("train", "train layer 3 on noisy MNIST");
    add_common(train, true);
    train->add_option("--model", model_path, "output model file");
    train->add_option("--images", train_limit, "limit the number of training images (0 = all)");

    CLI::App* eval = app.add_subcommand("eval", "evaluate a trained model on noisy MNIST");
    add_common(eval, true);
    eval->add_option("--model", model_path, "trained model file")->required();
    eval->add_option("--out", out_path, "confusion matrix CSV path (stdout when omitted)");
    eval->add_flag("--preprocess-inference", rc.preprocess_inference,
                   "drive inference with preprocessed currents instead of the raw crop");

    CLI::App* prep = app.add_subcommand("preprocess", "run the cellular layers on one image");
    prep->add_option("--mnist-dir", rc.mnist_dir, "MNIST directory (with --index)");
    prep->add_option("--index", index, "test-set image index");
    prep->add_option("--pgm", pgm_in, "input PGM file instead of a dataset index");
    prep->add_option("--seed", rc.seed, "noise PRNG seed");
    prep->add_option("--sigma", rc.sigma, "Gaussian noise sigma")->check(CLI::NonNegativeNumber);
    prep->add_option("--edge-threshold", rc.edge_threshold_mv, "layer-2 fire threshold in mV")
        ->check(CLI::NonNegativeNumber);
    prep->add_option("--out", out_path, "output prefix for .txt and .pgm")->required();

    CLI::App* perf = app.add_subcommand("perf", "print the hardware timing report");
    perf->add_option("--freq", freq_hz, "clock frequency in Hz")->check(CLI::PositiveNumber);
    perf->add_option("--images", images, "training image count");
    perf->add_flag("--key-value", key_value, "machine-readable key=value output");

    CLI::App* noise = app.add_subcommand("noise", "materialize a noisy dataset in IDX layout");
    add_common(noise, true);
    noise->add_option("--split", split, "train or test")->check(CLI::IsMember({"train", "test"}));
    noise->add_option("--out", out_path, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc_parse = app.exit(e);
        return rc_parse == 0 ? kExitOk : kExitInput;
    }

    try {
        if (train->parsed()) return cmd_train(rc, model_path, train_limit);
        if (eval->parsed()) return cmd_eval(rc, model_path, out_path);
        if (prep->parsed()) {
            if (pgm_in.empty() && rc.mnist_dir.empty()) {
                std::cerr << "preprocess: need --pgm or --mnist-dir\n";
                return kExitInput;
            }
            return cmd_preprocess(rc, pgm_in, index, out_path);
        }
        if (perf->parsed()) return cmd_perf(freq_hz, images, key_value);
        if (noise->parsed()) return cmd_noise(rc, split, out_path);
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const mmnn::FormatError& e) {
        std::cerr << "format error: " << e.what() << '\n';
        return kExitInput;
    } catch (const mmnn::TruncationError& e) {
        std::cerr << "truncation error: " << e.what() << '\n';
        return kExitInput;
    } catch (const mmnn::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitInput;
    } catch (const mmnn::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
