#include <cstdio>
#include <mutex>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "texnet/dataset.hpp"
#include "texnet/error.hpp"
#include "texnet/features_io.hpp"
#include "texnet/image.hpp"
#include "texnet/lda.hpp"
#include "texnet/network.hpp"
#include "texnet/parallel.hpp"
#include "texnet/signature.hpp"
#include "texnet/sweep.hpp"
#include "texnet/version.hpp"

namespace {

using namespace texnet;

template <typename T>
void require_strictly_increasing(const std::vector<T>& v, const char* name) {
    if (v.empty()) throw ParameterError(std::string(name) + " must not be empty");
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i - 1] < v[i]))
            throw ParameterError(std::string(name) + " must be strictly increasing");
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) throw ParameterError(std::string(name) + " must be positive");
}

struct ExtractOpts {
    std::string root;
    std::string out = "features.csv";
    std::vector<double> radii{2, 9};
    std::vector<int> qs{4, 19, 29};
    double lambda = 1e-3;
    bool no_label_norm = false;
    int threads = default_thread_count();
};

int run_extract(const ExtractOpts& opt) {
    require_strictly_increasing(opt.radii, "--radii");
    require_strictly_increasing(opt.qs, "--qs");
    require_positive(opt.lambda, "--lambda");
    if (opt.threads < 1) throw ParameterError("--threads must be >= 1");

    SignatureParams params;
    params.radii = opt.radii;
    params.qs = opt.qs;
    params.lambda = opt.lambda;
    params.normalize_labels = !opt.no_label_norm;

    const LabeledDataset dataset = scan_dataset(opt.root);
    const std::size_t n = dataset.samples.size();
    std::vector<FeatureRecord> records(n);

    std::mutex progress_mutex;
    std::size_t done = 0;
    parallel_for(n, opt.threads, [&](std::size_t i) {
        const auto& sample = dataset.samples[i];
        const GrayImage img = load_gray(sample.path);
        const Signature sig = signature_psi(img, params);
        records[i] = {sample.path, dataset.class_names[sample.class_id], sig.values};
        std::lock_guard<std::mutex> lock(progress_mutex);
        ++done;
        std::fprintf(stderr, "[%zu/%zu] %s\n", done, n, sample.path.c_str());
    });

    write_features_csv(opt.out, records, params, dataset.class_names);
    std::fprintf(stderr, "wrote %s (%zu rows, %zu features)\n", opt.out.c_str(), n,
                 records.front().values.size());
    return 0;
}

struct EvalOpts {
    std::string features;
    std::string out; // report stem; defaults to the input path minus ".csv"
    double gamma = 1e-4;
    int threads = default_thread_count();
};

int run_eval(const EvalOpts& opt) {
    if (opt.gamma < 0.0) throw ParameterError("--gamma must be >= 0");
    if (opt.threads < 1) throw ParameterError("--threads must be >= 1");

    const LoadedFeatures loaded = read_features_csv(opt.features);
    const FeatureTable table = to_feature_table(loaded);
    const EvalResult result = leave_one_out(table, opt.gamma, opt.threads);

    std::string stem = opt.out;
    if (stem.empty()) {
        stem = opt.features;
        if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv")
            stem.resize(stem.size() - 4);
        stem += ".eval";
    }
    write_eval_json(stem + ".json", result, loaded.class_names);
    write_eval_text(stem + ".txt", result, loaded.class_names);
    std::printf("%.2f\n", result.accuracy * 100.0);
    return 0;
}

struct RenderOpts {
    std::string image;
    std::string out;
    double radius = 2.0;
    std::string measure = "k";
};

int run_render(const RenderOpts& opt) {
    const Measure which = measure_from_name(opt.measure);
    const GrayImage img = load_gray(opt.image);
    const MeasureMaps maps = compute_measures(img, opt.radius);
    save_gray(render_measure(maps, which), opt.out);
    std::fprintf(stderr, "wrote %s\n", opt.out.c_str());
    return 0;
}

struct SweepOpts {
    std::string root;
    std::string out = "sweep.csv";
    std::string mode = "theta-pairs";
    std::vector<double> radii;
    std::vector<int> qs;
    double lambda = 1e-3;
    bool no_label_norm = false;
    double gamma = 1e-4;
    int threads = default_thread_count();
};

int run_sweep(const SweepOpts& opt) {
    SweepMode mode;
    std::vector<double> radii = opt.radii;
    std::vector<int> qs = opt.qs;
    if (opt.mode == "theta-pairs") {
        mode = SweepMode::ThetaPairs;
        if (radii.empty()) radii = {2, 3, 4, 5, 6, 7, 8, 9, 10};
        if (qs.empty()) qs = {4};
    } else if (opt.mode == "psi-triples") {
        mode = SweepMode::PsiTriples;
        if (radii.empty()) radii = {2, 9};
        if (qs.empty()) qs = {4, 9, 14, 19, 24, 29};
    } else {
        throw ParameterError("--mode must be theta-pairs or psi-triples");
    }
    require_strictly_increasing(radii, "--radii");
    require_strictly_increasing(qs, "--qs");
    require_positive(opt.lambda, "--lambda");
    if (opt.gamma < 0.0) throw ParameterError("--gamma must be >= 0");
    if (opt.threads < 1) throw ParameterError("--threads must be >= 1");

    SweepConfig config;
    config.lambda = opt.lambda;
    config.normalize_labels = !opt.no_label_norm;
    config.gamma = opt.gamma;
    config.threads = opt.threads;

    const LabeledDataset dataset = scan_dataset(opt.root);
    const std::vector<SweepRow> rows = sweep(dataset, radii, qs, mode, config);
    write_sweep_csv(opt.out, rows);
    std::fprintf(stderr, "wrote %s (%zu rows)\n", opt.out.c_str(), rows.size());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"texture classification via complex networks and randomized neural networks"};
    app.set_version_flag("--version", texnet::kVersion);
    app.require_subcommand(1);

    ExtractOpts ex;
    auto* extract = app.add_subcommand(
        "extract", "compute signatures for every image of a labeled dataset");
    extract->add_option("root", ex.root, "dataset root, one subdirectory per class")
        ->required();
    extract->add_option("--out", ex.out, "output feature CSV path");
    extract->add_option("--radii", ex.radii, "network radii, comma separated")
        ->delimiter(',');
    extract->add_option("--qs", ex.qs, "hidden neuron counts, comma separated")
        ->delimiter(',');
    extract->add_option("--lambda", ex.lambda, "ridge regularization");
    extract->add_flag("--no-label-norm", ex.no_label_norm,
                      "train on raw out-degree labels");
    extract->add_option("--threads", ex.threads, "worker thread cap");

    EvalOpts ev;
    auto* eval = app.add_subcommand(
        "eval", "leave-one-out LDA evaluation of a feature CSV");
    eval->add_option("features", ev.features, "feature CSV from extract")->required();
    eval->add_option("--out", ev.out, "report stem (writes .json and .txt)");
    eval->add_option("--gamma", ev.gamma, "LDA covariance regularization");
    eval->add_option("--threads", ev.threads, "worker thread cap");

    RenderOpts rd;
    auto* render = app.add_subcommand(
        "render", "render a vertex-measure map of one image");
    render->add_option("image", rd.image, "input image")->required();
    render->add_option("--out", rd.out, "output image path")->required();
    render->add_option("--radius", rd.radius, "network radius");
    render->add_option("--measure", rd.measure, "k, ks, or ke");

    SweepOpts sw;
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "evaluate a grid of signature parameters");
    sweep_cmd->add_option("root", sw.root, "dataset root")->required();
    sweep_cmd->add_option("--out", sw.out, "output CSV path");
    sweep_cmd->add_option("--mode", sw.mode, "theta-pairs or psi-triples");
    sweep_cmd->add_option("--radii", sw.radii, "radius grid")->delimiter(',');
    sweep_cmd->add_option("--qs", sw.qs, "Q grid")->delimiter(',');
    sweep_cmd->add_option("--lambda", sw.lambda, "ridge regularization");
    sweep_cmd->add_flag("--no-label-norm", sw.no_label_norm,
                        "train on raw out-degree labels");
    sweep_cmd->add_option("--gamma", sw.gamma, "LDA covariance regularization");
    sweep_cmd->add_option("--threads", sw.threads, "worker thread cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (extract->parsed()) return run_extract(ex);
        if (eval->parsed()) return run_eval(ev);
        if (render->parsed()) return run_render(rd);
        return run_sweep(sw);
    } catch (const texnet::ParameterError& e) {
        std::fprintf(stderr, "texnet: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "texnet: %s\n", e.what());
        return 2;
    }
}
