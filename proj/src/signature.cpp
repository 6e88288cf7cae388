#include "texnet/signature.hpp"

#include <unordered_set>

#include "texnet/error.hpp"
#include "texnet/rnn.hpp"

namespace texnet {

namespace {

constexpr int kWindowAttrs = 8;

// Raster order of window neighbors: NW, N, NE, W, E, SW, S, SE.
constexpr int kWindowOffsets[kWindowAttrs][2] = {
    {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1},
};

template <typename T>
void require_no_duplicates(const std::vector<T>& values, const char* what) {
    if (values.empty()) {
        throw ParameterError(std::string(what) + " list must be non-empty");
    }
    std::unordered_set<T> seen;
    for (const T& v : values) {
        if (!seen.insert(v).second) {
            throw ParameterError(std::string("duplicate ") + what + " value");
        }
    }
}

void append(std::vector<double>& dst, const std::vector<double>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

} // namespace

WindowSamples extract_windows(const MeasureMaps& maps) {
    if (maps.width < 3 || maps.height < 3) {
        throw DimensionError("image must be at least 3x3 for window extraction");
    }
    const Eigen::Index n =
        static_cast<Eigen::Index>(maps.width - 2) * (maps.height - 2);

    WindowSamples ws;
    ws.x_k.resize(kWindowAttrs, n);
    ws.x_ks.resize(kWindowAttrs, n);
    ws.x_ke.resize(kWindowAttrs, n);
    ws.d_raw.resize(n);

    Eigen::Index col = 0;
    for (int y = 1; y < maps.height - 1; ++y) {
        for (int x = 1; x < maps.width - 1; ++x, ++col) {
            for (int a = 0; a < kWindowAttrs; ++a) {
                const int ny = y + kWindowOffsets[a][0];
                const int nx = x + kWindowOffsets[a][1];
                ws.x_k(a, col) = maps.k_at(ny, nx);
                ws.x_ks(a, col) = maps.ks_at(ny, nx);
                ws.x_ke(a, col) = maps.ke_at(ny, nx);
            }
            ws.d_raw(col) = maps.k_at(y, x);
        }
    }
    return ws;
}

namespace detail {

std::vector<double> upsilon_from_windows(const WindowSamples& ws, int max_degree,
                                         int q_count, double lambda,
                                         bool normalize_labels) {
    Eigen::RowVectorXd d = ws.d_raw;
    if (normalize_labels) {
        d /= static_cast<double>(max_degree);
    }
    const HiddenWeights hw = build_hidden_weights(q_count, kWindowAttrs);

    std::vector<double> out;
    out.reserve(3 * (q_count + 1));
    for (const Eigen::MatrixXd* attrs : {&ws.x_k, &ws.x_ks, &ws.x_ke}) {
        const TrainingSet ts = make_training_set(*attrs, d);
        const OutputWeights ow = solve_output_weights(ts, hw, lambda);
        out.insert(out.end(), ow.f.data(), ow.f.data() + ow.f.size());
    }
    return out;
}

} // namespace detail

std::size_t signature_length(const SignatureParams& params) {
    std::size_t total = 0;
    for (int q : params.qs) {
        total += params.radii.size() * 3 * (q + 1);
    }
    return total;
}

std::vector<double> signature_upsilon(const GrayImage& img, double r, int q_count,
                                      double lambda, bool normalize_labels) {
    const MeasureMaps maps = compute_measures(img, r);
    const WindowSamples ws = extract_windows(maps);
    return detail::upsilon_from_windows(ws, maps.max_degree, q_count, lambda,
                                        normalize_labels);
}

std::vector<double> signature_theta(const GrayImage& img,
                                    const std::vector<double>& radii, int q_count,
                                    double lambda, bool normalize_labels) {
    require_no_duplicates(radii, "radius");
    std::vector<double> out;
    for (double r : radii) {
        append(out, signature_upsilon(img, r, q_count, lambda, normalize_labels));
    }
    return out;
}

Signature signature_psi(const GrayImage& img, const SignatureParams& params) {
    require_no_duplicates(params.radii, "radius");
    require_no_duplicates(params.qs, "Q");
    if (!(params.lambda > 0.0)) {
        throw ParameterError("lambda must be positive");
    }

    // Window extraction is radius-dependent but Q-independent; do it once
    // per radius and reuse across all Q values.
    std::vector<MeasureMaps> maps;
    std::vector<WindowSamples> windows;
    maps.reserve(params.radii.size());
    windows.reserve(params.radii.size());
    for (double r : params.radii) {
        maps.push_back(compute_measures(img, r));
        windows.push_back(extract_windows(maps.back()));
    }

    Signature sig;
    sig.params = params;
    sig.values.reserve(signature_length(params));
    for (int q : params.qs) {
        for (std::size_t i = 0; i < windows.size(); ++i) {
            append(sig.values,
                   detail::upsilon_from_windows(windows[i], maps[i].max_degree, q,
                                                params.lambda,
                                                params.normalize_labels));
        }
    }
    return sig;
}

} // namespace texnet
