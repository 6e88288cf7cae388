#include "texnet/sweep.hpp"

#include <unordered_set>

#include "texnet/error.hpp"
#include "texnet/parallel.hpp"

namespace texnet {

namespace {

// upsilons[image][r_index][q_index]
using UpsilonCache = std::vector<std::vector<std::vector<std::vector<double>>>>;

UpsilonCache build_cache(const LabeledDataset& dataset,
                         const std::vector<double>& r_grid,
                         const std::vector<int>& q_grid,
                         const SweepConfig& config) {
    UpsilonCache cache(dataset.samples.size());
    parallel_for(dataset.samples.size(), config.threads, [&](std::size_t i) {
        const GrayImage img = load_gray(dataset.samples[i].path);
        auto& per_radius = cache[i];
        per_radius.resize(r_grid.size());
        for (std::size_t ri = 0; ri < r_grid.size(); ++ri) {
            const MeasureMaps maps = compute_measures(img, r_grid[ri]);
            const WindowSamples ws = extract_windows(maps);
            per_radius[ri].reserve(q_grid.size());
            for (int q : q_grid) {
                per_radius[ri].push_back(detail::upsilon_from_windows(
                    ws, maps.max_degree, q, config.lambda, config.normalize_labels));
            }
        }
    });
    return cache;
}

// Concatenates cached upsilons Q-major, radius-minor, into a feature table.
FeatureTable assemble(const LabeledDataset& dataset, const UpsilonCache& cache,
                      const std::vector<std::size_t>& r_indices,
                      const std::vector<std::size_t>& q_indices) {
    Eigen::Index width = 0;
    for (std::size_t qi : q_indices) {
        for (std::size_t ri : r_indices) {
            width += static_cast<Eigen::Index>(cache[0][ri][qi].size());
        }
    }
    FeatureTable table;
    table.rows.resize(static_cast<Eigen::Index>(dataset.samples.size()), width);
    table.labels.reserve(dataset.samples.size());
    for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
        Eigen::Index col = 0;
        for (std::size_t qi : q_indices) {
            for (std::size_t ri : r_indices) {
                const auto& values = cache[i][ri][qi];
                for (double v : values) table.rows(static_cast<Eigen::Index>(i), col++) = v;
            }
        }
        table.labels.push_back(dataset.samples[i].class_id);
    }
    return table;
}

template <typename T>
void require_grid(const std::vector<T>& grid, const char* what) {
    if (grid.empty()) {
        throw ParameterError(std::string(what) + " grid must be non-empty");
    }
    std::unordered_set<T> seen;
    for (const T& v : grid) {
        if (!seen.insert(v).second) {
            throw ParameterError(std::string("duplicate value in ") + what + " grid");
        }
    }
}

} // namespace

std::vector<SweepRow> sweep(const LabeledDataset& dataset,
                            const std::vector<double>& r_grid,
                            const std::vector<int>& q_grid, SweepMode mode,
                            const SweepConfig& config) {
    require_grid(r_grid, "radius");
    require_grid(q_grid, "Q");
    if (dataset.samples.empty()) {
        throw DatasetError("dataset has no samples");
    }
    if (mode == SweepMode::PsiTriples && q_grid.size() < 3) {
        throw ParameterError("psi-triples mode needs at least 3 Q values");
    }

    std::vector<SweepRow> rows;
    if (mode == SweepMode::ThetaPairs) {
        // Only the leading Q is evaluated; cache just that column.
        const std::vector<int> q_used{q_grid.front()};
        const UpsilonCache cache = build_cache(dataset, r_grid, q_used, config);
        for (std::size_t i = 0; i < r_grid.size(); ++i) {
            for (std::size_t j = i; j < r_grid.size(); ++j) {
                std::vector<std::size_t> r_indices{i};
                if (j != i) r_indices.push_back(j);
                const FeatureTable table = assemble(dataset, cache, r_indices, {0});
                const EvalResult result =
                    leave_one_out(table, config.gamma, config.threads);
                SweepRow row;
                row.radii = {r_grid[i]};
                if (j != i) row.radii.push_back(r_grid[j]);
                row.qs = q_used;
                row.feature_count = static_cast<int>(table.rows.cols());
                row.accuracy = result.accuracy;
                rows.push_back(std::move(row));
            }
        }
    } else {
        const UpsilonCache cache = build_cache(dataset, r_grid, q_grid, config);
        std::vector<std::size_t> all_r(r_grid.size());
        for (std::size_t i = 0; i < all_r.size(); ++i) all_r[i] = i;
        for (std::size_t a = 0; a < q_grid.size(); ++a) {
            for (std::size_t b = a + 1; b < q_grid.size(); ++b) {
                for (std::size_t c = b + 1; c < q_grid.size(); ++c) {
                    const FeatureTable table = assemble(dataset, cache, all_r, {a, b, c});
                    const EvalResult result =
                        leave_one_out(table, config.gamma, config.threads);
                    SweepRow row;
                    row.radii = r_grid;
                    row.qs = {q_grid[a], q_grid[b], q_grid[c]};
                    row.feature_count = static_cast<int>(table.rows.cols());
                    row.accuracy = result.accuracy;
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

} // namespace texnet
