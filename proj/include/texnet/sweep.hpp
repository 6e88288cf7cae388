#pragma once

#include <vector>

#include "texnet/dataset.hpp"
#include "texnet/lda.hpp"
#include "texnet/signature.hpp"

namespace texnet {

enum class SweepMode { ThetaPairs, PsiTriples };

struct SweepRow {
    std::vector<double> radii;
    std::vector<int> qs;
    int feature_count = 0;
    double accuracy = 0.0;
};

struct SweepConfig {
    double lambda = 1e-3;
    bool normalize_labels = true;
    double gamma = 1e-4;
    int threads = 1;
};

/// Grid evaluation of signature parameters with leave-one-out LDA.
///
/// ThetaPairs: theta with Q = q_grid.front() for every single radius and
/// every unordered pair (r1 < r2) from r_grid; rows follow the nested
/// upper-triangular order (r1, r1), (r1, r2), ...
///
/// PsiTriples: psi for every 3-subset of q_grid (lexicographic order) with
/// the full r_grid as the radius list.
///
/// Per-image upsilon vectors are cached so each (image, r, Q) triple is
/// computed once.
std::vector<SweepRow> sweep(const LabeledDataset& dataset,
                            const std::vector<double>& r_grid,
                            const std::vector<int>& q_grid, SweepMode mode,
                            const SweepConfig& config = {});

} // namespace texnet
