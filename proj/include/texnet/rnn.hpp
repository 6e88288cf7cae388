#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace texnet {

/// Deterministic congruential sequence seeding the hidden-layer weights.
/// For length E: a = E+2, b = E+3, c = E*E, V(1) = E+1 and
/// V(n+1) = (a*V(n) + b) mod c.
struct LcgSequence {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;
    std::vector<double> values; // V(1) .. V(E)
};

/// Sequence of length q_count * (attr_count + 1).
LcgSequence lcg_generate(int q_count, int attr_count);

/// Hidden-layer weights: Q x (p+1), each row standardized to zero mean and
/// unit population standard deviation. A pure function of (Q, p).
struct HiddenWeights {
    int q_count = 0;    // Q, hidden neurons
    int attr_count = 0; // p, attributes excluding bias
    Eigen::MatrixXd w;  // Q x (p+1)
};

/// Throws NumericError if a constant sequence segment leaves a row with
/// zero variance.
HiddenWeights build_hidden_weights(int q_count, int attr_count);

/// Inputs for one output-weight solve: x is (p+1) x N with a leading bias
/// row of ones followed by standardized attribute rows; d is 1 x N.
struct TrainingSet {
    Eigen::MatrixXd x;
    Eigen::RowVectorXd d;
    int attr_count = 0; // p
};

/// Standardizes each attribute row of `attrs` (p x N) to zero mean and unit
/// population standard deviation (constant rows become all zeros), then
/// prepends the bias row of ones.
TrainingSet make_training_set(const Eigen::MatrixXd& attrs,
                              const Eigen::RowVectorXd& labels);

struct OutputWeights {
    Eigen::RowVectorXd f; // length Q+1
    double lambda = 0.0;
};

/// Ridge-solved output weights f = D Z^T (Z Z^T + lambda I)^-1 with
/// Z = [sigmoid(W X); 1], computed via a Cholesky solve of the normal
/// equations (never an explicit inverse).
OutputWeights solve_output_weights(const TrainingSet& ts,
                                   const HiddenWeights& hw,
                                   double lambda);

} // namespace texnet
