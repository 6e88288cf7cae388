#pragma once

#include <Eigen/Dense>

#include <vector>

namespace texnet {

/// Sample matrix (rows = samples) plus integer class labels in [0, C).
struct FeatureTable {
    Eigen::MatrixXd rows;    // N x F
    std::vector<int> labels; // N

    int class_count() const;
};

/// Linear discriminant model: class means, pooled within-class covariance
/// regularized by gamma * mean(diag(S_w)) * I, and frequency priors.
struct LdaModel {
    Eigen::MatrixXd means;        // C x F
    Eigen::MatrixXd discriminants; // F x C, Sigma^-1 mu_c per column
    Eigen::VectorXd bias;         // C: -0.5 mu_c' Sigma^-1 mu_c + log prior
};

/// Throws NumericError when the regularized covariance is not positive
/// definite (e.g. gamma = 0 with singular within-class scatter).
LdaModel lda_fit(const FeatureTable& train, double gamma = 1e-4);

/// Linear discriminant scores, one per class.
Eigen::VectorXd lda_scores(const LdaModel& model,
                           const Eigen::Ref<const Eigen::VectorXd>& x);

/// Argmax of the scores; ties break toward the lowest class id.
int lda_predict(const LdaModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

struct EvalResult {
    double accuracy = 0.0;
    Eigen::MatrixXi confusion;     // C x C, rows = true class
    std::vector<double> per_class; // per-class accuracy
};

/// Leave-one-out cross-validation with a full per-fold LDA refit.
/// Requires at least 2 classes and at least 2 samples per class.
EvalResult leave_one_out(const FeatureTable& table, double gamma = 1e-4,
                         int threads = 1);

} // namespace texnet
