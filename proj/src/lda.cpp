#include "texnet/lda.hpp"

#include <algorithm>
#include <cmath>

#include "texnet/error.hpp"
#include "texnet/parallel.hpp"

namespace texnet {

namespace {

std::vector<int> class_counts(const FeatureTable& table, int class_count) {
    std::vector<int> counts(class_count, 0);
    for (int label : table.labels) {
        if (label < 0 || label >= class_count) {
            throw ParameterError("class label out of range");
        }
        ++counts[label];
    }
    return counts;
}

} // namespace

int FeatureTable::class_count() const {
    int c = 0;
    for (int label : labels) c = std::max(c, label + 1);
    return c;
}

LdaModel lda_fit(const FeatureTable& train, double gamma) {
    const Eigen::Index n = train.rows.rows();
    const Eigen::Index f = train.rows.cols();
    if (f < 1) {
        throw ParameterError("feature dimension must be >= 1");
    }
    if (static_cast<Eigen::Index>(train.labels.size()) != n) {
        throw ParameterError("label count does not match sample count");
    }
    const int c = train.class_count();
    if (c < 2) {
        throw ParameterError("LDA needs at least two classes");
    }
    const std::vector<int> counts = class_counts(train, c);
    for (int cls = 0; cls < c; ++cls) {
        if (counts[cls] == 0) {
            throw ParameterError("class with no training samples");
        }
    }
    if (n <= c) {
        throw NumericError("too few samples to estimate pooled covariance");
    }

    LdaModel model;
    model.means = Eigen::MatrixXd::Zero(c, f);
    for (Eigen::Index i = 0; i < n; ++i) {
        model.means.row(train.labels[i]) += train.rows.row(i);
    }
    for (int cls = 0; cls < c; ++cls) {
        model.means.row(cls) /= counts[cls];
    }

    // Pooled within-class scatter, divisor N - C.
    Eigen::MatrixXd sw = Eigen::MatrixXd::Zero(f, f);
    Eigen::VectorXd centered(f);
    for (Eigen::Index i = 0; i < n; ++i) {
        centered = train.rows.row(i) - model.means.row(train.labels[i]);
        sw.selfadjointView<Eigen::Lower>().rankUpdate(centered, 1.0);
    }
    sw = sw.selfadjointView<Eigen::Lower>();
    sw /= static_cast<double>(n - c);

    sw.diagonal().array() += gamma * sw.diagonal().mean();

    Eigen::LLT<Eigen::MatrixXd> llt(sw);
    if (llt.info() != Eigen::Success) {
        throw NumericError("singular within-class covariance");
    }

    model.discriminants = llt.solve(model.means.transpose());
    model.bias.resize(c);
    for (int cls = 0; cls < c; ++cls) {
        model.bias(cls) = -0.5 * model.means.row(cls).dot(model.discriminants.col(cls)) +
                          std::log(static_cast<double>(counts[cls]) / n);
    }
    return model;
}

Eigen::VectorXd lda_scores(const LdaModel& model,
                           const Eigen::Ref<const Eigen::VectorXd>& x) {
    return model.discriminants.transpose() * x + model.bias;
}

int lda_predict(const LdaModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
    const Eigen::VectorXd scores = lda_scores(model, x);
    int best = 0;
    for (int cls = 1; cls < scores.size(); ++cls) {
        if (scores(cls) > scores(best)) best = cls;
    }
    return best;
}

EvalResult leave_one_out(const FeatureTable& table, double gamma, int threads) {
    const Eigen::Index n = table.rows.rows();
    if (static_cast<Eigen::Index>(table.labels.size()) != n) {
        throw ParameterError("label count does not match sample count");
    }
    const int c = table.class_count();
    if (c < 2) {
        throw ParameterError("leave-one-out needs at least two classes");
    }
    const std::vector<int> counts = class_counts(table, c);
    for (int cls = 0; cls < c; ++cls) {
        if (counts[cls] < 2) {
            throw ParameterError("leave-one-out needs at least two samples per class");
        }
    }

    std::vector<int> predictions(n);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t fold) {
        FeatureTable train;
        train.rows.resize(n - 1, table.rows.cols());
        train.labels.reserve(n - 1);
        Eigen::Index row = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == static_cast<Eigen::Index>(fold)) continue;
            train.rows.row(row++) = table.rows.row(i);
            train.labels.push_back(table.labels[i]);
        }
        const LdaModel model = lda_fit(train, gamma);
        predictions[fold] = lda_predict(model, table.rows.row(fold).transpose());
    });

    EvalResult result;
    result.confusion = Eigen::MatrixXi::Zero(c, c);
    for (Eigen::Index i = 0; i < n; ++i) {
        result.confusion(table.labels[i], predictions[i]) += 1;
    }
    result.accuracy = result.confusion.diagonal().sum() / static_cast<double>(n);
    result.per_class.resize(c);
    for (int cls = 0; cls < c; ++cls) {
        result.per_class[cls] =
            result.confusion(cls, cls) / static_cast<double>(counts[cls]);
    }
    return result;
}

} // namespace texnet
