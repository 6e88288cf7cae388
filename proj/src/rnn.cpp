#include "texnet/rnn.hpp"

#include <cmath>

#include "texnet/error.hpp"

namespace texnet {

LcgSequence lcg_generate(int q_count, int attr_count) {
    if (q_count < 1 || attr_count < 1) {
        throw ParameterError("q_count and attr_count must be >= 1");
    }
    const std::int64_t len =
        static_cast<std::int64_t>(q_count) * (attr_count + 1);
    LcgSequence seq;
    seq.a = len + 2;
    seq.b = len + 3;
    seq.c = len * len;
    seq.values.reserve(static_cast<std::size_t>(len));
    std::int64_t v = len + 1;
    seq.values.push_back(static_cast<double>(v));
    for (std::int64_t n = 1; n < len; ++n) {
        v = (seq.a * v + seq.b) % seq.c;
        seq.values.push_back(static_cast<double>(v));
    }
    return seq;
}

namespace {

// Zero mean, unit population standard deviation. Constant rows map to zero.
// The flexible inner stride lets matrix rows bind directly.
void standardize_row(Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> row,
                     bool allow_constant) {
    const double mean = row.mean();
    row.array() -= mean;
    const double var = row.squaredNorm() / row.size();
    if (var > 0.0) {
        row /= std::sqrt(var);
    } else if (!allow_constant) {
        throw NumericError("degenerate hidden weights: constant sequence segment");
    }
}

} // namespace

HiddenWeights build_hidden_weights(int q_count, int attr_count) {
    const LcgSequence seq = lcg_generate(q_count, attr_count);
    const int cols = attr_count + 1;

    HiddenWeights hw;
    hw.q_count = q_count;
    hw.attr_count = attr_count;
    hw.w.resize(q_count, cols);
    for (int q = 0; q < q_count; ++q) {
        for (int j = 0; j < cols; ++j) {
            hw.w(q, j) = seq.values[static_cast<std::size_t>(q) * cols + j];
        }
        standardize_row(hw.w.row(q), /*allow_constant=*/false);
    }
    return hw;
}

TrainingSet make_training_set(const Eigen::MatrixXd& attrs,
                              const Eigen::RowVectorXd& labels) {
    if (attrs.cols() != labels.cols()) {
        throw ParameterError("attribute and label sample counts differ");
    }
    if (attrs.rows() < 1 || attrs.cols() < 1) {
        throw ParameterError("training set must be non-empty");
    }
    TrainingSet ts;
    ts.attr_count = static_cast<int>(attrs.rows());
    ts.x.resize(attrs.rows() + 1, attrs.cols());
    ts.x.row(0).setOnes();
    ts.x.bottomRows(attrs.rows()) = attrs;
    for (int i = 1; i <= attrs.rows(); ++i) {
        standardize_row(ts.x.row(i), /*allow_constant=*/true);
    }
    ts.d = labels;
    return ts;
}

OutputWeights solve_output_weights(const TrainingSet& ts,
                                   const HiddenWeights& hw,
                                   double lambda) {
    if (ts.attr_count != hw.attr_count) {
        throw ParameterError("training set and hidden weights disagree on attribute count");
    }
    if (!(lambda > 0.0)) {
        throw ParameterError("lambda must be positive");
    }
    if (!ts.x.allFinite() || !ts.d.allFinite()) {
        throw NumericError("non-finite values in training data");
    }

    const int q = hw.q_count;
    const Eigen::Index n = ts.x.cols();

    // Z = [sigmoid(W X); 1], (Q+1) x N
    Eigen::MatrixXd z(q + 1, n);
    z.topRows(q).noalias() = hw.w * ts.x;
    z.topRows(q) = (1.0 + (-z.topRows(q).array()).exp()).inverse();
    z.row(q).setOnes();

    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(q + 1, q + 1);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(z);
    gram = gram.selfadjointView<Eigen::Lower>();
    gram.diagonal().array() += lambda;

    Eigen::VectorXd rhs = z * ts.d.transpose();
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) {
        throw NumericError("output-weight solve failed: Gram matrix not positive definite");
    }

    OutputWeights out;
    out.f = llt.solve(rhs).transpose();
    out.lambda = lambda;
    return out;
}

} // namespace texnet
