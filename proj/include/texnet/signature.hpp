#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "texnet/image.hpp"
#include "texnet/network.hpp"

namespace texnet {

/// 3x3 sliding-window samples drawn from one set of measure maps. Column n
/// of each x_* matrix holds the eight neighbor values of the n-th interior
/// pixel in raster order (NW, N, NE, W, E, SW, S, SE); d_raw holds the
/// center vertex out-degree, the shared label for all three measures.
struct WindowSamples {
    Eigen::MatrixXd x_k;  // 8 x N
    Eigen::MatrixXd x_ks; // 8 x N
    Eigen::MatrixXd x_ke; // 8 x N
    Eigen::RowVectorXd d_raw;
};

/// One sample per pixel whose full 3x3 neighborhood is in-bounds
/// (N = (H-2) * (W-2)). Throws DimensionError below 3x3.
WindowSamples extract_windows(const MeasureMaps& maps);

struct SignatureParams {
    std::vector<double> radii{2.0, 9.0};
    std::vector<int> qs{4, 19, 29};
    double lambda = 1e-3;
    bool normalize_labels = true; // divide labels by the maximum possible out-degree
};

/// Flat feature vector plus the parameters that produced it. Values are
/// ordered Q-major, then radius, then measure (k, ks, ke).
struct Signature {
    std::vector<double> values;
    SignatureParams params;
};

/// Sum over Q of |radii| * 3 * (Q+1).
std::size_t signature_length(const SignatureParams& params);

/// Trained output weights of three networks (one per measure) sharing the
/// hidden weights for (Q, p=8): [f_k | f_ks | f_ke], length 3*(Q+1).
std::vector<double> signature_upsilon(const GrayImage& img, double r, int q_count,
                                      double lambda, bool normalize_labels = true);

/// Concatenation of upsilon over the given radii, in order. Duplicate radii
/// are rejected; the order given is the order produced.
std::vector<double> signature_theta(const GrayImage& img,
                                    const std::vector<double>& radii, int q_count,
                                    double lambda, bool normalize_labels = true);

/// Concatenation of theta over params.qs, in order.
Signature signature_psi(const GrayImage& img, const SignatureParams& params);

namespace detail {

/// Upsilon from already-extracted windows; lets callers reuse per-radius
/// window extraction across several Q values.
std::vector<double> upsilon_from_windows(const WindowSamples& ws, int max_degree,
                                         int q_count, double lambda,
                                         bool normalize_labels);

} // namespace detail

} // namespace texnet
