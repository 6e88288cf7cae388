#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "texnet/image.hpp"

namespace texnet {

/// One displacement inside a circular pixel neighborhood.
struct Offset {
    int dy = 0;
    int dx = 0;
    double dist = 0.0; // Euclidean length of (dy, dx)
};

/// All integer displacements with Euclidean norm <= radius, excluding (0,0).
/// Symmetric: (dy,dx) present iff (-dy,-dx) present.
struct NeighborhoodOffsets {
    double radius = 0.0;
    std::vector<Offset> offsets;
};

/// Throws ParameterError for r < 1. Membership uses exact arithmetic on
/// squared distances (dy*dy + dx*dx <= r*r).
NeighborhoodOffsets offsets_for(double r);

/// Weight of a connection between pixels of intensities ia and ib at
/// distance dist, for modeling radius r and intensity ceiling `level`.
/// Result is in [0, 1]. Expects 0 <= ia, ib <= level and 1 <= dist <= r.
inline double edge_weight(int ia, int ib, double dist, double r, int level) {
    const double intensity = std::abs(ia - ib) / static_cast<double>(level);
    if (r == 1.0) {
        return intensity;
    }
    return ((dist - 1.0) / (r - 1.0) + intensity) * 0.5;
}

struct DirectedEdge {
    int target = 0;             // pixel index of the edge head
    double weight = 0.0;
    bool bidirectional = false; // the reverse edge exists too
};

/// Out-edges of pixel `index`: one edge toward every in-bounds neighbor of
/// strictly higher intensity, plus a bidirectional edge for every neighbor
/// of equal intensity. Neighbors outside the image are skipped.
std::vector<DirectedEdge> directed_edges(const GrayImage& img, int index, double r);

/// Per-pixel topological measures of the pixel network of one radius.
/// k is the out-degree (edge count), ks the weighted out-degree (strength),
/// ke the weighted in-degree.
struct MeasureMaps {
    int width = 0;
    int height = 0;
    double radius = 0.0;
    int max_degree = 0; // |offsets(radius)|, the densest possible vertex
    std::vector<double> k;
    std::vector<double> ks;
    std::vector<double> ke;

    double k_at(int y, int x) const { return k[static_cast<std::size_t>(y) * width + x]; }
    double ks_at(int y, int x) const { return ks[static_cast<std::size_t>(y) * width + x]; }
    double ke_at(int y, int x) const { return ke[static_cast<std::size_t>(y) * width + x]; }
};

enum class Measure { OutDegree, OutStrength, InStrength };

/// Parses "k" | "ks" | "ke"; throws ParameterError otherwise.
Measure measure_from_name(const std::string& name);

MeasureMaps compute_measures(const GrayImage& img, double r);

/// Renders one measure field as an 8-bit image, scaling by the maximum
/// possible vertex degree and clamping to [0, 255].
GrayImage render_measure(const MeasureMaps& maps, Measure which);

} // namespace texnet
