#include "texnet/network.hpp"

#include <cmath>

#include "texnet/error.hpp"

namespace texnet {

NeighborhoodOffsets offsets_for(double r) {
    if (!(r >= 1.0)) {
        throw ParameterError("neighborhood radius must be >= 1");
    }
    NeighborhoodOffsets out;
    out.radius = r;
    const int reach = static_cast<int>(std::floor(r));
    const double r2 = r * r;
    for (int dy = -reach; dy <= reach; ++dy) {
        for (int dx = -reach; dx <= reach; ++dx) {
            if (dy == 0 && dx == 0) continue;
            const int d2 = dy * dy + dx * dx;
            if (static_cast<double>(d2) <= r2) {
                out.offsets.push_back({dy, dx, std::sqrt(static_cast<double>(d2))});
            }
        }
    }
    return out;
}

std::vector<DirectedEdge> directed_edges(const GrayImage& img, int index, double r) {
    if (img.empty()) {
        throw ParameterError("empty image");
    }
    if (index < 0 || index >= static_cast<int>(img.pixel_count())) {
        throw ParameterError("pixel index out of bounds");
    }
    const NeighborhoodOffsets hood = offsets_for(r);
    const int y = index / img.width;
    const int x = index % img.width;
    const int center = img.at(y, x);

    std::vector<DirectedEdge> edges;
    for (const Offset& o : hood.offsets) {
        const int ny = y + o.dy;
        const int nx = x + o.dx;
        if (ny < 0 || ny >= img.height || nx < 0 || nx >= img.width) continue;
        const int neighbor = img.at(ny, nx);
        if (neighbor < center) continue; // edge points the other way
        const double w = edge_weight(center, neighbor, o.dist, r, img.max_level);
        edges.push_back({ny * img.width + nx, w, neighbor == center});
    }
    return edges;
}

MeasureMaps compute_measures(const GrayImage& img, double r) {
    if (img.empty()) {
        throw ParameterError("empty image");
    }
    const NeighborhoodOffsets hood = offsets_for(r);

    MeasureMaps maps;
    maps.width = img.width;
    maps.height = img.height;
    maps.radius = r;
    maps.max_degree = static_cast<int>(hood.offsets.size());
    maps.k.assign(img.pixel_count(), 0.0);
    maps.ks.assign(img.pixel_count(), 0.0);
    maps.ke.assign(img.pixel_count(), 0.0);

    const int level = img.max_level;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * img.width + x;
            const int center = img.at(y, x);
            double k = 0.0, ks = 0.0, ke = 0.0;
            for (const Offset& o : hood.offsets) {
                const int ny = y + o.dy;
                const int nx = x + o.dx;
                if (ny < 0 || ny >= img.height || nx < 0 || nx >= img.width) continue;
                const int neighbor = img.at(ny, nx);
                const double w = edge_weight(center, neighbor, o.dist, r, level);
                if (neighbor > center) {
                    k += 1.0;
                    ks += w;
                } else if (neighbor < center) {
                    ke += w;
                } else { // equal intensity: bidirectional edge
                    k += 1.0;
                    ks += w;
                    ke += w;
                }
            }
            maps.k[i] = k;
            maps.ks[i] = ks;
            maps.ke[i] = ke;
        }
    }
    return maps;
}

Measure measure_from_name(const std::string& name) {
    if (name == "k") return Measure::OutDegree;
    if (name == "ks") return Measure::OutStrength;
    if (name == "ke") return Measure::InStrength;
    throw ParameterError("unknown measure (expected k, ks, or ke): " + name);
}

GrayImage render_measure(const MeasureMaps& maps, Measure which) {
    if (maps.k.empty()) {
        throw ParameterError("empty measure maps");
    }
    const std::vector<double>* field = nullptr;
    switch (which) {
        case Measure::OutDegree: field = &maps.k; break;
        case Measure::OutStrength: field = &maps.ks; break;
        case Measure::InStrength: field = &maps.ke; break;
    }
    GrayImage out(maps.width, maps.height);
    const double scale = 255.0 / maps.max_degree;
    for (std::size_t i = 0; i < field->size(); ++i) {
        long v = std::lround((*field)[i] * scale);
        if (v < 0) v = 0;
        if (v > 255) v = 255;
        out.pixels[i] = static_cast<std::uint8_t>(v);
    }
    return out;
}

} // namespace texnet
