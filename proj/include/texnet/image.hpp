#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "texnet/error.hpp"

namespace texnet {

/// 8-bit grayscale raster, row-major, intensities in [0, max_level].
struct GrayImage {
    int width = 0;
    int height = 0;
    int max_level = 255;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0, int level = 255);

    std::uint8_t at(int y, int x) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(int y, int x) {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    std::size_t pixel_count() const { return pixels.size(); }
    bool empty() const { return pixels.empty(); }
};

/// Loads a raster file (PNG, PGM, BMP, TIFF, JPEG) as 8-bit grayscale with
/// max_level 255. Color inputs are converted with BT.601 luminance
/// (0.299 R + 0.587 G + 0.114 B) rounded half away from zero; 16-bit inputs
/// are rescaled to [0, 255] with the same rounding.
GrayImage load_gray(const std::string& path);

/// Writes an 8-bit grayscale image; the format is chosen by file extension.
void save_gray(const GrayImage& img, const std::string& path);

} // namespace texnet
