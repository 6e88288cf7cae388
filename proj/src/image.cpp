#include "texnet/image.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <cmath>
#include <filesystem>

namespace texnet {

GrayImage::GrayImage(int w, int h, std::uint8_t fill, int level)
    : width(w),
      height(h),
      max_level(level),
      pixels(static_cast<std::size_t>(w <= 0 ? 0 : w) * (h <= 0 ? 0 : h), fill) {
    if (w <= 0 || h <= 0) {
        throw ParameterError("image dimensions must be positive");
    }
    if (level <= 0) {
        throw ParameterError("max_level must be positive");
    }
}

namespace {

std::uint8_t to_level_255(double value, double source_max) {
    double scaled = value * 255.0 / source_max;
    long v = std::lround(scaled);
    if (v < 0) v = 0;
    if (v > 255) v = 255;
    return static_cast<std::uint8_t>(v);
}

// BT.601 luminance; channels given in OpenCV's BGR order.
double luminance(double b, double g, double r) {
    return 0.299 * r + 0.587 * g + 0.114 * b;
}

} // namespace

GrayImage load_gray(const std::string& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw IoError("cannot read image file: " + path);
    }

    cv::Mat raw;
    try {
        raw = cv::imread(path, cv::IMREAD_ANYDEPTH | cv::IMREAD_ANYCOLOR);
    } catch (const cv::Exception& e) {
        throw FormatError("failed to decode " + path + ": " + e.what());
    }
    if (raw.empty()) {
        throw FormatError("unsupported or corrupt raster file: " + path);
    }

    const int depth = raw.depth();
    if (depth != CV_8U && depth != CV_16U) {
        throw FormatError("unsupported pixel depth in " + path);
    }
    const double source_max = depth == CV_8U ? 255.0 : 65535.0;
    const int channels = raw.channels();
    if (channels != 1 && channels != 3) {
        throw FormatError("unsupported channel count in " + path);
    }

    GrayImage out(raw.cols, raw.rows);
    for (int y = 0; y < raw.rows; ++y) {
        for (int x = 0; x < raw.cols; ++x) {
            double value;
            if (channels == 1) {
                value = depth == CV_8U ? raw.at<std::uint8_t>(y, x)
                                       : raw.at<std::uint16_t>(y, x);
            } else if (depth == CV_8U) {
                const auto px = raw.at<cv::Vec3b>(y, x);
                value = luminance(px[0], px[1], px[2]);
            } else {
                const auto px = raw.at<cv::Vec3w>(y, x);
                value = luminance(px[0], px[1], px[2]);
            }
            out.at(y, x) = to_level_255(value, source_max);
        }
    }
    return out;
}

void save_gray(const GrayImage& img, const std::string& path) {
    if (img.empty()) {
        throw ParameterError("cannot save an empty image");
    }
    cv::Mat m(img.height, img.width, CV_8UC1,
              const_cast<std::uint8_t*>(img.pixels.data()));
    bool ok = false;
    try {
        ok = cv::imwrite(path, m);
    } catch (const cv::Exception& e) {
        throw FormatError("failed to encode " + path + ": " + e.what());
    }
    if (!ok) {
        throw IoError("failed to write image file: " + path);
    }
}

} // namespace texnet
