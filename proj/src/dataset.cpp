#include "texnet/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>

#include "texnet/error.hpp"

namespace fs = std::filesystem;

namespace texnet {

bool is_supported_image(const std::string& filename) {
    auto dot = filename.find_last_of('.');
    if (dot == std::string::npos) return false;
    std::string ext = filename.substr(dot);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".pgm" || ext == ".bmp" || ext == ".tif" ||
           ext == ".tiff" || ext == ".jpg" || ext == ".jpeg";
}

LabeledDataset scan_dataset(const std::string& root) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) {
        throw DatasetError("dataset root is not a directory: " + root);
    }

    std::vector<std::string> class_dirs;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory()) {
            class_dirs.push_back(entry.path().filename().string());
        }
    }
    if (class_dirs.empty()) {
        throw DatasetError("dataset root has no class subdirectories: " + root);
    }
    std::sort(class_dirs.begin(), class_dirs.end());

    LabeledDataset out;
    out.class_names = class_dirs;
    for (int class_id = 0; class_id < static_cast<int>(class_dirs.size()); ++class_id) {
        const fs::path dir = fs::path(root) / class_dirs[class_id];
        std::vector<std::string> files;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.is_regular_file() &&
                is_supported_image(entry.path().filename().string())) {
                files.push_back(entry.path().string());
            }
        }
        if (files.empty()) {
            throw DatasetError("class has no images: " + dir.string());
        }
        std::sort(files.begin(), files.end());
        for (auto& f : files) {
            out.samples.push_back({std::move(f), class_id});
        }
    }
    return out;
}

} // namespace texnet
