#pragma once

#include <string>
#include <vector>

namespace texnet {

struct LabeledSample {
    std::string path;
    int class_id = 0;
};

/// Class-labeled image collection scanned from a directory tree with one
/// subdirectory per class. Sample order is deterministic (lexicographic by
/// path); class ids follow lexicographic subdirectory order.
struct LabeledDataset {
    std::vector<LabeledSample> samples;
    std::vector<std::string> class_names;
};

/// Scans `<root>/<class_name>/<image file>`. Non-image files are ignored.
/// Throws DatasetError for an empty root or a class with zero images.
LabeledDataset scan_dataset(const std::string& root);

/// True if the extension names a supported raster format
/// (.png .pgm .bmp .tif .tiff .jpg .jpeg, case-insensitive).
bool is_supported_image(const std::string& filename);

} // namespace texnet
