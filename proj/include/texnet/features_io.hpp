#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "texnet/lda.hpp"
#include "texnet/signature.hpp"
#include "texnet/sweep.hpp"

namespace texnet {

/// One extracted feature row: image path, class name, signature values.
struct FeatureRecord {
    std::string path;
    std::string class_name;
    std::vector<double> values;
};

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

/// FNV-1a 64-bit hash, used to bind a feature CSV to its sidecar.
std::uint64_t fnv1a64(std::string_view data);

/// Writes the feature CSV (header `path,class,f0,...`) and its JSON sidecar
/// at `<path>.meta.json`. The sidecar records the extraction parameters,
/// measure order, library version, class names, and the CSV content hash.
void write_features_csv(const std::string& path,
                        const std::vector<FeatureRecord>& records,
                        const SignatureParams& params,
                        const std::vector<std::string>& class_names);

struct LoadedFeatures {
    std::vector<FeatureRecord> records;
    std::vector<std::string> class_names;
    SignatureParams params;
};

/// Reads a feature CSV and validates it against its sidecar (present,
/// parseable, hash match). Throws ParseError with a line number for
/// malformed rows and ValidationError for sidecar mismatches.
LoadedFeatures read_features_csv(const std::string& path);

/// Maps class names to ids using the sidecar's class order.
FeatureTable to_feature_table(const LoadedFeatures& loaded);

void write_eval_json(const std::string& path, const EvalResult& result,
                     const std::vector<std::string>& class_names);
void write_eval_text(const std::string& path, const EvalResult& result,
                     const std::vector<std::string>& class_names);

/// One row per parameter combination: radii, qs, feature count, accuracy.
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

} // namespace texnet
