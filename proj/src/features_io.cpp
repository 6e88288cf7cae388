#include "texnet/features_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "texnet/error.hpp"
#include "texnet/version.hpp"

namespace texnet {

namespace {

using nlohmann::json;

const std::array<const char*, 3> kMeasureOrder = {"k", "ks", "ke"};

std::string sidecar_path(const std::string& csv_path) {
    return csv_path + ".meta.json";
}

// Quotes a CSV field only when it contains a delimiter, quote, or newline.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

// Splits one CSV line, honoring double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    i += 2;
                } else {
                    quoted = false;
                    ++i;
                }
            } else {
                cur += ch;
                ++i;
            }
        } else if (ch == '"') {
            if (!cur.empty())
                throw ParseError("line " + std::to_string(line_no) +
                                 ": quote inside unquoted field");
            quoted = true;
            ++i;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
            ++i;
        } else {
            cur += ch;
            ++i;
        }
    }
    if (quoted)
        throw ParseError("line " + std::to_string(line_no) + ": unterminated quote");
    fields.push_back(std::move(cur));
    return fields;
}

double parse_feature(const std::string& field, std::size_t line_no, std::size_t col) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ParseError("line " + std::to_string(line_no) + ": column " +
                         std::to_string(col) + " is not a number: '" + field + "'");
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << data;
    if (!out) throw IoError("write failed for " + path);
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw NumericError("double formatting failed");
    return std::string(buf, ptr);
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

void write_features_csv(const std::string& path,
                        const std::vector<FeatureRecord>& records,
                        const SignatureParams& params,
                        const std::vector<std::string>& class_names) {
    if (records.empty()) throw ParameterError("no feature records to write");
    const std::size_t feature_count = records.front().values.size();
    for (const auto& rec : records)
        if (rec.values.size() != feature_count)
            throw DimensionError("inconsistent feature count across records");

    std::string csv;
    csv += "path,class";
    for (std::size_t f = 0; f < feature_count; ++f) {
        csv += ",f";
        csv += std::to_string(f);
    }
    csv += '\n';
    for (const auto& rec : records) {
        csv += csv_field(rec.path);
        csv += ',';
        csv += csv_field(rec.class_name);
        for (double v : rec.values) {
            csv += ',';
            csv += format_double(v);
        }
        csv += '\n';
    }

    json meta;
    meta["radii"] = params.radii;
    meta["qs"] = params.qs;
    meta["lambda"] = params.lambda;
    meta["normalize_labels"] = params.normalize_labels;
    meta["measure_order"] = kMeasureOrder;
    meta["feature_count"] = feature_count;
    meta["rows"] = records.size();
    meta["class_names"] = class_names;
    meta["version"] = kVersion;
    meta["csv_fnv1a64"] = hash_hex(fnv1a64(csv));

    write_file(path, csv);
    write_file(sidecar_path(path), meta.dump(2) + "\n");
}

LoadedFeatures read_features_csv(const std::string& path) {
    const std::string csv = read_file(path);

    const std::string meta_path = sidecar_path(path);
    if (!std::filesystem::is_regular_file(meta_path))
        throw ValidationError("missing sidecar " + meta_path);
    json meta;
    try {
        meta = json::parse(read_file(meta_path));
    } catch (const json::exception& e) {
        throw ValidationError("unreadable sidecar " + meta_path + ": " + e.what());
    }

    LoadedFeatures loaded;
    std::size_t expect_rows = 0;
    std::size_t expect_features = 0;
    std::string expect_hash;
    try {
        loaded.params.radii = meta.at("radii").get<std::vector<double>>();
        loaded.params.qs = meta.at("qs").get<std::vector<int>>();
        loaded.params.lambda = meta.at("lambda").get<double>();
        loaded.params.normalize_labels = meta.at("normalize_labels").get<bool>();
        loaded.class_names = meta.at("class_names").get<std::vector<std::string>>();
        expect_rows = meta.at("rows").get<std::size_t>();
        expect_features = meta.at("feature_count").get<std::size_t>();
        expect_hash = meta.at("csv_fnv1a64").get<std::string>();
    } catch (const json::exception& e) {
        throw ValidationError("incomplete sidecar " + meta_path + ": " + e.what());
    }

    if (hash_hex(fnv1a64(csv)) != expect_hash)
        throw ValidationError("feature file " + path +
                              " does not match its sidecar hash");

    std::istringstream in(csv);
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line))
        throw ParseError("line 1: missing header");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv_line(line, line_no);
    if (header.size() < 3 || header[0] != "path" || header[1] != "class")
        throw ParseError("line 1: expected header 'path,class,f0,...'");
    const std::size_t feature_count = header.size() - 2;
    if (feature_count != expect_features)
        throw ValidationError("feature count mismatch: sidecar says " +
                              std::to_string(expect_features) + ", header has " +
                              std::to_string(feature_count));

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line, line_no);
        if (fields.size() != header.size())
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        FeatureRecord rec;
        rec.path = std::move(fields[0]);
        rec.class_name = std::move(fields[1]);
        rec.values.reserve(feature_count);
        for (std::size_t f = 0; f < feature_count; ++f)
            rec.values.push_back(parse_feature(fields[f + 2], line_no, f + 3));
        loaded.records.push_back(std::move(rec));
    }
    if (loaded.records.size() != expect_rows)
        throw ValidationError("row count mismatch: sidecar says " +
                              std::to_string(expect_rows) + ", file has " +
                              std::to_string(loaded.records.size()));
    return loaded;
}

FeatureTable to_feature_table(const LoadedFeatures& loaded) {
    if (loaded.records.empty()) throw DatasetError("feature file holds no rows");
    const std::size_t n = loaded.records.size();
    const std::size_t f = loaded.records.front().values.size();
    FeatureTable table;
    table.rows.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(f));
    table.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& rec = loaded.records[i];
        auto it = std::find(loaded.class_names.begin(), loaded.class_names.end(),
                            rec.class_name);
        if (it == loaded.class_names.end())
            throw ValidationError("class '" + rec.class_name +
                                  "' not listed in sidecar");
        table.labels[i] = static_cast<int>(it - loaded.class_names.begin());
        for (std::size_t j = 0; j < f; ++j)
            table.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rec.values[j];
    }
    return table;
}

void write_eval_json(const std::string& path, const EvalResult& result,
                     const std::vector<std::string>& class_names) {
    std::vector<std::vector<int>> confusion(
        static_cast<std::size_t>(result.confusion.rows()));
    for (Eigen::Index r = 0; r < result.confusion.rows(); ++r)
        for (Eigen::Index c = 0; c < result.confusion.cols(); ++c)
            confusion[static_cast<std::size_t>(r)].push_back(result.confusion(r, c));

    json j;
    j["accuracy"] = result.accuracy;
    j["confusion"] = confusion;
    j["per_class_accuracy"] = result.per_class;
    j["class_names"] = class_names;
    write_file(path, j.dump(2) + "\n");
}

void write_eval_text(const std::string& path, const EvalResult& result,
                     const std::vector<std::string>& class_names) {
    std::ostringstream out;
    char acc[32];
    std::snprintf(acc, sizeof acc, "%.2f", result.accuracy * 100.0);
    out << "accuracy: " << acc << "%\n\n";
    out << "per-class accuracy:\n";
    for (std::size_t c = 0; c < result.per_class.size(); ++c) {
        std::snprintf(acc, sizeof acc, "%.2f", result.per_class[c] * 100.0);
        out << "  " << (c < class_names.size() ? class_names[c] : std::to_string(c))
            << ": " << acc << "%\n";
    }
    out << "\nconfusion (rows = truth):\n";
    for (Eigen::Index r = 0; r < result.confusion.rows(); ++r) {
        out << " ";
        for (Eigen::Index c = 0; c < result.confusion.cols(); ++c)
            out << ' ' << result.confusion(r, c);
        out << '\n';
    }
    write_file(path, out.str());
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::string csv = "radii,qs,features,accuracy\n";
    for (const auto& row : rows) {
        std::string radii;
        for (std::size_t i = 0; i < row.radii.size(); ++i) {
            if (i) radii += '|';
            radii += format_double(row.radii[i]);
        }
        std::string qs;
        for (std::size_t i = 0; i < row.qs.size(); ++i) {
            if (i) qs += '|';
            qs += std::to_string(row.qs[i]);
        }
        csv += radii;
        csv += ',';
        csv += qs;
        csv += ',';
        csv += std::to_string(row.feature_count);
        csv += ',';
        csv += format_double(row.accuracy);
        csv += '\n';
    }
    write_file(path, csv);
}

} // namespace texnet
