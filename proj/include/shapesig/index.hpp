#pragma once

#include "shapesig/pipeline.hpp"
#include "shapesig/spectral.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shapesig {

struct FeatureRecord {
    std::string id;          // file stem, unique within an index
    std::string class_label; // stem up to the last hyphen
    Descriptor descriptor;

    friend bool operator==(const FeatureRecord&, const FeatureRecord&) = default;
};

struct IndexMeta {
    ExtractionConfig config;
    std::size_t dim = 0;
    int format_version = 1;

    friend bool operator==(const IndexMeta&, const IndexMeta&) = default;
};

// Immutable set of records sharing one kind and dimension, ordered by id.
// Descriptor values are also kept in one contiguous row-major matrix for the
// distance scan.
class FeatureIndex {
public:
    FeatureIndex(IndexMeta meta, std::vector<FeatureRecord> records);

    const IndexMeta& meta() const noexcept { return meta_; }
    SignatureKind kind() const noexcept { return meta_.config.kind; }
    std::size_t dim() const noexcept { return meta_.dim; }
    std::size_t size() const noexcept { return records_.size(); }
    std::span<const FeatureRecord> records() const noexcept { return records_; }
    std::span<const double> matrix() const noexcept { return matrix_; }

    friend bool operator==(const FeatureIndex& a, const FeatureIndex& b);

private:
    IndexMeta meta_;
    std::vector<FeatureRecord> records_;
    std::vector<double> matrix_;
};

struct Hit {
    std::string id;
    std::string class_label;
    double distance = 0.0;
};

struct RankedResult {
    std::string query_id;
    std::vector<Hit> hits; // ascending distance, ties by id
};

struct SkipEntry {
    std::string id;
    std::string reason;
};

struct BuildResult {
    FeatureIndex index;
    std::vector<SkipEntry> skipped;
};

// Class label for a dataset file stem ("apple-1" -> "apple").
std::string class_label_from_stem(std::string_view stem);

// Describes every supported image in `dataset` (flat directory). Images that
// fail with a data error land in `skipped`; EmptyDataset if nothing indexes.
BuildResult build_index(const std::filesystem::path& dataset, const ExtractionConfig& config);

// Same, over already-decoded masks keyed by id.
BuildResult build_index(std::span<const std::pair<std::string, BinaryMask>> shapes, const ExtractionConfig& config);

// Top-k records by Euclidean distance (full scan).
RankedResult query(const FeatureIndex& index, const Descriptor& descriptor, std::size_t k,
                   std::string query_id = {});

// `#shapesig v1` text format.
void write_index(std::ostream& out, const FeatureIndex& index);
FeatureIndex read_index(std::istream& in);
void save(const FeatureIndex& index, const std::filesystem::path& path);
FeatureIndex load(const std::filesystem::path& path);

} // namespace shapesig
