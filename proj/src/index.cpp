#include "shapesig/index.hpp"

#include "parallel.hpp"
#include "shapesig/error.hpp"
#include "shapesig/kernels.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace shapesig {

namespace {

bool is_plain_token(std::string_view s)
{
    return !s.empty() && s.find_first_of(",\r\n") == std::string_view::npos;
}

} // namespace

FeatureIndex::FeatureIndex(IndexMeta meta, std::vector<FeatureRecord> records)
    : meta_(std::move(meta)), records_(std::move(records))
{
    std::sort(records_.begin(), records_.end(),
              [](const FeatureRecord& a, const FeatureRecord& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const FeatureRecord& r = records_[i];
        if (!is_plain_token(r.id) || !is_plain_token(r.class_label))
            throw Error(ErrorCode::InvalidArgument, "record id and class must be non-empty and free of ',' and newlines");
        if (i > 0 && records_[i - 1].id == r.id)
            throw Error(ErrorCode::InvalidArgument, "duplicate record id " + r.id);
        if (r.descriptor.kind != meta_.config.kind)
            throw Error(ErrorCode::KindMismatch, "record " + r.id + " has kind " +
                                                     std::string(to_string(r.descriptor.kind)));
        if (r.descriptor.dim() != meta_.dim)
            throw Error(ErrorCode::DimensionMismatch, "record " + r.id + " has dimension " +
                                                          std::to_string(r.descriptor.dim()));
    }
    matrix_.reserve(records_.size() * meta_.dim);
    for (const FeatureRecord& r : records_)
        matrix_.insert(matrix_.end(), r.descriptor.values.begin(), r.descriptor.values.end());
}

bool operator==(const FeatureIndex& a, const FeatureIndex& b)
{
    return a.meta_ == b.meta_ && a.records_ == b.records_;
}

std::string class_label_from_stem(std::string_view stem)
{
    const auto dash = stem.rfind('-');
    return std::string(dash == std::string_view::npos || dash == 0 ? stem : stem.substr(0, dash));
}

namespace {

// Outcome of describing one input: a descriptor or the failure text.
struct Described {
    std::string id;
    std::optional<Descriptor> descriptor;
    std::string failure;
};

template <class DescribeFn>
std::vector<Described> describe_all(std::size_t count, DescribeFn&& describe_one)
{
    std::vector<Described> out(count);
    detail::parallel_for(count, [&](std::size_t i) {
        try {
            out[i].descriptor = describe_one(i);
        } catch (const Error& e) {
            out[i].failure = std::string(to_string(e.code())) + ": " + e.what();
        }
    });
    return out;
}

BuildResult assemble(std::vector<Described> described, const ExtractionConfig& config)
{
    std::vector<FeatureRecord> records;
    std::vector<SkipEntry> skipped;
    std::set<std::string> seen;
    for (Described& d : described) {
        if (!is_plain_token(d.id)) {
            skipped.push_back({d.id, "InvalidArgument: id contains ',' or a newline"});
        } else if (!seen.insert(d.id).second) {
            skipped.push_back({d.id, "InvalidArgument: duplicate id"});
        } else if (d.descriptor) {
            records.push_back({d.id, class_label_from_stem(d.id), std::move(*d.descriptor)});
        } else {
            skipped.push_back({d.id, d.failure});
        }
    }
    if (records.empty()) {
        std::string message = "no shape could be indexed";
        if (!skipped.empty())
            message += "; first failure: " + skipped.front().id + ": " + skipped.front().reason;
        throw Error(ErrorCode::EmptyDataset, message);
    }
    IndexMeta meta{config, config.descriptor_dim(), 1};
    return {FeatureIndex(std::move(meta), std::move(records)), std::move(skipped)};
}

} // namespace

BuildResult build_index(std::span<const std::pair<std::string, BinaryMask>> shapes, const ExtractionConfig& config)
{
    config.validate();
    auto described = describe_all(shapes.size(), [&](std::size_t i) { return describe_mask(shapes[i].second, config); });
    for (std::size_t i = 0; i < shapes.size(); ++i)
        described[i].id = shapes[i].first;
    return assemble(std::move(described), config);
}

BuildResult build_index(const std::filesystem::path& dataset, const ExtractionConfig& config)
{
    config.validate();
    std::error_code ec;
    if (!std::filesystem::is_directory(dataset, ec))
        throw Error(ErrorCode::IoError, "dataset is not a readable directory: " + dataset.string());

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dataset, ec))
        if (entry.is_regular_file() && is_supported_image(entry.path()))
            files.push_back(entry.path());
    if (ec)
        throw Error(ErrorCode::IoError, "cannot list " + dataset.string() + ": " + ec.message());
    if (files.empty())
        throw Error(ErrorCode::EmptyDataset, "no supported image files in " + dataset.string());
    std::sort(files.begin(), files.end());

    auto described = describe_all(files.size(), [&](std::size_t i) { return describe_file(files[i], config); });
    for (std::size_t i = 0; i < files.size(); ++i)
        described[i].id = files[i].stem().string();
    return assemble(std::move(described), config);
}

RankedResult query(const FeatureIndex& index, const Descriptor& descriptor, std::size_t k, std::string query_id)
{
    if (descriptor.kind != index.kind())
        throw Error(ErrorCode::KindMismatch, "query descriptor is " + std::string(to_string(descriptor.kind)) +
                                                 ", index holds " + std::string(to_string(index.kind())));
    if (descriptor.dim() != index.dim())
        throw Error(ErrorCode::DimensionMismatch, "query descriptor has dimension " +
                                                      std::to_string(descriptor.dim()) + ", index holds " +
                                                      std::to_string(index.dim()));

    const std::size_t n = index.size();
    std::vector<double> distance(n);
    kernels::active().squared_l2_rows(descriptor.values, index.matrix(), distance);
    for (double& d : distance)
        d = std::sqrt(d);

    const auto records = index.records();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t keep = std::min(k, n);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          if (distance[a] != distance[b])
                              return distance[a] < distance[b];
                          return records[a].id < records[b].id;
                      });

    RankedResult result{std::move(query_id), {}};
    result.hits.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        const FeatureRecord& r = records[order[i]];
        result.hits.push_back({r.id, r.class_label, distance[order[i]]});
    }
    return result;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

constexpr std::string_view kMagic = "#shapesig";

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string format_shortest(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

[[noreturn]] void format_error(std::size_t line, const std::string& what)
{
    throw Error(ErrorCode::FormatError, "index line " + std::to_string(line) + ": " + what);
}

template <class T>
bool parse_number(std::string_view s, T& out)
{
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            return parts;
        start = pos + 1;
    }
}

IndexMeta parse_header(std::string_view line)
{
    std::vector<std::string_view> tokens;
    for (std::string_view t : split(line, ' '))
        if (!t.empty())
            tokens.push_back(t);
    if (tokens.empty() || tokens[0] != kMagic)
        format_error(1, "missing '#shapesig' magic");
    if (tokens.size() < 2 || tokens[1] != "v1")
        format_error(1, "unsupported format version '" + std::string(tokens.size() < 2 ? "" : tokens[1]) + "'");

    std::map<std::string_view, std::string_view> fields;
    for (std::size_t i = 2; i < tokens.size(); ++i) {
        const auto eq = tokens[i].find('=');
        if (eq == std::string_view::npos)
            format_error(1, "malformed header field '" + std::string(tokens[i]) + "'");
        fields[tokens[i].substr(0, eq)] = tokens[i].substr(eq + 1);
    }
    auto require = [&](std::string_view key) {
        const auto it = fields.find(key);
        if (it == fields.end())
            format_error(1, "header lacks " + std::string(key) + "=");
        return it->second;
    };

    IndexMeta meta;
    const auto kind = parse_kind(require("kind"));
    if (!kind)
        format_error(1, "unknown kind '" + std::string(require("kind")) + "'");
    meta.config.kind = *kind;
    if (!parse_number(require("n"), meta.config.samples))
        format_error(1, "bad n=");
    if (!parse_number(require("dim"), meta.dim))
        format_error(1, "bad dim=");

    auto optional_number = [&](std::string_view key, auto& target) {
        const auto it = fields.find(key);
        if (it != fields.end() && !parse_number(it->second, target))
            format_error(1, "bad " + std::string(key) + "=");
    };
    optional_number("af_step", meta.config.params.af_step);
    optional_number("tar_step", meta.config.params.tar_step);
    optional_number("threshold", meta.config.threshold);
    int orient = 0;
    optional_number("orient", orient);
    meta.config.orientation_normalize = orient != 0;

    const std::size_t full = full_descriptor_dim(meta.config.kind, meta.config.samples);
    if (meta.dim < full)
        meta.config.coeffs = meta.dim;
    try {
        meta.config.validate();
    } catch (const Error& e) {
        format_error(1, e.what());
    }
    if (meta.dim == 0 || meta.dim > full)
        format_error(1, "dim=" + std::to_string(meta.dim) + " impossible for this kind and n");
    return meta;
}

} // namespace

void write_index(std::ostream& out, const FeatureIndex& index)
{
    const ExtractionConfig& c = index.meta().config;
    out << kMagic << " v1 kind=" << to_string(c.kind) << " n=" << c.samples << " dim=" << index.dim()
        << " af_step=" << c.params.af_step << " tar_step=" << c.params.tar_step
        << " threshold=" << format_shortest(c.threshold) << " orient=" << (c.orientation_normalize ? 1 : 0) << '\n';
    for (const FeatureRecord& r : index.records()) {
        out << r.id << ',' << r.class_label;
        for (double v : r.descriptor.values)
            out << ',' << format_double(v);
        out << '\n';
    }
}

FeatureIndex read_index(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::FormatError, "index is empty");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    IndexMeta meta = parse_header(line);

    std::vector<FeatureRecord> records;
    std::set<std::string> seen;
    for (std::size_t number = 2; std::getline(in, line); ++number) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto fields = split(line, ',');
        if (fields.size() != meta.dim + 2)
            format_error(number, "expected " + std::to_string(meta.dim + 2) + " fields, found " +
                                     std::to_string(fields.size()));
        FeatureRecord r{std::string(fields[0]), std::string(fields[1]), {meta.config.kind, {}}};
        if (r.id.empty() || r.class_label.empty())
            format_error(number, "empty id or class");
        if (!seen.insert(r.id).second)
            format_error(number, "duplicate id " + r.id);
        r.descriptor.values.resize(meta.dim);
        for (std::size_t d = 0; d < meta.dim; ++d)
            if (!parse_number(fields[d + 2], r.descriptor.values[d]))
                format_error(number, "bad number '" + std::string(fields[d + 2]) + "'");
        records.push_back(std::move(r));
    }
    if (in.bad())
        throw Error(ErrorCode::IoError, "read error");
    return FeatureIndex(std::move(meta), std::move(records));
}

void save(const FeatureIndex& index, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    write_index(out, index);
    out.flush();
    if (!out)
        throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

FeatureIndex load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    return read_index(in);
}

} // namespace shapesig
