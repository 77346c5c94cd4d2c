#include "shapesig/eval.hpp"

#include "parallel.hpp"
#include "shapesig/error.hpp"

#include <charconv>
#include <fstream>

namespace shapesig {

double precision(std::size_t relevant_retrieved, std::size_t retrieved)
{
    if (retrieved == 0 || relevant_retrieved > retrieved)
        throw Error(ErrorCode::InvalidCounts, "precision needs 0 <= relevant retrieved <= retrieved, retrieved >= 1");
    return static_cast<double>(relevant_retrieved) / static_cast<double>(retrieved);
}

double recall(std::size_t relevant_retrieved, std::size_t relevant_total)
{
    if (relevant_total == 0 || relevant_retrieved > relevant_total)
        throw Error(ErrorCode::InvalidCounts, "recall needs 0 <= relevant retrieved <= relevant total, total >= 1");
    return static_cast<double>(relevant_retrieved) / static_cast<double>(relevant_total);
}

std::vector<PrPoint> pr_curve(const RankedResult& ranking, std::string_view query_class, std::size_t relevant_total)
{
    if (relevant_total == 0)
        throw Error(ErrorCode::InvalidCounts, "relevant total must be at least 1");
    std::vector<PrPoint> points;
    points.reserve(relevant_total);
    std::size_t found = 0;
    for (std::size_t rank = 1; rank <= ranking.hits.size() && found < relevant_total; ++rank) {
        if (ranking.hits[rank - 1].class_label != query_class)
            continue;
        ++found;
        points.push_back({recall(found, relevant_total), precision(found, rank)});
    }
    if (found < relevant_total)
        throw Error(ErrorCode::MissingRelevant, "ranking for '" + ranking.query_id + "' holds " +
                                                    std::to_string(found) + " of " + std::to_string(relevant_total) +
                                                    " members of class " + std::string(query_class));
    return points;
}

EvalReport evaluate(const FeatureIndex& index, const EvalOptions& options)
{
    const auto records = index.records();
    if (records.empty())
        throw Error(ErrorCode::EmptyDataset, "cannot evaluate an empty index");

    std::map<std::string, std::size_t> class_sizes;
    for (const FeatureRecord& r : records)
        ++class_sizes[r.class_label];
    if (!options.allow_unbalanced) {
        for (const auto& [label, size] : class_sizes)
            if (size != options.expected_class_size)
                throw Error(ErrorCode::UnbalancedClasses,
                            "class '" + label + "' has " + std::to_string(size) + " members, expected " +
                                std::to_string(options.expected_class_size) + " (use --allow-unbalanced to override)");
    }

    std::vector<std::vector<PrPoint>> curves(records.size());
    detail::parallel_for(records.size(), [&](std::size_t i) {
        const FeatureRecord& r = records[i];
        const RankedResult ranking = query(index, r.descriptor, index.size(), r.id);
        curves[i] = pr_curve(ranking, r.class_label, class_sizes.at(r.class_label));
    });

    // Reduce in record order so the result does not depend on scheduling.
    EvalReport report;
    report.kind = index.kind();
    double low_sum = 0.0, high_sum = 0.0;
    std::size_t low_count = 0, high_count = 0;
    std::map<double, std::pair<double, std::size_t>> by_level;
    for (std::size_t i = 0; i < records.size(); ++i) {
        for (const PrPoint& p : curves[i]) {
            if (p.recall <= 0.5) {
                low_sum += p.precision;
                ++low_count;
            } else {
                high_sum += p.precision;
                ++high_count;
            }
            auto& level = by_level[p.recall];
            level.first += p.precision;
            ++level.second;
        }
        report.per_query.emplace(records[i].id, std::move(curves[i]));
    }
    report.avg_low = low_count ? 100.0 * low_sum / static_cast<double>(low_count) : 0.0;
    report.avg_high = high_count ? 100.0 * high_sum / static_cast<double>(high_count) : 0.0;
    for (const auto& [level, acc] : by_level)
        report.curve.push_back({level, acc.first / static_cast<double>(acc.second)});
    return report;
}

namespace {

std::string fixed6(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
    return std::string(buf, res.ptr);
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << text;
    out.flush();
    if (!out)
        throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

void ensure_directory(const std::filesystem::path& directory)
{
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec)
        throw Error(ErrorCode::IoError, "cannot create " + directory.string() + ": " + ec.message());
}

} // namespace

std::string summary_csv(std::span<const EvalReport> reports)
{
    std::string out = "kind,avgLow,avgHigh\n";
    for (const EvalReport& r : reports)
        out += std::string(display_name(r.kind)) + ',' + fixed6(r.avg_low) + ',' + fixed6(r.avg_high) + '\n';
    return out;
}

std::string curve_csv(const EvalReport& report)
{
    std::string out = "recallLevel,meanPrecision\n";
    for (const PrPoint& p : report.curve)
        out += fixed6(p.recall) + ',' + fixed6(p.precision) + '\n';
    return out;
}

void export_report(const EvalReport& report, const std::filesystem::path& directory)
{
    export_reports(std::span(&report, 1), directory);
}

std::vector<std::filesystem::path> export_reports(std::span<const EvalReport> reports,
                                                  const std::filesystem::path& directory)
{
    ensure_directory(directory);
    write_text(directory / "summary.csv", summary_csv(reports));

    std::vector<std::filesystem::path> curves;
    std::map<SignatureKind, int> uses;
    for (const EvalReport& r : reports) {
        std::string name = "curve.csv";
        if (reports.size() > 1) {
            const int n = ++uses[r.kind];
            name = "curve_" + std::string(to_string(r.kind)) + (n > 1 ? "_" + std::to_string(n) : "") + ".csv";
        }
        curves.push_back(directory / name);
        write_text(curves.back(), curve_csv(r));
    }
    return curves;
}

} // namespace shapesig
