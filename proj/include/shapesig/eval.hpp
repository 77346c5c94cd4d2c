#pragma once

#include "shapesig/index.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shapesig {

struct PrPoint {
    double recall = 0.0;
    double precision = 0.0;

    friend bool operator==(const PrPoint&, const PrPoint&) = default;
};

// relevant retrieved / retrieved. InvalidCounts unless 0 <= relevant <= retrieved, retrieved >= 1.
double precision(std::size_t relevant_retrieved, std::size_t retrieved);

// relevant retrieved / relevant in the database.
double recall(std::size_t relevant_retrieved, std::size_t relevant_total);

// One point per relevant item, taken at the rank where it appears:
// (k / relevant_total, k / rank). The query's own record counts as relevant.
std::vector<PrPoint> pr_curve(const RankedResult& ranking, std::string_view query_class, std::size_t relevant_total);

struct EvalOptions {
    std::size_t expected_class_size = 20;
    // Accept classes of any (possibly unequal) size.
    bool allow_unbalanced = false;
};

struct EvalReport {
    SignatureKind kind = SignatureKind::FSD;
    std::map<std::string, std::vector<PrPoint>> per_query;
    double avg_low = 0.0;       // 100 * mean precision over recall <= 0.5
    double avg_high = 0.0;      // 100 * mean precision over recall > 0.5
    std::vector<PrPoint> curve; // mean precision per recall level, ascending recall

    friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

// Every record queries the full index (itself included).
EvalReport evaluate(const FeatureIndex& index, const EvalOptions& options = {});

// "kind,avgLow,avgHigh" plus one row per report.
std::string summary_csv(std::span<const EvalReport> reports);
// "recallLevel,meanPrecision" plus one row per curve point.
std::string curve_csv(const EvalReport& report);

// summary.csv and curve.csv in `directory`.
void export_report(const EvalReport& report, const std::filesystem::path& directory);

// summary.csv with one row per report; a single report also gets curve.csv,
// several get curve_<kind>.csv (suffixed _2, _3, ... on repeated kinds).
// Returns the curve file paths in report order.
std::vector<std::filesystem::path> export_reports(std::span<const EvalReport> reports,
                                                  const std::filesystem::path& directory);

} // namespace shapesig
