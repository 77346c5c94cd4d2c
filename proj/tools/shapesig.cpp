// shapesig: extract shape descriptors, query an index, and run the
// precision-recall benchmark.

#include "shapesig/error.hpp"
#include "shapesig/eval.hpp"
#include "shapesig/index.hpp"
#include "shapesig/kernels.hpp"
#include "shapesig/pipeline.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace shapesig;

constexpr int kDataError = 1;
constexpr int kInternalError = 2;

// Extraction flags shared by extract (authoritative) and query (ignored in
// favour of the index header).
struct ExtractionFlags {
    std::string descriptor = "fsd";
    std::size_t samples = 128;
    std::size_t af_step = 5;
    std::size_t tar_step = 1;
    std::optional<std::size_t> coeffs;
    double threshold = 0.5;
    bool orientation_normalize = false;

    void attach(CLI::App& cmd)
    {
        cmd.add_option("--descriptor", descriptor, "Signature kind")
            ->transform(CLI::IsMember({"fsd", "pc", "cc", "af", "arc", "tar", "cld"}, CLI::ignore_case))
            ->capture_default_str();
        cmd.add_option("--samples", samples, "Contour sample count N")->capture_default_str();
        cmd.add_option("--af-step", af_step, "AF/ARC step s in samples")->capture_default_str();
        cmd.add_option("--tar-step", tar_step, "TAR triangle half-span in samples")->capture_default_str();
        cmd.add_option("--coeffs", coeffs, "Keep only the leading D descriptor values");
        cmd.add_option("--threshold", threshold, "Binarization threshold in [0,1]")->capture_default_str();
        cmd.add_flag("--orientation-normalize", orientation_normalize,
                     "FSD: rotate the contour to its principal axis before boxing");
    }

    ExtractionConfig config() const
    {
        ExtractionConfig c;
        c.kind = *parse_kind(descriptor);
        c.samples = samples;
        c.params = {af_step, tar_step};
        c.coeffs = coeffs;
        c.threshold = threshold;
        c.orientation_normalize = orientation_normalize;
        return c;
    }
};

std::string csv_safe(std::string text)
{
    for (char& ch : text)
        if (ch == ',' || ch == '\n' || ch == '\r')
            ch = ';';
    return text;
}

std::string format_distance(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

int run_extract(const std::string& dataset, const ExtractionFlags& flags, const std::string& out)
{
    const ExtractionConfig config = flags.config();
    config.validate();
    const BuildResult result = build_index(dataset, config);
    for (const SkipEntry& s : result.skipped)
        std::cerr << csv_safe(s.id) << ',' << csv_safe(s.reason) << '\n';
    save(result.index, out);
    std::cerr << "indexed " << result.index.size() << " shapes (" << result.skipped.size() << " skipped) into "
              << out << '\n';
    return 0;
}

int run_query(const std::string& index_path, const std::string& image, std::size_t top, const CLI::App& cmd,
              const ExtractionFlags& flags)
{
    const FeatureIndex index = load(index_path);
    const ExtractionConfig& stored = index.meta().config;
    for (const char* name : {"--descriptor", "--samples", "--af-step", "--tar-step", "--coeffs", "--threshold",
                             "--orientation-normalize"})
        if (cmd.count(name) > 0)
            std::cerr << "note: " << name << " ignored; the index header fixes extraction parameters\n";
    if (cmd.count("--descriptor") > 0 && *parse_kind(flags.descriptor) != stored.kind)
        throw Error(ErrorCode::KindMismatch, "index holds " + std::string(to_string(stored.kind)) +
                                                 " descriptors, --descriptor asked for " + flags.descriptor);

    const Descriptor descriptor = describe_file(image, stored);
    const RankedResult ranking = query(index, descriptor, top);
    for (std::size_t i = 0; i < ranking.hits.size(); ++i) {
        const Hit& h = ranking.hits[i];
        std::cout << (i + 1) << ',' << h.id << ',' << h.class_label << ',' << format_distance(h.distance) << '\n';
    }
    return 0;
}

int run_evaluate(const std::vector<std::string>& indexes, const std::string& out, bool allow_unbalanced)
{
    EvalOptions options;
    options.allow_unbalanced = allow_unbalanced;
    std::vector<EvalReport> reports;
    for (const std::string& path : indexes)
        reports.push_back(evaluate(load(path), options));
    const auto curves = export_reports(reports, out);
    std::cout << summary_csv(reports);
    for (const auto& c : curves)
        std::cerr << "wrote " << c.string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fourier shape signatures: extraction, retrieval and precision-recall evaluation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "shapesig 1.0");
    bool show_kernels = false;
    app.add_flag("--kernels", show_kernels, "Print the selected SIMD kernel set to stderr");

    ExtractionFlags extract_flags;
    std::string dataset;
    std::string extract_out;
    auto* extract = app.add_subcommand("extract", "Describe every shape image in a directory and write an index");
    extract->add_option("--dataset", dataset, "Flat directory of class-instance images")->required();
    extract->add_option("--out", extract_out, "Index file to write")->required();
    extract_flags.attach(*extract);

    ExtractionFlags query_flags;
    std::string query_index;
    std::string query_image;
    std::size_t top = 10;
    auto* query_cmd = app.add_subcommand("query", "Rank an index against one shape image");
    query_cmd->add_option("--index,index", query_index, "Index file")->required();
    query_cmd->add_option("--image,image", query_image, "Query image")->required();
    query_cmd->add_option("--top,-k", top, "Number of hits to print")->capture_default_str();
    query_flags.attach(*query_cmd);

    std::vector<std::string> eval_indexes;
    std::string eval_out = ".";
    bool allow_unbalanced = false;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Precision-recall benchmark over one or more indexes");
    evaluate_cmd->add_option("indexes", eval_indexes, "Index files")->required();
    evaluate_cmd->add_option("--out", eval_out, "Output directory for summary.csv and curve files")
        ->capture_default_str();
    evaluate_cmd->add_flag("--allow-unbalanced", allow_unbalanced, "Accept classes with other than 20 members");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kDataError;
    }

    if (show_kernels)
        std::cerr << "kernels: " << kernels::active().name << '\n';

    try {
        if (*extract)
            return run_extract(dataset, extract_flags, extract_out);
        if (*query_cmd)
            return run_query(query_index, query_image, top, *query_cmd, query_flags);
        if (*evaluate_cmd)
            return run_evaluate(eval_indexes, eval_out, allow_unbalanced);
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kInternalError;
}
