#include "shapesig/pipeline.hpp"

#include "shapesig/error.hpp"

#include <string>

namespace shapesig {

std::size_t ExtractionConfig::descriptor_dim() const noexcept
{
    return coeffs.value_or(full_descriptor_dim(kind, samples));
}

void ExtractionConfig::validate() const
{
    if (samples < 4)
        throw Error(ErrorCode::InvalidSampleCount,
                    "--samples must be at least 4 (got " + std::to_string(samples) + ")");
    // Steps only constrain the kinds that use them.
    SignatureParams relevant{1, 1};
    if (kind == SignatureKind::AF || kind == SignatureKind::ARC)
        relevant.af_step = params.af_step;
    if (kind == SignatureKind::TAR)
        relevant.tar_step = params.tar_step;
    relevant.validate(samples);
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "--threshold must lie in [0, 1]");
    const std::size_t full = full_descriptor_dim(kind, samples);
    if (coeffs && (*coeffs == 0 || *coeffs > full))
        throw Error(ErrorCode::InvalidArgument, "--coeffs must lie in [1, " + std::to_string(full) + "] for " +
                                                    std::string(to_string(kind)) + " with " +
                                                    std::to_string(samples) + " samples");
}

ShapeGeometry extract_geometry(const BinaryMask& mask, const ExtractionConfig& config)
{
    ShapeGeometry g;
    g.mask = crop_to_content(largest_component(mask));
    g.boundary = trace_boundary(g.mask);
    g.contour = resample(g.boundary, config.samples);
    g.center = centroid(g.mask);
    return g;
}

Signature compute_signature(const ShapeGeometry& g, const ExtractionConfig& config)
{
    const Contour& c = g.contour;
    switch (config.kind) {
    case SignatureKind::FSD: {
        if (config.orientation_normalize) {
            const Contour aligned = normalize_orientation(c);
            return fsd_signature(aligned, bounding_rect(aligned));
        }
        return fsd_signature(c, bounding_rect(c));
    }
    case SignatureKind::PC: return pc_signature(c, g.center);
    case SignatureKind::CC: return cc_signature(c, g.center);
    case SignatureKind::AF: return af_signature(c, config.params.af_step);
    case SignatureKind::ARC: return arc_signature(c, g.center, config.params.af_step);
    case SignatureKind::TAR: return tar_signature(c, config.params.tar_step);
    case SignatureKind::CLD: return cld_signature(c);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown signature kind");
}

Descriptor describe_mask(const BinaryMask& mask, const ExtractionConfig& config)
{
    return describe(compute_signature(extract_geometry(mask, config), config), config.coeffs);
}

Descriptor describe_image(const GrayImage& image, const ExtractionConfig& config)
{
    return describe_mask(binarize(image, config.threshold), config);
}

Descriptor describe_file(const std::filesystem::path& path, const ExtractionConfig& config)
{
    return describe_image(load_image(path), config);
}

} // namespace shapesig
