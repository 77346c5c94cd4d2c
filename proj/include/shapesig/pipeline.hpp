#pragma once

#include "shapesig/contour.hpp"
#include "shapesig/signatures.hpp"
#include "shapesig/spectral.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>

namespace shapesig {

// Everything needed to turn an image into a descriptor reproducibly.
struct ExtractionConfig {
    SignatureKind kind = SignatureKind::FSD;
    std::size_t samples = 128;
    SignatureParams params;
    std::optional<std::size_t> coeffs; // leading descriptor values kept; nullopt = full length
    double threshold = 0.5;
    bool orientation_normalize = false; // FSD only: principal axis horizontal before boxing

    std::size_t descriptor_dim() const noexcept;

    // InvalidArgument / InvalidSampleCount / InvalidStep with a readable message.
    void validate() const;

    friend bool operator==(const ExtractionConfig&, const ExtractionConfig&) = default;
};

// Intermediate products, exposed for inspection and tests.
struct ShapeGeometry {
    BinaryMask mask;   // largest component, cropped to its bounding box
    Contour boundary;  // traced outer boundary
    Contour contour;   // arc-length resampled
    Centroid center;
};

ShapeGeometry extract_geometry(const BinaryMask& mask, const ExtractionConfig& config);

Signature compute_signature(const ShapeGeometry& geometry, const ExtractionConfig& config);

Descriptor describe_mask(const BinaryMask& mask, const ExtractionConfig& config);
Descriptor describe_image(const GrayImage& image, const ExtractionConfig& config);
Descriptor describe_file(const std::filesystem::path& path, const ExtractionConfig& config);

} // namespace shapesig
