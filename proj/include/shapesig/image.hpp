#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

namespace shapesig {

// Grayscale raster with intensities in [0, 1]. Row 0 is the top of the image.
struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<double> intensity; // row-major, width * height

    double at(std::size_t row, std::size_t col) const { return intensity[row * width + col]; }
    bool empty() const noexcept { return intensity.empty(); }
};

// Decodes GIF (first frame), PNG, and the PNM family (P1-P6). The container
// is recognised from the leading magic bytes, not the extension.
GrayImage load_image(const std::filesystem::path& path);

// Same as load_image but from an in-memory buffer.
GrayImage decode_image(const std::vector<unsigned char>& bytes);

GrayImage decode_gif(const std::vector<unsigned char>& bytes);
GrayImage decode_pnm(const std::vector<unsigned char>& bytes);

// Writes an 8-bit binary PGM (P5).
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

// True if the file extension is one load_image is expected to read.
bool is_supported_image(const std::filesystem::path& path);

} // namespace shapesig
