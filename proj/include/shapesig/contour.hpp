#pragma once

#include "shapesig/image.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace shapesig {

// Row-major boolean grid; row 0 is the top raster row.
class BinaryMask {
public:
    BinaryMask() = default;
    BinaryMask(std::size_t width, std::size_t height, bool fill = false);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }

    bool at(std::size_t row, std::size_t col) const { return pixels_[row * width_ + col] != 0; }
    void set(std::size_t row, std::size_t col, bool value) { pixels_[row * width_ + col] = value ? 1 : 0; }

    // Out-of-range coordinates read as background.
    bool test(long row, long col) const
    {
        return row >= 0 && col >= 0 && static_cast<std::size_t>(row) < height_ &&
               static_cast<std::size_t>(col) < width_ && pixels_[row * width_ + col] != 0;
    }

    std::size_t count() const noexcept;

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<unsigned char> pixels_;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

// Closed polyline, y-up. The edge from the last point back to the first is implicit.
class Contour {
public:
    Contour() = default;
    explicit Contour(std::vector<Point> points) : points_(std::move(points)) {}

    std::span<const Point> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }

    // Index arithmetic modulo size(), accepting negative offsets.
    const Point& wrap(long i) const
    {
        const long n = static_cast<long>(points_.size());
        return points_[static_cast<std::size_t>(((i % n) + n) % n)];
    }

    double perimeter() const noexcept;
    // Shoelace formula; positive for counter-clockwise traversal.
    double signed_area() const noexcept;

    friend bool operator==(const Contour&, const Contour&) = default;

private:
    std::vector<Point> points_;
};

struct BoundingRect {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    double horizontal_extent() const noexcept { return x_max - x_min; }
    double vertical_extent() const noexcept { return y_max - y_min; }
};

struct Centroid {
    double x = 0.0;
    double y = 0.0;
};

// Pixel (row, col) of a mask of height h has y-up coordinates (col, h - 1 - row).
inline Point pixel_center(std::size_t row, std::size_t col, std::size_t height)
{
    return {static_cast<double>(col), static_cast<double>(height - 1 - row)};
}

BinaryMask binarize(const GrayImage& image, double threshold);

// Keeps the largest 8-connected component. Equal sizes resolve to the
// component reached first in raster scan order.
BinaryMask largest_component(const BinaryMask& mask);

// Crops to the tight bounding box of the true pixels. Makes every downstream
// quantity independent of where the shape sits on the canvas.
BinaryMask crop_to_content(const BinaryMask& mask);

// Outer boundary of a single 8-connected component by Moore-neighbour tracing,
// starting from the topmost-then-leftmost pixel. Pixel centres, CCW order.
Contour trace_boundary(const BinaryMask& mask);

// n points equally spaced in arc length; point 0 is the first input point.
Contour resample(const Contour& contour, std::size_t n);

BoundingRect bounding_rect(const Contour& contour);

// Mean of the true pixels' centres (region centroid).
Centroid centroid(const BinaryMask& mask);

// Rotates the contour about its point mean so that the principal axis of the
// points is horizontal. Point order is preserved.
Contour normalize_orientation(const Contour& contour);

} // namespace shapesig
