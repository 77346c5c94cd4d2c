#include "shapesig/contour.hpp"

#include "shapesig/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace shapesig {

BinaryMask::BinaryMask(std::size_t width, std::size_t height, bool fill)
    : width_(width), height_(height), pixels_(width * height, fill ? 1 : 0)
{
}

std::size_t BinaryMask::count() const noexcept
{
    return static_cast<std::size_t>(std::count(pixels_.begin(), pixels_.end(), 1));
}

double Contour::perimeter() const noexcept
{
    double total = 0.0;
    const std::size_t n = points_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = points_[i];
        const Point& b = points_[(i + 1) % n];
        total += std::hypot(b.x - a.x, b.y - a.y);
    }
    return total;
}

double Contour::signed_area() const noexcept
{
    double twice = 0.0;
    const std::size_t n = points_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = points_[i];
        const Point& b = points_[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * twice;
}

BinaryMask binarize(const GrayImage& image, double threshold)
{
    if (image.width == 0 || image.height == 0 || image.intensity.size() != image.width * image.height)
        throw Error(ErrorCode::EmptyImage, "image has no pixels");
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "threshold must lie in [0, 1]");

    BinaryMask mask(image.width, image.height);
    for (std::size_t r = 0; r < image.height; ++r)
        for (std::size_t c = 0; c < image.width; ++c)
            mask.set(r, c, image.at(r, c) >= threshold);
    return mask;
}

namespace {

struct Pixel {
    long row;
    long col;

    friend bool operator==(const Pixel&, const Pixel&) = default;
};

// Clockwise on screen (row axis pointing down), starting west.
constexpr std::array<Pixel, 8> kRing{{
    {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1},
}};

int ring_index(Pixel offset)
{
    for (int i = 0; i < 8; ++i)
        if (kRing[i] == offset)
            return i;
    throw std::logic_error("trace_boundary: backtrack cell is not a neighbour");
}

} // namespace

BinaryMask largest_component(const BinaryMask& mask)
{
    const std::size_t w = mask.width();
    const std::size_t h = mask.height();
    std::vector<int> label(w * h, -1);
    std::vector<std::size_t> stack;
    std::vector<std::size_t> best_pixels;
    std::vector<std::size_t> current;

    int next_label = 0;
    for (std::size_t start = 0; start < w * h; ++start) {
        if (!mask.at(start / w, start % w) || label[start] >= 0)
            continue;
        current.clear();
        label[start] = next_label;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t idx = stack.back();
            stack.pop_back();
            current.push_back(idx);
            const long r = static_cast<long>(idx / w);
            const long c = static_cast<long>(idx % w);
            for (const Pixel& d : kRing) {
                if (!mask.test(r + d.row, c + d.col))
                    continue;
                const std::size_t n = static_cast<std::size_t>(r + d.row) * w + static_cast<std::size_t>(c + d.col);
                if (label[n] < 0) {
                    label[n] = next_label;
                    stack.push_back(n);
                }
            }
        }
        if (current.size() > best_pixels.size())
            best_pixels.swap(current);
        ++next_label;
    }

    if (best_pixels.empty())
        throw Error(ErrorCode::EmptyShape, "mask has no foreground pixel");

    BinaryMask out(w, h);
    for (std::size_t idx : best_pixels)
        out.set(idx / w, idx % w, true);
    return out;
}

BinaryMask crop_to_content(const BinaryMask& mask)
{
    std::size_t r0 = mask.height(), r1 = 0, c0 = mask.width(), c1 = 0;
    bool any = false;
    for (std::size_t r = 0; r < mask.height(); ++r)
        for (std::size_t c = 0; c < mask.width(); ++c)
            if (mask.at(r, c)) {
                any = true;
                r0 = std::min(r0, r);
                r1 = std::max(r1, r);
                c0 = std::min(c0, c);
                c1 = std::max(c1, c);
            }
    if (!any)
        throw Error(ErrorCode::EmptyShape, "mask has no foreground pixel");

    BinaryMask out(c1 - c0 + 1, r1 - r0 + 1);
    for (std::size_t r = r0; r <= r1; ++r)
        for (std::size_t c = c0; c <= c1; ++c)
            out.set(r - r0, c - c0, mask.at(r, c));
    return out;
}

Contour trace_boundary(const BinaryMask& mask)
{
    const std::size_t w = mask.width();
    const std::size_t h = mask.height();

    Pixel start{-1, -1};
    for (std::size_t idx = 0; idx < w * h; ++idx)
        if (mask.at(idx / w, idx % w)) {
            start = {static_cast<long>(idx / w), static_cast<long>(idx % w)};
            break;
        }
    if (start.row < 0)
        throw Error(ErrorCode::EmptyShape, "mask has no foreground pixel");

    // One Moore step: scan clockwise from the backtrack cell to the first
    // foreground neighbour. Returns the new pixel and its backtrack direction.
    auto step = [&](Pixel p, int backtrack) -> std::pair<Pixel, int> {
        for (int i = 1; i <= 8; ++i) {
            const int d = (backtrack + i) % 8;
            const Pixel q{p.row + kRing[d].row, p.col + kRing[d].col};
            if (mask.test(q.row, q.col)) {
                const Pixel& prev = kRing[(d + 7) % 8];
                const Pixel b{p.row + prev.row, p.col + prev.col};
                return {q, ring_index({b.row - q.row, b.col - q.col})};
            }
        }
        return {p, -1};
    };

    // The start is topmost-leftmost, so its west neighbour is background.
    const auto [second, second_backtrack] = step(start, 0);
    if (second_backtrack < 0)
        throw Error(ErrorCode::DegenerateShape, "shape is a single pixel");

    std::vector<Pixel> pixels{start};
    Pixel p = second;
    int backtrack = second_backtrack;
    // Every boundary pixel is entered at most 4 times on an outer trace.
    const std::size_t limit = 4 * mask.count() + 8;
    for (;;) {
        const auto [next, next_backtrack] = step(p, backtrack);
        // Stop once the start pixel is about to repeat its first move.
        if (p == start && next == second)
            break;
        pixels.push_back(p);
        p = next;
        backtrack = next_backtrack;
        if (pixels.size() > limit)
            throw std::logic_error("trace_boundary: tracing did not close");
    }

    if (pixels.size() < 3)
        throw Error(ErrorCode::DegenerateShape, "boundary has fewer than 3 pixels");

    std::vector<Point> points;
    points.reserve(pixels.size());
    for (const Pixel& px : pixels)
        points.push_back(pixel_center(static_cast<std::size_t>(px.row), static_cast<std::size_t>(px.col), h));

    Contour contour(std::move(points));
    if (contour.signed_area() < 0.0) {
        std::vector<Point> reversed(contour.points().begin(), contour.points().end());
        std::reverse(reversed.begin() + 1, reversed.end());
        contour = Contour(std::move(reversed));
    }
    return contour;
}

Contour resample(const Contour& contour, std::size_t n)
{
    if (n < 4)
        throw Error(ErrorCode::InvalidSampleCount, "sample count must be at least 4");
    const std::size_t m = contour.size();
    if (m < 2)
        throw Error(ErrorCode::DegenerateShape, "contour has fewer than 2 points");

    // cumulative[i] is the arc length at point i; cumulative[m] closes the loop.
    std::vector<double> cumulative(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = contour[i];
        const Point& b = contour[(i + 1) % m];
        cumulative[i + 1] = cumulative[i] + std::hypot(b.x - a.x, b.y - a.y);
    }
    const double perimeter = cumulative[m];
    if (!(perimeter > 0.0))
        throw Error(ErrorCode::DegenerateShape, "contour perimeter is zero");

    std::vector<Point> out;
    out.reserve(n);
    std::size_t edge = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double target = perimeter * static_cast<double>(k) / static_cast<double>(n);
        while (edge + 1 < m && cumulative[edge + 1] <= target)
            ++edge;
        const Point& a = contour[edge];
        const Point& b = contour[(edge + 1) % m];
        const double length = cumulative[edge + 1] - cumulative[edge];
        const double t = length > 0.0 ? (target - cumulative[edge]) / length : 0.0;
        out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
    return Contour(std::move(out));
}

BoundingRect bounding_rect(const Contour& contour)
{
    if (contour.size() == 0)
        throw Error(ErrorCode::InvalidArgument, "bounding_rect of an empty contour");
    BoundingRect rect{contour[0].x, contour[0].x, contour[0].y, contour[0].y};
    for (const Point& p : contour.points()) {
        rect.x_min = std::min(rect.x_min, p.x);
        rect.x_max = std::max(rect.x_max, p.x);
        rect.y_min = std::min(rect.y_min, p.y);
        rect.y_max = std::max(rect.y_max, p.y);
    }
    return rect;
}

Centroid centroid(const BinaryMask& mask)
{
    double sx = 0.0;
    double sy = 0.0;
    std::size_t count = 0;
    for (std::size_t r = 0; r < mask.height(); ++r)
        for (std::size_t c = 0; c < mask.width(); ++c)
            if (mask.at(r, c)) {
                const Point p = pixel_center(r, c, mask.height());
                sx += p.x;
                sy += p.y;
                ++count;
            }
    if (count == 0)
        throw Error(ErrorCode::EmptyShape, "mask has no foreground pixel");
    return {sx / static_cast<double>(count), sy / static_cast<double>(count)};
}

Contour normalize_orientation(const Contour& contour)
{
    const std::size_t n = contour.size();
    if (n == 0)
        return contour;
    double mx = 0.0, my = 0.0;
    for (const Point& p : contour.points()) {
        mx += p.x;
        my += p.y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const Point& p : contour.points()) {
        const double dx = p.x - mx;
        const double dy = p.y - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    const double angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    const double c = std::cos(angle);
    const double s = std::sin(angle);

    std::vector<Point> out;
    out.reserve(n);
    for (const Point& p : contour.points()) {
        const double dx = p.x - mx;
        const double dy = p.y - my;
        out.push_back({c * dx + s * dy, -s * dx + c * dy});
    }
    return Contour(std::move(out));
}

} // namespace shapesig
