#include "kernels_internal.hpp"

#include <cmath>

namespace shapesig::kernels {

namespace {

void squared_l2_rows(std::span<const double> query, std::span<const double> rows, std::span<double> out)
{
    const std::size_t dim = query.size();
    for (std::size_t r = 0; r < out.size(); ++r) {
        const double* row = rows.data() + r * dim;
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = query[d] - row[d];
            acc += diff * diff;
        }
        out[r] = acc;
    }
}

void complex_multiply(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
                      std::span<std::complex<double>> out)
{
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        out[i] = {ar * br - ai * bi, ar * bi + ai * br};
    }
}

void magnitudes(std::span<const std::complex<double>> in, std::span<double> out)
{
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double re = in[i].real(), im = in[i].imag();
        out[i] = std::sqrt(re * re + im * im);
    }
}

void side_distances(std::span<const Point> points, const BoundingRect& rect, std::span<double> out)
{
    const double h = rect.horizontal_extent();
    const double v = rect.vertical_extent();
    for (std::size_t t = 0; t < points.size(); ++t) {
        const Point& p = points[t];
        out[4 * t + 0] = (rect.y_max - p.y) / v;
        out[4 * t + 1] = (rect.x_max - p.x) / h;
        out[4 * t + 2] = (p.y - rect.y_min) / v;
        out[4 * t + 3] = (p.x - rect.x_min) / h;
    }
}

} // namespace

const KernelSet& scalar()
{
    static const KernelSet set{"scalar", squared_l2_rows, complex_multiply, magnitudes, side_distances};
    return set;
}

namespace detail {

void side_distances_tail(std::span<const Point> points, const BoundingRect& rect, std::span<double> out)
{
    side_distances(points, rect, out);
}

} // namespace detail

} // namespace shapesig::kernels
