#pragma once

#include "shapesig/contour.hpp"

#include <complex>
#include <span>
#include <string_view>

// Data-parallel inner loops. Every variant must agree with the scalar
// reference: bitwise for the element-wise kernels, to rounding for the
// reductions (squared_l2_rows sums in a different order).
namespace shapesig::kernels {

struct KernelSet {
    std::string_view name;

    // out[r] = sum_d (query[d] - rows[r * dim + d])^2, dim = query.size().
    void (*squared_l2_rows)(std::span<const double> query, std::span<const double> rows, std::span<double> out);

    // out[i] = a[i] * b[i]; out may alias a or b.
    void (*complex_multiply)(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
                             std::span<std::complex<double>> out);

    // out[i] = sqrt(re^2 + im^2).
    void (*magnitudes)(std::span<const std::complex<double>> in, std::span<double> out);

    // Four normalised side distances per point, interleaved top, right,
    // bottom, left. out.size() == 4 * points.size().
    void (*side_distances)(std::span<const Point> points, const BoundingRect& rect, std::span<double> out);
};

const KernelSet& scalar();

// nullptr when the variant was not compiled in or the CPU lacks the ISA.
const KernelSet* avx2();

// Selected once from the CPU features; SHAPESIG_SIMD=scalar|avx2 overrides.
const KernelSet& active();

// Replaces the active set (tests and benchmarking).
void select(const KernelSet& set);

} // namespace shapesig::kernels
