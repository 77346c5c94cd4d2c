#pragma once

#include "shapesig/kernels.hpp"

namespace shapesig::kernels::detail {

// Defined only when the AVX2 translation unit is part of the build.
const KernelSet& avx2_set();

// Scalar fallback used by vector variants for leftover points.
void side_distances_tail(std::span<const Point> points, const BoundingRect& rect, std::span<double> out);

} // namespace shapesig::kernels::detail
