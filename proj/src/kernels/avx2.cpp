// Compiled with -mavx2 and called only after a runtime CPU check.
#include "kernels_internal.hpp"

#include <immintrin.h>

#include <cmath>

namespace shapesig::kernels {

namespace {

double horizontal_sum(__m256d v)
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

void squared_l2_rows(std::span<const double> query, std::span<const double> rows, std::span<double> out)
{
    const std::size_t dim = query.size();
    const std::size_t body = dim & ~std::size_t{7};
    const double* q = query.data();
    for (std::size_t r = 0; r < out.size(); ++r) {
        const double* row = rows.data() + r * dim;
        __m256d acc0 = _mm256_setzero_pd();
        __m256d acc1 = _mm256_setzero_pd();
        std::size_t d = 0;
        for (; d < body; d += 8) {
            const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(q + d), _mm256_loadu_pd(row + d));
            const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(q + d + 4), _mm256_loadu_pd(row + d + 4));
            acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
            acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(d1, d1));
        }
        double acc = horizontal_sum(_mm256_add_pd(acc0, acc1));
        for (; d < dim; ++d) {
            const double diff = q[d] - row[d];
            acc += diff * diff;
        }
        out[r] = acc;
    }
}

void complex_multiply(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
                      std::span<std::complex<double>> out)
{
    const std::size_t n = out.size();
    const double* pa = reinterpret_cast<const double*>(a.data());
    const double* pb = reinterpret_cast<const double*>(b.data());
    double* po = reinterpret_cast<double*>(out.data());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);          // ar0 ai0 ar1 ai1
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);          // br0 bi0 br1 bi1
        const __m256d b_re = _mm256_movedup_pd(vb);              // br0 br0 br1 br1
        const __m256d b_im = _mm256_permute_pd(vb, 0b1111);      // bi0 bi0 bi1 bi1
        const __m256d a_swap = _mm256_permute_pd(va, 0b0101);    // ai0 ar0 ai1 ar1
        const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(va, b_re), _mm256_mul_pd(a_swap, b_im));
        _mm256_storeu_pd(po + 2 * i, prod);
    }
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        out[i] = {ar * br - ai * bi, ar * bi + ai * br};
    }
}

void magnitudes(std::span<const std::complex<double>> in, std::span<double> out)
{
    const std::size_t n = out.size();
    const double* p = reinterpret_cast<const double*>(in.data());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v0 = _mm256_loadu_pd(p + 2 * i);
        const __m256d v1 = _mm256_loadu_pd(p + 2 * i + 4);
        // hadd interleaves 128-bit lanes: m0 m2 m1 m3
        const __m256d sums = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
        const __m256d ordered = _mm256_permute4x64_pd(sums, 0b11011000);
        _mm256_storeu_pd(out.data() + i, _mm256_sqrt_pd(ordered));
    }
    for (; i < n; ++i) {
        const double re = in[i].real(), im = in[i].imag();
        out[i] = std::sqrt(re * re + im * im);
    }
}

void side_distances(std::span<const Point> points, const BoundingRect& rect, std::span<double> out)
{
    const std::size_t n = points.size();
    const __m256d x_max = _mm256_set1_pd(rect.x_max);
    const __m256d x_min = _mm256_set1_pd(rect.x_min);
    const __m256d y_max = _mm256_set1_pd(rect.y_max);
    const __m256d y_min = _mm256_set1_pd(rect.y_min);
    const __m256d h = _mm256_set1_pd(rect.horizontal_extent());
    const __m256d v = _mm256_set1_pd(rect.vertical_extent());
    const double* p = reinterpret_cast<const double*>(points.data());
    double* o = out.data();

    std::size_t t = 0;
    for (; t + 4 <= n; t += 4) {
        const __m256d a = _mm256_loadu_pd(p + 2 * t);       // x0 y0 x1 y1
        const __m256d b = _mm256_loadu_pd(p + 2 * t + 4);   // x2 y2 x3 y3
        const __m256d xs = _mm256_permute4x64_pd(_mm256_unpacklo_pd(a, b), 0b11011000);
        const __m256d ys = _mm256_permute4x64_pd(_mm256_unpackhi_pd(a, b), 0b11011000);

        const __m256d top = _mm256_div_pd(_mm256_sub_pd(y_max, ys), v);
        const __m256d right = _mm256_div_pd(_mm256_sub_pd(x_max, xs), h);
        const __m256d bottom = _mm256_div_pd(_mm256_sub_pd(ys, y_min), v);
        const __m256d left = _mm256_div_pd(_mm256_sub_pd(xs, x_min), h);

        // 4x4 transpose into per-point tuples.
        const __m256d tr_lo = _mm256_unpacklo_pd(top, right);    // T0 R0 T2 R2
        const __m256d tr_hi = _mm256_unpackhi_pd(top, right);    // T1 R1 T3 R3
        const __m256d bl_lo = _mm256_unpacklo_pd(bottom, left);  // B0 L0 B2 L2
        const __m256d bl_hi = _mm256_unpackhi_pd(bottom, left);  // B1 L1 B3 L3
        _mm256_storeu_pd(o + 4 * t + 0, _mm256_permute2f128_pd(tr_lo, bl_lo, 0x20));
        _mm256_storeu_pd(o + 4 * t + 4, _mm256_permute2f128_pd(tr_hi, bl_hi, 0x20));
        _mm256_storeu_pd(o + 4 * t + 8, _mm256_permute2f128_pd(tr_lo, bl_lo, 0x31));
        _mm256_storeu_pd(o + 4 * t + 12, _mm256_permute2f128_pd(tr_hi, bl_hi, 0x31));
    }
    if (t < n)
        detail::side_distances_tail(points.subspan(t), rect, out.subspan(4 * t));
}

} // namespace

namespace detail {

const KernelSet& avx2_set()
{
    static const KernelSet set{"avx2", squared_l2_rows, complex_multiply, magnitudes, side_distances};
    return set;
}

} // namespace detail

} // namespace shapesig::kernels
