#include "fft.hpp"

#include "shapesig/kernels.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <unordered_map>

namespace shapesig::detail {

FftPlan::Radix2::Radix2(std::size_t n) : size(n), bit_reverse(n), twiddles(n / 2)
{
    const unsigned bits = static_cast<unsigned>(std::countr_zero(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (unsigned b = 0; b < bits; ++b)
            r |= ((i >> b) & 1u) << (bits - 1 - b);
        bit_reverse[i] = r;
    }
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        twiddles[k] = {std::cos(angle), std::sin(angle)};
    }
}

void FftPlan::Radix2::run(std::span<std::complex<double>> data, bool inverse) const
{
    for (std::size_t i = 0; i < size; ++i)
        if (i < bit_reverse[i])
            std::swap(data[i], data[bit_reverse[i]]);

    for (std::size_t len = 2; len <= size; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = size / len;
        for (std::size_t base = 0; base < size; base += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const std::complex<double> w = inverse ? std::conj(twiddles[j * stride]) : twiddles[j * stride];
                const std::complex<double> a = data[base + j];
                const std::complex<double> b = data[base + j + half];
                const std::complex<double> wb{w.real() * b.real() - w.imag() * b.imag(),
                                              w.real() * b.imag() + w.imag() * b.real()};
                data[base + j] = a + wb;
                data[base + j + half] = a - wb;
            }
        }
    }
}

FftPlan::FftPlan(std::size_t size) : size_(size)
{
    if (size == 0)
        return;
    if (std::has_single_bit(size)) {
        direct_ = std::make_unique<Radix2>(size);
        return;
    }

    const std::size_t padded = std::bit_ceil(2 * size - 1);
    padded_ = std::make_unique<Radix2>(padded);

    chirp_.resize(size);
    const std::size_t period = 2 * size;
    for (std::size_t t = 0; t < size; ++t) {
        // t^2 mod 2M keeps the angle small and exact.
        const std::size_t q = (t * t) % period;
        const double angle = -std::numbers::pi * static_cast<double>(q) / static_cast<double>(size);
        chirp_[t] = {std::cos(angle), std::sin(angle)};
    }

    std::vector<std::complex<double>> filter(padded);
    filter[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < size; ++k) {
        filter[k] = std::conj(chirp_[k]);
        filter[padded - k] = std::conj(chirp_[k]);
    }
    padded_->run(filter, false);
    filter_spectrum_ = std::move(filter);
}

void FftPlan::forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const
{
    if (size_ == 0)
        return;
    if (direct_) {
        std::copy(in.begin(), in.end(), out.begin());
        direct_->run(out, false);
        return;
    }

    const auto& k = kernels::active();
    const std::size_t padded = padded_->size;
    std::vector<std::complex<double>> work(padded);
    k.complex_multiply(in, chirp_, std::span(work).first(size_));
    padded_->run(work, false);
    k.complex_multiply(work, filter_spectrum_, work);
    padded_->run(work, true);
    const double scale = 1.0 / static_cast<double>(padded);
    for (std::size_t n = 0; n < size_; ++n)
        work[n] *= scale;
    k.complex_multiply(std::span(work).first(size_), chirp_, out);
}

std::shared_ptr<const FftPlan> FftPlan::get(std::size_t size)
{
    static std::mutex mutex;
    static std::unordered_map<std::size_t, std::shared_ptr<const FftPlan>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[size];
    if (!slot)
        slot = std::make_shared<const FftPlan>(size);
    return slot;
}

} // namespace shapesig::detail
