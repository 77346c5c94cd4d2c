#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace shapesig::detail {

// Unscaled forward transform X_n = sum_t x_t exp(-j 2 pi n t / M).
// Power-of-two sizes run an iterative radix-2 transform; other sizes go
// through Bluestein's chirp-z reformulation on a padded power-of-two grid.
class FftPlan {
public:
    explicit FftPlan(std::size_t size);

    std::size_t size() const noexcept { return size_; }
    void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;

    // Plans are immutable; the cache hands out shared instances per size.
    static std::shared_ptr<const FftPlan> get(std::size_t size);

private:
    struct Radix2 {
        std::size_t size = 0;
        std::vector<std::size_t> bit_reverse;
        std::vector<std::complex<double>> twiddles; // exp(-j 2 pi k / size), k < size/2

        explicit Radix2(std::size_t n);
        void run(std::span<std::complex<double>> data, bool inverse) const;
    };

    std::size_t size_;
    std::unique_ptr<Radix2> direct_;      // power-of-two sizes
    std::unique_ptr<Radix2> padded_;      // Bluestein grid
    std::vector<std::complex<double>> chirp_;          // exp(-j pi t^2 / M)
    std::vector<std::complex<double>> filter_spectrum_; // FFT of conj chirp, padded
};

} // namespace shapesig::detail
