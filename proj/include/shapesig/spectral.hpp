#pragma once

#include "shapesig/signatures.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace shapesig {

// DFT coefficients a_0 .. a_{M-1} with the forward 1/M scaling.
struct Spectrum {
    std::vector<std::complex<double>> coefficients;

    std::size_t size() const noexcept { return coefficients.size(); }
};

struct Descriptor {
    SignatureKind kind = SignatureKind::FSD;
    std::vector<double> values;

    std::size_t dim() const noexcept { return values.size(); }

    friend bool operator==(const Descriptor&, const Descriptor&) = default;
};

// Below this |a_0| the ratio descriptor is undefined.
inline constexpr double kMinDcMagnitude = 1e-12;

// a_n = (1/M) sum_t x(t) exp(-j 2 pi n t / M), any M >= 1.
std::vector<std::complex<double>> forward_dft(std::span<const std::complex<double>> samples);

Spectrum dft(const Signature& signature);

// |a_n| / |a_0| for n = 1 .. M/2, tagged with `kind`.
Descriptor fd_normalize(const Spectrum& spectrum, SignatureKind kind);

// |a_n| for n = 1 .. M/2 of an FSD signature (M = 4N).
Descriptor fsd_descriptor(const Signature& signature);

// Dispatches to fsd_descriptor or fd_normalize by kind, then keeps the
// leading `coeffs` values when given.
Descriptor describe(const Signature& signature, std::optional<std::size_t> coeffs = std::nullopt);

// Full descriptor length for N contour samples: 2N for FSD, N/2 otherwise.
std::size_t full_descriptor_dim(SignatureKind kind, std::size_t samples) noexcept;

} // namespace shapesig
