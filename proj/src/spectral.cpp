#include "shapesig/spectral.hpp"

#include "fft.hpp"
#include "shapesig/error.hpp"
#include "shapesig/kernels.hpp"

#include <cmath>
#include <string>

namespace shapesig {

std::vector<std::complex<double>> forward_dft(std::span<const std::complex<double>> samples)
{
    const std::size_t m = samples.size();
    std::vector<std::complex<double>> out(m);
    if (m == 0)
        return out;
    detail::FftPlan::get(m)->forward(samples, out);
    const double scale = 1.0 / static_cast<double>(m);
    for (auto& a : out)
        a *= scale;
    return out;
}

Spectrum dft(const Signature& signature)
{
    if (signature.size() < 4)
        throw Error(ErrorCode::InvalidArgument, "signature must have at least 4 samples");
    if (signature.complex())
        return {forward_dft(signature.complex_samples())};
    return {forward_dft(signature.as_complex())};
}

namespace {

std::vector<double> leading_magnitudes(const Spectrum& spectrum)
{
    const std::size_t count = spectrum.size() / 2;
    std::vector<double> out(count);
    kernels::active().magnitudes(std::span(spectrum.coefficients).subspan(1, count), out);
    return out;
}

} // namespace

Descriptor fd_normalize(const Spectrum& spectrum, SignatureKind kind)
{
    if (spectrum.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "spectrum too short");
    const std::complex<double> dc = spectrum.coefficients[0];
    const double dc_magnitude = std::sqrt(dc.real() * dc.real() + dc.imag() * dc.imag());
    if (!(dc_magnitude >= kMinDcMagnitude))
        throw Error(ErrorCode::DegenerateDescriptor,
                    std::string(display_name(kind)) + " signature has |a_0| below 1e-12; ratio descriptor undefined");

    Descriptor d{kind, leading_magnitudes(spectrum)};
    for (double& v : d.values)
        v /= dc_magnitude;
    return d;
}

Descriptor fsd_descriptor(const Signature& signature)
{
    if (signature.kind() != SignatureKind::FSD || signature.size() % 4 != 0)
        throw Error(ErrorCode::KindMismatch, "fsd_descriptor expects an FSD signature of length 4N");
    return {SignatureKind::FSD, leading_magnitudes(dft(signature))};
}

Descriptor describe(const Signature& signature, std::optional<std::size_t> coeffs)
{
    Descriptor d = signature.kind() == SignatureKind::FSD ? fsd_descriptor(signature)
                                                          : fd_normalize(dft(signature), signature.kind());
    if (coeffs) {
        if (*coeffs == 0 || *coeffs > d.values.size())
            throw Error(ErrorCode::InvalidArgument, "coeffs must lie in [1, " + std::to_string(d.values.size()) + "]");
        d.values.resize(*coeffs);
    }
    return d;
}

std::size_t full_descriptor_dim(SignatureKind kind, std::size_t samples) noexcept
{
    return kind == SignatureKind::FSD ? 2 * samples : samples / 2;
}

} // namespace shapesig
