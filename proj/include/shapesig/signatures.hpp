#pragma once

#include "shapesig/contour.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace shapesig {

enum class SignatureKind { FSD, PC, CC, AF, ARC, TAR, CLD };

inline constexpr std::array<SignatureKind, 7> kAllKinds{
    SignatureKind::FSD, SignatureKind::PC, SignatureKind::CC, SignatureKind::AF,
    SignatureKind::ARC, SignatureKind::TAR, SignatureKind::CLD,
};

// Lower-case CLI/file token: "fsd", "pc", ...
std::string_view to_string(SignatureKind kind) noexcept;
std::optional<SignatureKind> parse_kind(std::string_view token) noexcept;

// Upper-case label for reports: "FSD", "PC", ...
std::string_view display_name(SignatureKind kind) noexcept;

bool is_complex(SignatureKind kind) noexcept;

// Raw per-sample sequence fed to the DFT.
class Signature {
public:
    using Real = std::vector<double>;
    using Complex = std::vector<std::complex<double>>;

    Signature(SignatureKind kind, Real samples) : kind_(kind), samples_(std::move(samples)) {}
    Signature(SignatureKind kind, Complex samples) : kind_(kind), samples_(std::move(samples)) {}

    SignatureKind kind() const noexcept { return kind_; }
    bool complex() const noexcept { return std::holds_alternative<Complex>(samples_); }
    std::size_t size() const noexcept
    {
        return std::visit([](const auto& s) { return s.size(); }, samples_);
    }

    const Real& real_samples() const { return std::get<Real>(samples_); }
    const Complex& complex_samples() const { return std::get<Complex>(samples_); }

    // Samples widened to complex (zero imaginary part for real kinds).
    Complex as_complex() const;

    // Circular shift by k samples: out[i] = in[(i + k) mod size].
    Signature rotated(std::size_t k) const;

private:
    SignatureKind kind_;
    std::variant<Real, Complex> samples_;
};

struct SignatureParams {
    std::size_t af_step = 5;  // s of the angular function, also used by ARC
    std::size_t tar_step = 1; // triangle half-span

    // InvalidStep unless both steps are >= 1 and < n / 2.
    void validate(std::size_t n) const;

    friend bool operator==(const SignatureParams&, const SignatureParams&) = default;
};

// Four side distances per point, normalised by the rectangle extent along
// each distance's own axis; length 4N, interleaved (top, right, bottom, left).
Signature fsd_signature(const Contour& contour, const BoundingRect& rect);

// radial(t) + j * theta(t) about the centroid.
Signature pc_signature(const Contour& contour, const Centroid& c);

// (x - xc) + j * (y - yc).
Signature cc_signature(const Contour& contour, const Centroid& c);

// Direction angle of p(t) - p(t - s), atan2 form, in (-pi, pi].
Signature af_signature(const Contour& contour, std::size_t step);

// radial(t) + j * af(t).
Signature arc_signature(const Contour& contour, const Centroid& c, std::size_t step);

// Signed area of (p(t-s), p(t), p(t+s)); positive at convex vertices of a CCW contour.
Signature tar_signature(const Contour& contour, std::size_t step);

// Longest chord through each point along the normal to the central-difference
// tangent; 0 where the normal line meets no other edge.
Signature cld_signature(const Contour& contour);

} // namespace shapesig
