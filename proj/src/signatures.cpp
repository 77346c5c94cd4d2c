#include "shapesig/signatures.hpp"

#include "shapesig/error.hpp"
#include "shapesig/kernels.hpp"

#include <cmath>
#include <numbers>

namespace shapesig {

std::string_view to_string(SignatureKind kind) noexcept
{
    switch (kind) {
    case SignatureKind::FSD: return "fsd";
    case SignatureKind::PC: return "pc";
    case SignatureKind::CC: return "cc";
    case SignatureKind::AF: return "af";
    case SignatureKind::ARC: return "arc";
    case SignatureKind::TAR: return "tar";
    case SignatureKind::CLD: return "cld";
    }
    return "?";
}

std::string_view display_name(SignatureKind kind) noexcept
{
    switch (kind) {
    case SignatureKind::FSD: return "FSD";
    case SignatureKind::PC: return "PC";
    case SignatureKind::CC: return "CC";
    case SignatureKind::AF: return "AF";
    case SignatureKind::ARC: return "ARC";
    case SignatureKind::TAR: return "TAR";
    case SignatureKind::CLD: return "CLD";
    }
    return "?";
}

std::optional<SignatureKind> parse_kind(std::string_view token) noexcept
{
    for (SignatureKind kind : kAllKinds)
        if (token == to_string(kind) || token == display_name(kind))
            return kind;
    return std::nullopt;
}

bool is_complex(SignatureKind kind) noexcept
{
    return kind == SignatureKind::PC || kind == SignatureKind::CC || kind == SignatureKind::ARC;
}

Signature::Complex Signature::as_complex() const
{
    if (complex())
        return complex_samples();
    const Real& re = real_samples();
    return Complex(re.begin(), re.end());
}

Signature Signature::rotated(std::size_t k) const
{
    return std::visit(
        [&](const auto& s) {
            std::decay_t<decltype(s)> out(s.size());
            for (std::size_t i = 0; i < s.size(); ++i)
                out[i] = s[(i + k) % s.size()];
            return Signature(kind_, std::move(out));
        },
        samples_);
}

void SignatureParams::validate(std::size_t n) const
{
    auto check = [n](std::size_t step, const char* what) {
        if (step < 1 || 2 * step >= n)
            throw Error(ErrorCode::InvalidStep,
                        std::string(what) + " must satisfy 1 <= step < samples/2 (got " + std::to_string(step) +
                            " for " + std::to_string(n) + " samples)");
    };
    check(af_step, "af step");
    check(tar_step, "tar step");
}

namespace {

// atan2 folded into (-pi, pi].
double angle_of(double dy, double dx)
{
    const double a = std::atan2(dy, dx);
    return a == -std::numbers::pi ? std::numbers::pi : a;
}

void check_step(const Contour& contour, std::size_t step)
{
    if (step < 1 || 2 * step >= contour.size())
        throw Error(ErrorCode::InvalidStep, "step must satisfy 1 <= step < N/2");
}

double radial(const Point& p, const Centroid& c)
{
    return std::hypot(p.x - c.x, p.y - c.y);
}

double cross(double ax, double ay, double bx, double by)
{
    return ax * by - ay * bx;
}

} // namespace

Signature fsd_signature(const Contour& contour, const BoundingRect& rect)
{
    if (!(rect.horizontal_extent() > 0.0) || !(rect.vertical_extent() > 0.0))
        throw Error(ErrorCode::DegenerateShape, "bounding rectangle has zero extent");
    std::vector<double> out(4 * contour.size());
    kernels::active().side_distances(contour.points(), rect, out);
    return Signature(SignatureKind::FSD, std::move(out));
}

Signature pc_signature(const Contour& contour, const Centroid& c)
{
    Signature::Complex out;
    out.reserve(contour.size());
    for (const Point& p : contour.points())
        out.emplace_back(radial(p, c), angle_of(p.y - c.y, p.x - c.x));
    return Signature(SignatureKind::PC, std::move(out));
}

Signature cc_signature(const Contour& contour, const Centroid& c)
{
    Signature::Complex out;
    out.reserve(contour.size());
    for (const Point& p : contour.points())
        out.emplace_back(p.x - c.x, p.y - c.y);
    return Signature(SignatureKind::CC, std::move(out));
}

Signature af_signature(const Contour& contour, std::size_t step)
{
    check_step(contour, step);
    const long s = static_cast<long>(step);
    Signature::Real out(contour.size());
    for (std::size_t t = 0; t < contour.size(); ++t) {
        const Point& cur = contour[t];
        const Point& prev = contour.wrap(static_cast<long>(t) - s);
        out[t] = angle_of(cur.y - prev.y, cur.x - prev.x);
    }
    return Signature(SignatureKind::AF, std::move(out));
}

Signature arc_signature(const Contour& contour, const Centroid& c, std::size_t step)
{
    const Signature::Real angles = af_signature(contour, step).real_samples();
    Signature::Complex out;
    out.reserve(contour.size());
    for (std::size_t t = 0; t < contour.size(); ++t)
        out.emplace_back(radial(contour[t], c), angles[t]);
    return Signature(SignatureKind::ARC, std::move(out));
}

Signature tar_signature(const Contour& contour, std::size_t step)
{
    check_step(contour, step);
    const long s = static_cast<long>(step);
    Signature::Real out(contour.size());
    for (std::size_t t = 0; t < contour.size(); ++t) {
        const long i = static_cast<long>(t);
        const Point& a = contour.wrap(i - s);
        const Point& b = contour[t];
        const Point& c = contour.wrap(i + s);
        out[t] = 0.5 * cross(b.x - a.x, b.y - a.y, c.x - b.x, c.y - b.y);
    }
    return Signature(SignatureKind::TAR, std::move(out));
}

Signature cld_signature(const Contour& contour)
{
    const std::size_t n = contour.size();
    if (n < 3)
        throw Error(ErrorCode::DegenerateShape, "contour has fewer than 3 points");

    constexpr double kEdgeSlack = 1e-12;
    Signature::Real out(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        const long ti = static_cast<long>(t);
        const Point& p = contour[t];
        const Point& next = contour.wrap(ti + 1);
        const Point& prev = contour.wrap(ti - 1);
        // Normal = tangent rotated by 90 degrees.
        const double nx = -(next.y - prev.y);
        const double ny = next.x - prev.x;
        const double norm = std::hypot(nx, ny);
        if (norm == 0.0)
            continue;

        double longest = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            // Skip the two edges that meet at p.
            if (i == t || (i + 1) % n == t)
                continue;
            const Point& a = contour[i];
            const Point& b = contour[(i + 1) % n];
            const double ex = b.x - a.x;
            const double ey = b.y - a.y;
            const double denom = cross(nx, ny, ex, ey);
            if (std::abs(denom) <= 1e-15 * norm * std::hypot(ex, ey))
                continue;
            const double apx = a.x - p.x;
            const double apy = a.y - p.y;
            const double u = cross(apx, apy, nx, ny) / denom;
            if (u < -kEdgeSlack || u > 1.0 + kEdgeSlack)
                continue;
            const double s = cross(apx, apy, ex, ey) / denom;
            longest = std::max(longest, std::abs(s) * norm);
        }
        out[t] = longest;
    }
    return Signature(SignatureKind::CLD, std::move(out));
}

} // namespace shapesig
