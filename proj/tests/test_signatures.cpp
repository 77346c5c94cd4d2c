#include "shapesig/contour.hpp"
#include "shapesig/error.hpp"
#include "shapesig/signatures.hpp"

#include "support/synthetic.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace shapesig;
using namespace shapesig::testing;

namespace {

Contour circle(double radius, std::size_t n, Point center = {0, 0})
{
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        pts.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
    }
    return Contour(pts);
}

Contour random_contour(Rng& rng, std::size_t n)
{
    return resample(trace_boundary(random_blob(rng, 36)), n);
}

template <class Fn>
void check_error(ErrorCode expected, Fn&& fn)
{
    try {
        fn();
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == expected);
    }
}

} // namespace

TEST_CASE("kind names round-trip")
{
    for (SignatureKind k : kAllKinds) {
        CHECK(parse_kind(to_string(k)) == k);
        CHECK(parse_kind(display_name(k)) == k);
    }
    CHECK_FALSE(parse_kind("fourier").has_value());
}

TEST_CASE("fsd_signature")
{
    SUBCASE("unit square corner")
    {
        const Contour square(std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
        const Signature s = fsd_signature(square, bounding_rect(square));
        REQUIRE(s.size() == 16);
        CHECK_FALSE(s.complex());
        const auto v = s.real_samples();
        CHECK(v[0] == 1.0); // top
        CHECK(v[1] == 1.0); // right
        CHECK(v[2] == 0.0); // bottom
        CHECK(v[3] == 0.0); // left
    }
    SUBCASE("circle: the top point")
    {
        // 128 samples put point 32 exactly at 90 degrees.
        const Contour c = circle(5.0, 128, {10, 10});
        const BoundingRect box = bounding_rect(c);
        const auto v = fsd_signature(c, box).real_samples();
        CHECK(v[4 * 32 + 0] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(v[4 * 32 + 1] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(v[4 * 32 + 2] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(v[4 * 32 + 3] == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("collinear contour is degenerate")
    {
        const Contour line(std::vector<Point>{{0, 0}, {1, 0}, {2, 0}, {1, 0}});
        check_error(ErrorCode::DegenerateShape, [&] { fsd_signature(line, bounding_rect(line)); });
    }
    SUBCASE("bounds and complementary pairs on random shapes")
    {
        Rng rng(2);
        for (int trial = 0; trial < 50; ++trial) {
            const Contour c = random_contour(rng, 64);
            const auto v = fsd_signature(c, bounding_rect(c)).real_samples();
            REQUIRE(v.size() == 256);
            for (std::size_t t = 0; t < 64; ++t) {
                for (int j = 0; j < 4; ++j) {
                    CHECK(v[4 * t + j] >= 0.0);
                    CHECK(v[4 * t + j] <= 1.0);
                }
                CHECK(std::abs(v[4 * t] + v[4 * t + 2] - 1.0) <= 1e-12);
                CHECK(std::abs(v[4 * t + 1] + v[4 * t + 3] - 1.0) <= 1e-12);
            }
        }
    }
    SUBCASE("exact uniform scaling")
    {
        Rng rng(4);
        const Contour c = random_contour(rng, 64);
        std::vector<Point> scaled;
        for (const Point& p : c.points())
            scaled.push_back({p.x * 2.5, p.y * 2.5});
        const Contour cs(scaled);
        const auto a = fsd_signature(c, bounding_rect(c)).real_samples();
        const auto b = fsd_signature(cs, bounding_rect(cs)).real_samples();
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(std::abs(a[i] - b[i]) <= 1e-12);
    }
}

TEST_CASE("pc_signature")
{
    const Contour c = circle(5.0, 64);
    const auto s = pc_signature(c, {0, 0}).complex_samples();
    for (const auto& v : s)
        CHECK(v.real() == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(s[16].imag() == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));

    const Contour one(std::vector<Point>{{3, 4}, {0, 0}, {-1, 2}});
    const auto t = pc_signature(one, {0, 0}).complex_samples();
    CHECK(t[0].real() == 5.0);
    // A point on the centroid has radial 0 and angle 0.
    CHECK(t[1] == std::complex<double>(0.0, 0.0));

    // Angle on the negative x-axis is +pi, never -pi.
    const Contour left(std::vector<Point>{{-2, 0}, {0, 1}, {1, 0}});
    CHECK(pc_signature(left, {0, 0}).complex_samples()[0].imag() == std::numbers::pi);

    Rng rng(6);
    const Contour r = random_contour(rng, 128);
    const Centroid g{17.25, 9.5};
    const auto u = pc_signature(r, g).complex_samples();
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double dx = r[i].x - g.x, dy = r[i].y - g.y;
        CHECK(std::abs(u[i].real() - std::sqrt(dx * dx + dy * dy)) <= 1e-12);
    }
}

TEST_CASE("cc_signature")
{
    Rng rng(8);
    const Contour r = random_contour(rng, 64);
    const auto at_origin = cc_signature(r, {0, 0}).complex_samples();
    for (std::size_t i = 0; i < r.size(); ++i)
        CHECK(at_origin[i] == std::complex<double>(r[i].x, r[i].y));

    const Centroid g{3.5, -2.25};
    const auto s = cc_signature(r, g).complex_samples();
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(std::abs(s[i].real() - (r[i].x - g.x)) <= 1e-12);
        CHECK(std::abs(s[i].imag() - (r[i].y - g.y)) <= 1e-12);
    }

    std::vector<Point> moved;
    for (const Point& p : r.points())
        moved.push_back({p.x + 7, p.y - 3});
    const auto t = cc_signature(Contour(moved), {g.x + 7, g.y - 3}).complex_samples();
    for (std::size_t i = 0; i < r.size(); ++i)
        CHECK(std::abs(t[i] - s[i]) <= 1e-12);
}

TEST_CASE("af_signature")
{
    std::vector<Point> east, north;
    for (int i = 0; i < 12; ++i) {
        east.push_back({static_cast<double>(i), 0.0});
        north.push_back({0.0, static_cast<double>(i)});
    }
    const auto e = af_signature(Contour(east), 2).real_samples();
    const auto n = af_signature(Contour(north), 2).real_samples();
    // Samples whose step does not wrap around the closing edge.
    for (std::size_t t = 2; t < 12; ++t) {
        CHECK(e[t] == 0.0);
        CHECK(n[t] == std::numbers::pi / 2);
    }

    check_error(ErrorCode::InvalidStep, [&] { af_signature(Contour(east), 0); });
    check_error(ErrorCode::InvalidStep, [&] { af_signature(Contour(east), 6); });

    Rng rng(10);
    const Contour r = random_contour(rng, 128);
    const auto s = af_signature(r, 5).real_samples();
    for (std::size_t t = 0; t < r.size(); ++t) {
        const Point& a = r[(t + r.size() - 5) % r.size()];
        const double want = std::atan2(r[t].y - a.y, r[t].x - a.x);
        CHECK(std::abs(s[t] - want) <= 1e-12);
        CHECK(s[t] > -std::numbers::pi);
        CHECK(s[t] <= std::numbers::pi);
    }
}

TEST_CASE("arc_signature shares its parts with pc and af")
{
    Rng rng(12);
    const Contour r = random_contour(rng, 128);
    const Centroid g{20, 18};
    const auto arc = arc_signature(r, g, 5).complex_samples();
    const auto pc = pc_signature(r, g).complex_samples();
    const auto af = af_signature(r, 5).real_samples();
    for (std::size_t t = 0; t < r.size(); ++t) {
        CHECK(arc[t].real() == pc[t].real());
        CHECK(arc[t].imag() == af[t]);
    }
    const auto circ = arc_signature(circle(3.0, 64), {0, 0}, 5).complex_samples();
    for (const auto& v : circ)
        CHECK(v.real() == doctest::Approx(3.0).epsilon(1e-14));
    check_error(ErrorCode::InvalidStep, [&] { arc_signature(r, g, 64); });
}

TEST_CASE("tar_signature")
{
    const Contour collinear(std::vector<Point>{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}});
    CHECK(tar_signature(collinear, 1).real_samples()[2] == 0.0);

    // Points (0,0), (1,0), (1,1) as (t-s, t, t+s).
    const Contour tri(std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {5, 5}, {4, 6}, {-1, 1}});
    CHECK(tar_signature(tri, 1).real_samples()[1] == 0.5);

    Rng rng(14);
    const Contour r = random_contour(rng, 128);
    for (std::size_t step : {1u, 3u, 7u}) {
        const auto s = tar_signature(r, step).real_samples();
        for (std::size_t t = 0; t < r.size(); ++t) {
            const Point& a = r[(t + r.size() - step) % r.size()];
            const Point& b = r[t];
            const Point& c = r[(t + step) % r.size()];
            const double shoelace = 0.5 * ((a.x * b.y - b.x * a.y) + (b.x * c.y - c.x * b.y) + (c.x * a.y - a.x * c.y));
            CHECK(std::abs(s[t] - shoelace) <= 1e-12 * std::max(1.0, std::abs(shoelace)));
        }
    }

    // Reversing orientation negates each sample (index t maps to n-1-t).
    std::vector<Point> rev(r.points().rbegin(), r.points().rend());
    const auto fwd = tar_signature(r, 3).real_samples();
    const auto bwd = tar_signature(Contour(rev), 3).real_samples();
    for (std::size_t t = 0; t < r.size(); ++t)
        CHECK(bwd[r.size() - 1 - t] == doctest::Approx(-fwd[t]).epsilon(1e-12));
}

TEST_CASE("cld_signature")
{
    SUBCASE("circle chords are diameters")
    {
        const auto s = cld_signature(circle(20.0, 128)).real_samples();
        for (double v : s)
            CHECK(std::abs(v - 40.0) <= 0.02 * 40.0);
    }
    SUBCASE("thin bar: mid-edge chords span the thickness")
    {
        BinaryMask bar(44, 6);
        for (std::size_t r = 2; r < 4; ++r)
            for (std::size_t c = 2; c < 42; ++c)
                bar.set(r, c, true);
        const Contour c = resample(trace_boundary(bar), 128);
        const auto s = cld_signature(c).real_samples();
        // Pixel-centre thickness of a 2-pixel bar is 1.
        std::size_t checked = 0;
        for (std::size_t t = 0; t < c.size(); ++t) {
            if (c[t].x > 12.0 && c[t].x < 32.0) {
                CHECK(s[t] == doctest::Approx(1.0).epsilon(1e-9));
                ++checked;
            }
        }
        CHECK(checked > 20);
    }
    SUBCASE("random convex polygons: chord endpoints lie on the boundary")
    {
        Rng rng(16);
        for (int trial = 0; trial < 20; ++trial) {
            const Contour c = resample(Contour(random_convex_polygon(rng, 12, 30.0)), 64);
            const auto s = cld_signature(c).real_samples();
            for (std::size_t t = 0; t < c.size(); ++t) {
                const Point& prev = c[(t + c.size() - 1) % c.size()];
                const Point& next = c[(t + 1) % c.size()];
                double nx = -(next.y - prev.y), ny = next.x - prev.x;
                const double len = std::hypot(nx, ny);
                nx /= len;
                ny /= len;
                // The chord ends at p + s*n or p - s*n; one of them must sit on some edge.
                double best = 1e300;
                for (int sign : {1, -1}) {
                    const Point q{c[t].x + sign * s[t] * nx, c[t].y + sign * s[t] * ny};
                    for (std::size_t i = 0; i < c.size(); ++i) {
                        const Point& a = c[i];
                        const Point& b = c[(i + 1) % c.size()];
                        const double ex = b.x - a.x, ey = b.y - a.y;
                        const double u = std::clamp(((q.x - a.x) * ex + (q.y - a.y) * ey) / (ex * ex + ey * ey), 0.0, 1.0);
                        best = std::min(best, std::hypot(a.x + u * ex - q.x, a.y + u * ey - q.y));
                    }
                }
                CHECK(best <= 1e-9);
                CHECK(s[t] > 0.0);
            }
        }
    }
}

TEST_CASE("signature lengths and sample types")
{
    Rng rng(18);
    const Contour c = random_contour(rng, 64);
    const Centroid g{15, 15};
    CHECK(fsd_signature(c, bounding_rect(c)).size() == 256);
    CHECK(pc_signature(c, g).size() == 64);
    CHECK(cc_signature(c, g).size() == 64);
    CHECK(af_signature(c, 5).size() == 64);
    CHECK(arc_signature(c, g, 5).size() == 64);
    CHECK(tar_signature(c, 1).size() == 64);
    CHECK(cld_signature(c).size() == 64);
    CHECK(pc_signature(c, g).complex());
    CHECK_FALSE(tar_signature(c, 1).complex());
}

TEST_CASE("SignatureParams validation")
{
    SignatureParams p;
    CHECK_NOTHROW(p.validate(128));
    p.af_step = 64;
    check_error(ErrorCode::InvalidStep, [&] { p.validate(128); });
    p = {};
    p.tar_step = 0;
    check_error(ErrorCode::InvalidStep, [&] { p.validate(128); });
}

TEST_CASE("rotated shifts samples circularly")
{
    const Signature s(SignatureKind::TAR, Signature::Real{1, 2, 3, 4, 5});
    CHECK(s.rotated(2).real_samples() == Signature::Real{3, 4, 5, 1, 2});
}
