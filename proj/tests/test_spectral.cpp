#include "shapesig/error.hpp"
#include "shapesig/spectral.hpp"

#include "support/oracles.hpp"
#include "support/synthetic.hpp"

#include <doctest.h>

#include <cmath>

using namespace shapesig;
using namespace shapesig::testing;

namespace {

std::vector<std::complex<double>> random_sequence(Rng& rng, std::size_t m, bool complex_valued)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::complex<double>> x(m);
    for (auto& v : x)
        v = {u(rng), complex_valued ? u(rng) : 0.0};
    return x;
}

double max_abs_diff(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

} // namespace

TEST_CASE("dft of a constant is DC only")
{
    const Signature s(SignatureKind::TAR, Signature::Real(12, 2.5));
    const Spectrum a = dft(s);
    REQUIRE(a.size() == 12);
    CHECK(std::abs(a.coefficients[0] - 2.5) <= 1e-15);
    for (std::size_t n = 1; n < 12; ++n)
        CHECK(std::abs(a.coefficients[n]) <= 1e-15);
}

TEST_CASE("dft of an impulse is flat")
{
    const Signature s(SignatureKind::TAR, Signature::Real{1, 0, 0, 0});
    for (const auto& a : dft(s).coefficients)
        CHECK(std::abs(a - 0.25) <= 1e-15);
}

TEST_CASE("dft rejects very short signatures")
{
    const Signature s(SignatureKind::TAR, Signature::Real{1, 2, 3});
    CHECK_THROWS_AS(dft(s), Error);
}

TEST_CASE("forward_dft matches the naive oracle for every length up to 130 and assorted larger ones")
{
    Rng rng(31);
    std::vector<std::size_t> lengths;
    for (std::size_t m = 1; m <= 130; ++m)
        lengths.push_back(m);
    for (std::size_t m : {255u, 256u, 257u, 384u, 500u, 511u, 512u})
        lengths.push_back(m);
    for (std::size_t m : lengths) {
        const auto x = random_sequence(rng, m, m % 2 == 0);
        CHECK_MESSAGE(max_abs_diff(forward_dft(x), naive_dft(x)) <= 1e-12, "length " << m);
    }
}

TEST_CASE("dft is linear")
{
    Rng rng(33);
    for (std::size_t m : {16u, 60u, 97u}) {
        const auto x = random_sequence(rng, m, true);
        const auto y = random_sequence(rng, m, true);
        const std::complex<double> alpha{0.7, -1.3}, beta{-2.0, 0.25};
        std::vector<std::complex<double>> z(m);
        for (std::size_t i = 0; i < m; ++i)
            z[i] = alpha * x[i] + beta * y[i];
        const auto fx = forward_dft(x), fy = forward_dft(y), fz = forward_dft(z);
        for (std::size_t i = 0; i < m; ++i)
            CHECK(std::abs(fz[i] - (alpha * fx[i] + beta * fy[i])) <= 1e-9);
    }
}

TEST_CASE("Parseval under the 1/M convention: M * sum |a_n|^2 = sum |x_t|^2")
{
    Rng rng(35);
    for (std::size_t m : {8u, 100u, 512u}) {
        const auto x = random_sequence(rng, m, true);
        const auto a = forward_dft(x);
        double energy_time = 0.0, energy_freq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            energy_time += std::norm(x[i]);
            energy_freq += std::norm(a[i]);
        }
        CHECK(std::abs(static_cast<double>(m) * energy_freq - energy_time) <= 1e-9);
    }
}

TEST_CASE("fd_normalize")
{
    Spectrum s;
    s.coefficients = {{2, 0}, {0, 1}, {1, 0}, {0.5, 0}, {0, 0}, {0, 0}, {0, 0}, {9, 9}};
    const Descriptor d = fd_normalize(s, SignatureKind::PC);
    CHECK(d.kind == SignatureKind::PC);
    REQUIRE(d.dim() == 4);
    CHECK(d.values[0] == 0.5);
    CHECK(d.values[1] == 0.5);
    CHECK(d.values[2] == 0.25);
    CHECK(d.values[3] == 0.0);

    SUBCASE("scale invariance")
    {
        Rng rng(37);
        const auto x = random_sequence(rng, 64, true);
        std::vector<std::complex<double>> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            y[i] = 3.75 * x[i];
        const Descriptor a = fd_normalize({forward_dft(x)}, SignatureKind::CC);
        const Descriptor b = fd_normalize({forward_dft(y)}, SignatureKind::CC);
        for (std::size_t i = 0; i < a.dim(); ++i)
            CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-12);
    }
    SUBCASE("elementwise oracle")
    {
        Rng rng(39);
        const auto a = random_sequence(rng, 50, true);
        const Descriptor d2 = fd_normalize({a}, SignatureKind::ARC);
        REQUIRE(d2.dim() == 25);
        for (std::size_t n = 1; n <= 25; ++n)
            CHECK(std::abs(d2.values[n - 1] - std::abs(a[n]) / std::abs(a[0])) <= 1e-12);
    }
    SUBCASE("near-zero DC is an error")
    {
        Spectrum z;
        z.coefficients = {{1e-13, 0}, {1, 0}, {1, 0}, {1, 0}};
        try {
            fd_normalize(z, SignatureKind::AF);
            FAIL("expected DegenerateDescriptor");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DegenerateDescriptor);
        }
    }
}

TEST_CASE("fsd_descriptor")
{
    SUBCASE("constant signature gives zeros")
    {
        const Signature s(SignatureKind::FSD, Signature::Real(4 * 16, 0.4));
        const Descriptor d = fsd_descriptor(s);
        REQUIRE(d.dim() == 32);
        for (double v : d.values)
            CHECK(std::abs(v) <= 1e-15);
    }
    SUBCASE("matches naive DFT magnitudes")
    {
        Rng rng(41);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Signature::Real samples(4 * 128);
        for (double& v : samples)
            v = u(rng);
        const Descriptor d = fsd_descriptor(Signature(SignatureKind::FSD, samples));
        const std::vector<std::complex<double>> as_complex(samples.begin(), samples.end());
        const auto oracle = naive_dft(as_complex);
        REQUIRE(d.dim() == 256);
        for (std::size_t n = 1; n <= 256; ++n)
            CHECK(std::abs(d.values[n - 1] - std::abs(oracle[n])) <= 1e-9);
    }
    SUBCASE("circular shifts leave magnitudes unchanged")
    {
        Rng rng(43);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Signature::Real samples(4 * 32);
        for (double& v : samples)
            v = u(rng);
        const Signature s(SignatureKind::FSD, samples);
        const Descriptor base = fsd_descriptor(s);
        for (std::size_t k : {1u, 4u, 37u, 127u}) {
            const Descriptor shifted = fsd_descriptor(s.rotated(k));
            for (std::size_t i = 0; i < base.dim(); ++i)
                CHECK(std::abs(shifted.values[i] - base.values[i]) <= 1e-9);
        }
    }
    SUBCASE("rejects other kinds")
    {
        CHECK_THROWS_AS(fsd_descriptor(Signature(SignatureKind::TAR, Signature::Real(16, 1.0))), Error);
    }
}

TEST_CASE("describe truncates to the leading coefficients")
{
    Rng rng(45);
    const auto x = random_sequence(rng, 64, true);
    const Signature s(SignatureKind::CC, x);
    const Descriptor full = describe(s);
    CHECK(full.dim() == 32);
    const Descriptor head = describe(s, 10);
    REQUIRE(head.dim() == 10);
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(head.values[i] == full.values[i]);
    CHECK_THROWS_AS(describe(s, 33), Error);
    CHECK_THROWS_AS(describe(s, 0), Error);
    CHECK(full_descriptor_dim(SignatureKind::FSD, 128) == 256);
    CHECK(full_descriptor_dim(SignatureKind::CLD, 128) == 64);
}
