#include "helpers.hpp"

#include "losmimo/channel.hpp"
#include "losmimo/linalg.hpp"
#include "losmimo/spectral.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace losmimo;
using losmimo::test::error_code_of;

namespace {

constexpr double kLambda = 0.010707;

ChannelParams params(double d) {
    ChannelParams p;
    p.wavelength = kLambda;
    p.distance = d;
    return p;
}

AntennaLayout point(double x, double y, double z, Side side, double d) {
    AntennaLayout l;
    l.coords = {{x, y, z}};
    l.side = side;
    l.link_distance = d;
    return l;
}

std::pair<AntennaLayout, AntennaLayout> pair_of(const ArraySpec &t, const ArraySpec &r, double d) {
    return {build_layout(t, Side::Tx, d), build_layout(r, Side::Rx, d)};
}

// Second-order distance written out from the square-root expansion.
double taylor_reference(const Point3 &t, const Point3 &r, double d) {
    const double dz = r.z - t.z;
    const double dx = r.x - t.x, dy = r.y - t.y;
    return dz + (dx * dx + dy * dy) / (2.0 * d);
}

} // namespace

TEST_SUITE("channel") {

TEST_CASE("exact_channel on axis at integer and half-integer wavelengths") {
    const double d1 = 100.0 * kLambda;
    const ComplexMatrix h1 = exact_channel(point(0, 0, 0, Side::Tx, d1), point(0, 0, d1, Side::Rx, d1), params(d1));
    CHECK(std::abs(h1(0, 0) - 1.0) < 1e-9);
    const double d2 = 100.5 * kLambda;
    const ComplexMatrix h2 = exact_channel(point(0, 0, 0, Side::Tx, d2), point(0, 0, d2, Side::Rx, d2), params(d2));
    CHECK(std::abs(h2(0, 0) + 1.0) < 1e-9);
}

TEST_CASE("exact_channel is unit modulus with squared norm N M") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int trial = 0; trial < 20; ++trial) {
        const double deg = 40.0 * u(rng);
        const double a = deg * std::numbers::pi / 180.0;
        const ArraySpec spec{2, 2, 0.05 + 0.1 * (u(rng) + 0.5), 0.05 + 0.1 * (u(rng) + 0.5), a, 0.5 * a,
                             trial % 2 ? LayoutKind::RotatedUpa : LayoutKind::ParallelogramOptimal};
        auto [tx, rx] = pair_of(spec, spec, 20.0);
        const ComplexMatrix h = exact_channel(tx, rx, params(20.0));
        CHECK(std::abs(h.squared_frobenius_norm() - 16.0) < 1e-11);
        for (cplx v : h.entries()) CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
    }
}

TEST_CASE("fresnel factors on axis") {
    const double d = 30.0;
    const ChannelSet cs = fresnel_factors(point(0, 0, 0, Side::Tx, d), point(0, 0, d, Side::Rx, d), params(d));
    CHECK(std::abs(cs.h_tilde(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(cs.recompose()(0, 0) - cs.h_exact(0, 0)) < 1e-9);
}

TEST_CASE("recomposition matches the second-order distance expansion") {
    const double d = 50.0;
    SUBCASE("parallel 1x2") {
        auto [tx, rx] = pair_of({1, 2, 0.1, 0.1}, {1, 2, 0.1, 0.1}, d);
        const ChannelSet cs = fresnel_factors(tx, rx, params(d));
        const ComplexMatrix rec = cs.recompose();
        for (std::size_t n = 0; n < 2; ++n)
            for (std::size_t m = 0; m < 2; ++m) {
                const double dh = taylor_reference(tx.coords[m], rx.coords[n], d);
                CHECK(std::abs(rec(n, m) - std::polar(1.0, -2.0 * std::numbers::pi / kLambda * dh)) < 1e-10);
            }
    }
    SUBCASE("rotated 8x8 parallelogram") {
        const double a = 0.3;
        const SpacingSolution s = optimal_spacing(8, 8, 4, kLambda, d);
        auto [tx, rx] = pair_of({8, 8, s.d_t, s.d_t, a, a}, {8, 8, s.d_r, s.d_r, a, a}, d);
        const ChannelSet cs = fresnel_factors(tx, rx, params(d));
        CHECK(max_abs_diff(cs.recompose(), taylor_channel(tx, rx, params(d))) < 1e-10);
        for (std::size_t n = 0; n < rx.size(); n += 7)
            for (std::size_t m = 0; m < tx.size(); m += 5)
                CHECK(taylor_distance(tx.coords[m], rx.coords[n], d) ==
                      doctest::Approx(taylor_reference(tx.coords[m], rx.coords[n], d)).epsilon(1e-15));
    }
}

TEST_CASE("fresnel factors are unit modulus") {
    auto [tx, rx] = pair_of({3, 4, 0.1, 0.2, 0.2, 0.1}, {3, 4, 0.1, 0.2, 0.2, 0.1}, 40.0);
    const ChannelSet cs = fresnel_factors(tx, rx, params(40.0));
    for (cplx v : cs.h_tilde.entries()) CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
    for (cplx v : cs.d_t) CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
    for (cplx v : cs.d_r) CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
}

TEST_CASE("Fresnel error and spectrum gap shrink with distance at fixed aperture") {
    const SpacingSolution s = optimal_spacing(8, 8, 4, kLambda, 50.0);
    double prev_err = 1e300, prev_gap = 1e300;
    for (double d : {25.0, 50.0, 100.0}) {
        auto [tx, rx] = pair_of({8, 8, s.d_t, s.d_t}, {8, 8, s.d_r, s.d_r}, d);
        const ChannelSet cs = fresnel_factors(tx, rx, params(d));
        const double err = (cs.h_exact - cs.recompose()).frobenius_norm();
        const double gap = spectrum_gap(cs.h_exact, cs.h_tilde);
        CAPTURE(d);
        CHECK(err < prev_err);
        CHECK(gap < prev_gap);
        prev_err = err;
        prev_gap = gap;
    }
}

TEST_CASE("kron_factor_channel") {
    const ChannelParams p = params(50.0);
    SUBCASE("1x1") {
        const LinearFactors lf = kron_factor_channel({1, 1, 0.1, 0.1}, {1, 1, 0.1, 0.1}, p);
        CHECK(lf.h_linv(0, 0) == cplx(1.0));
        CHECK(lf.h_linh(0, 0) == cplx(1.0));
    }
    SUBCASE("2x2 matches the directly built core") {
        const ArraySpec t{2, 2, 0.3, 0.2}, r{2, 2, 0.25, 0.4};
        auto [tx, rx] = pair_of(t, r, 50.0);
        const LinearFactors lf = kron_factor_channel(t, r, p);
        CHECK(max_abs_diff(kron(lf.h_linv, lf.h_linh), transverse_channel(tx, rx, p)) < 1e-12);
    }
    SUBCASE("vertical-only array") {
        const ArraySpec t{5, 1, 0.1, 0.1}, r{4, 1, 0.12, 0.1};
        auto [tx, rx] = pair_of(t, r, 50.0);
        const LinearFactors lf = kron_factor_channel(t, r, p);
        CHECK(lf.h_linh.rows() == 1);
        CHECK(lf.h_linh(0, 0) == cplx(1.0));
        CHECK(max_abs_diff(lf.h_linv, transverse_channel(tx, rx, p)) < 1e-12);
    }
    SUBCASE("rotated specs rejected") {
        CHECK(error_code_of([&] { kron_factor_channel({2, 2, 0.1, 0.1, 0.1, 0.0}, {2, 2, 0.1, 0.1}, p); }) ==
              Errc::NotParallel);
    }
}

TEST_CASE("gram identities") {
    CHECK(max_abs_diff(gram(ComplexMatrix::identity(3), GramSide::TxGram), ComplexMatrix::identity(3)) == 0.0);
    const ArraySpec t{4, 3, 0.2, 0.15}, r{3, 4, 0.18, 0.21};
    auto [tx, rx] = pair_of(t, r, 50.0);
    const ChannelSet cs = fresnel_factors(tx, rx, params(50.0));
    const ComplexMatrix gt = gram(cs.h_exact, GramSide::TxGram), gr = gram(cs.h_exact, GramSide::RxGram);
    CHECK(gt.rows() == 12);
    CHECK(gr.rows() == 12);
    CHECK(std::abs(gt.trace().real() - 144.0) < 1e-9);
    CHECK(hermitian_asymmetry(gt) < 1e-12);

    const LinearFactors lf = kron_factor_channel(t, r, params(50.0));
    const ComplexMatrix gk = kron(gram(lf.h_linv, GramSide::TxGram), gram(lf.h_linh, GramSide::TxGram));
    CHECK(max_abs_diff(gram(cs.h_tilde, GramSide::TxGram), gk) < 1e-10);
    CHECK(block_toeplitz_deviation(gram(cs.h_tilde, GramSide::TxGram), 4, 3) < 1e-10);
}

TEST_CASE("prolate matrix examples") {
    const ComplexMatrix b = prolate_matrix(8.0, 3, 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(b(i, i).real() == doctest::Approx(0.5));
    CHECK(max_abs_diff(prolate_matrix(4.0, 3, 4), ComplexMatrix::identity(4)) < 1e-15);
    const ComplexMatrix c = prolate_matrix(5.5, 4, 9);
    CHECK(hermitian_asymmetry(c) == 0.0);
    CHECK(c.trace().real() == doctest::Approx(9 * 5.0 / 5.5).epsilon(1e-12));
}

TEST_CASE("prolate removable singularity matches a finite-difference limit") {
    // alpha = 4 puts i - k = 4, 8 on the singular grid; K odd and even give both signs.
    for (std::size_t k_param : {2u, 3u, 6u}) {
        const double alpha = 4.0;
        const ComplexMatrix b = prolate_matrix(alpha, k_param, 9);
        const double kp1 = static_cast<double>(k_param) + 1.0;
        for (double diff : {4.0, 8.0}) {
            const double x = diff + 1e-6;
            const double fd = std::sin(std::numbers::pi * x * kp1 / alpha) / (alpha * std::sin(std::numbers::pi * x / alpha));
            CAPTURE(k_param);
            CAPTURE(diff);
            CHECK(b(static_cast<std::size_t>(diff), 0).real() == doctest::Approx(fd).epsilon(1e-4));
        }
    }
}

TEST_CASE("prolate spectrum of B_16(32, 7)") {
    // numpy eigvalsh reference (tests/oracles/oracles.py).
    const double ref[] = {0.9999901169061952, 0.9991230190745155, 0.9743147458805606, 0.74698030727537,
                          0.25301969272463043, 0.025685254119439203, 0.0008769809254840041, 9.883093804388395e-06};
    const auto ev = eigvals_hermitian(prolate_matrix(32.0, 7, 16));
    REQUIRE(ev.size() == 16);
    for (std::size_t i = 0; i < 8; ++i) CHECK(ev[i] == doctest::Approx(ref[i]).epsilon(1e-9));
    for (double v : ev) {
        CHECK(v >= -1e-12);
        CHECK(v <= 1.0 + 1e-12);
    }
    const std::size_t near_one = static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [](double v) { return v >= 0.9; }));
    CHECK(near_one == 3);
}

TEST_CASE("linear-array Gram is a phase-modulated scaled prolate matrix") {
    const double d = 50.0;
    const SpacingSolution s = optimal_spacing(8, 8, 4, kLambda, d);
    const LinearFactors lf = kron_factor_channel({8, 1, s.d_t, 0.1}, {8, 1, s.d_r, 0.1}, params(d));
    const ComplexMatrix g = gram(lf.h_linv, GramSide::TxGram);
    const double alpha = 8.0 / s.delta; // N_max / delta
    const ComplexMatrix b = prolate_matrix(alpha, 7, 8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t k = 0; k < 8; ++k) {
            const double x = static_cast<double>(k) - static_cast<double>(i);
            const cplx phase = std::polar(1.0, std::numbers::pi * 7.0 * x / alpha);
            CHECK(std::abs(g(i, k) - phase * alpha * b(i, k)) < 1e-10);
        }
}

TEST_CASE("channel params") {
    ChannelParams p = params(50.0);
    CHECK_NOTHROW(p.validate());
    CHECK(p.zeta() == doctest::Approx(std::pow(kLambda / (4 * std::numbers::pi * 50.0), 2)));
    p.distance = 0.0;
    CHECK(error_code_of([&] { p.validate(); }) == Errc::InvalidArgument);
    CHECK(wavelength_from_ghz(28.0) == doctest::Approx(0.010706873));
}

TEST_CASE("fresnel regime flag") {
    auto [tx, rx] = pair_of({4, 4, 0.1, 0.1}, {4, 4, 0.1, 0.1}, 50.0);
    CHECK(fresnel_regime(tx, rx, params(50.0)));
    auto [tx2, rx2] = pair_of({4, 4, 0.1, 0.1}, {4, 4, 0.1, 0.1}, 0.3);
    CHECK_FALSE(fresnel_regime(tx2, rx2, params(0.3)));
}

} // TEST_SUITE
