#include "helpers.hpp"

#include "losmimo/channel.hpp"
#include "losmimo/geometry.hpp"
#include "losmimo/linalg.hpp"
#include "losmimo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

using namespace losmimo;
using losmimo::test::error_code_of;
using losmimo::test::random_matrix;

namespace {

constexpr double kLambda = 0.010707;
constexpr double kD = 50.0;

ChannelParams params() {
    ChannelParams p;
    p.wavelength = kLambda;
    p.distance = kD;
    return p;
}

// Gram of the Fresnel core of an n x 1 ULA pair at spacings d_t, d_r.
ComplexMatrix ula_gram(std::size_t n, std::size_t m, double dt, double dr) {
    const LinearFactors lf = kron_factor_channel({m, 1, dt, 1.0}, {n, 1, dr, 1.0}, params());
    return gram(lf.h_linv, GramSide::TxGram);
}

} // namespace

TEST_SUITE("spectral") {

TEST_CASE("transition_band reference values") {
    // tests/oracles/oracles.py: M = 16, N_max = 16.
    CHECK(transition_band(16, 16, 0.5, 0.05) == doctest::Approx(58.12400163230747).epsilon(1e-12));
    CHECK(transition_band(16, 16, 0.25, 0.1) == doctest::Approx(43.194679083834366).epsilon(1e-12));
}

TEST_CASE("transition_band clamps the second term for large ratios") {
    const double first = (4.0 / (std::numbers::pi * std::numbers::pi) * std::log(8.0 * 16) + 6.0) * std::log(16.0 / 0.1);
    CHECK(transition_band(16, 16, 1e-3, 0.1) == doctest::Approx(first).epsilon(1e-14));
}

TEST_CASE("transition_band sentinel and errors") {
    CHECK(std::isinf(transition_band(16, 16, 1.0, 0.1)));
    CHECK(std::isinf(transition_band(16, 16, 2.0, 0.1)));
    CHECK(error_code_of([] { transition_band(16, 16, 0.5, 0.5); }) == Errc::BadEpsilon);
    CHECK(error_code_of([] { transition_band(16, 16, 0.5, 0.0); }) == Errc::BadEpsilon);
}

TEST_CASE("cluster_report on an all-ones spectrum") {
    const std::vector<double> ones(7, 1.0);
    const ClusterReport r = cluster_report(ones, 1.0, 0.1, 0.5, 7, 7, 7);
    CHECK(r.count_near_one == 7);
    CHECK(r.transition_count == 0);
    CHECK(r.count_near_zero == 0);
    CHECK(error_code_of([&] { cluster_report(ones, 1.0, 0.6, 0.5, 7, 7, 7); }) == Errc::BadEpsilon);
}

TEST_CASE("cluster_report on the 16-element ULA at optimal spacing") {
    const SpacingSolution s = optimal_spacing(16, 16, 4, kLambda, kD);
    const AntennaLayout tx = build_layout({16, 1, s.d_t, 1.0}, Side::Tx, kD);
    const AntennaLayout rx = build_layout({16, 1, s.d_r, 1.0}, Side::Rx, kD);
    const auto ev = eigvals_hermitian(gram(exact_channel(tx, rx, params()), GramSide::TxGram));
    // numpy reference on the exact channel, normalised by N M / ns = 64.
    const double ref[] = {1.0000198257924657, 0.9984269313284048, 0.9654684429616648, 0.730729388203401,
                          0.2667653741336019, 0.036234656063503255, 0.0022699597930846316, 8.34398312614735e-05};
    for (std::size_t i = 0; i < 8; ++i) CHECK(ev[i] / 64.0 == doctest::Approx(ref[i]).epsilon(1e-9));

    const ClusterReport r = cluster_report(ev, 64.0, 0.1, s.delta, 16, 16, 16);
    CHECK(r.predicted_rank == 4);
    CHECK(r.count_near_one == 3);
    CHECK(r.count_near_one + r.count_near_zero + r.transition_count == 16);
    CHECK(static_cast<double>(r.transition_count) <= r.transition_bound);
}

TEST_CASE("transition count stays within the bound on random ULA cases") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::size_t> size(4, 24);
    std::uniform_real_distribution<double> frac(0.05, 0.95);
    std::uniform_real_distribution<double> eps_d(0.01, 0.45);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = size(rng), m = size(rng);
        const std::size_t n_max = std::max(n, m);
        const double delta = frac(rng) * static_cast<double>(n_max) / static_cast<double>(m); // ratio > 1
        const double prod = delta * kLambda * kD / static_cast<double>(n_max);
        const auto ev = eigvals_hermitian(ula_gram(n, m, std::sqrt(prod), std::sqrt(prod)));
        const double eps = eps_d(rng);
        const ClusterReport r = cluster_report(ev, static_cast<double>(n_max) / delta, eps, delta, std::min(n, m), n_max, m);
        CAPTURE(trial);
        CHECK(r.count_near_one + r.count_near_zero + r.transition_count == m);
        CHECK(static_cast<double>(r.transition_count) <= r.transition_bound);
    }
}

TEST_CASE("cluster_report_2d multiplies per-axis ranks") {
    const std::vector<double> v(16, 1.0);
    const AxisCluster a{0.25, 16, 16, 16};
    const ClusterReport r = cluster_report_2d(v, 1.0, 0.1, a, a);
    CHECK(r.predicted_rank == 16);
    CHECK(r.transition_bound == doctest::Approx(256.0)); // windows cover the full axis
}

TEST_CASE("water_filling closed forms") {
    const std::vector<double> eq{2.0, 2.0, 2.0};
    const PowerAllocation a = water_filling(eq, 3.0, 1.0);
    for (double p : a.powers) CHECK(p == doctest::Approx(1.0).epsilon(1e-12));

    const std::vector<double> two{4.0, 1.0};
    const PowerAllocation b = water_filling(two, 2.0, 1.0);
    CHECK(b.water_level == doctest::Approx(1.625).epsilon(1e-12));
    CHECK(std::abs(b.powers[0] - 1.375) <= 1e-9);
    CHECK(std::abs(b.powers[1] - 0.625) <= 1e-9);

    const std::vector<double> skew{100.0, 1e-4};
    const PowerAllocation c = water_filling(skew, 0.1, 1.0);
    CHECK(c.powers[1] == 0.0);
    CHECK(c.powers[0] == doctest::Approx(0.1));
    CHECK(c.active == 1);
}

TEST_CASE("water_filling KKT on random spectra") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> eig(1 + trial % 12);
        for (double &e : eig) e = trial % 3 == 0 ? std::pow(u(rng), 4) : u(rng);
        if (trial % 5 == 0) eig.back() = 0.0;
        std::sort(eig.rbegin(), eig.rend());
        if (eig.front() == 0.0) eig.front() = 1.0;
        const double p = 0.01 + u(rng), g = 0.01 + u(rng);
        const PowerAllocation a = water_filling(eig, p, g);
        CHECK(std::accumulate(a.powers.begin(), a.powers.end(), 0.0) == doctest::Approx(p).epsilon(1e-12));
        for (std::size_t i = 0; i < eig.size(); ++i) {
            CHECK(a.powers[i] >= 0.0);
            if (a.powers[i] > 0.0)
                CHECK(std::abs(a.water_level - 1.0 / (g * eig[i]) - a.powers[i]) <= 1e-9 * std::max(1.0, a.water_level));
            else if (eig[i] > 0.0)
                CHECK(a.water_level <= 1.0 / (g * eig[i]) * (1 + 1e-12));
        }
    }
}

TEST_CASE("water_filling errors") {
    const std::vector<double> zeros{0.0, 0.0};
    CHECK(error_code_of([&] { water_filling(zeros, 1.0, 1.0); }) == Errc::AllZeroEigenvalues);
    const std::vector<double> asc{1.0, 2.0};
    CHECK(error_code_of([&] { water_filling(asc, 1.0, 1.0); }) == Errc::InvalidArgument);
    const std::vector<double> ok{1.0};
    CHECK(error_code_of([&] { water_filling(ok, 0.0, 1.0); }) == Errc::InvalidArgument);
}

TEST_CASE("rate basics") {
    const ComplexMatrix i1 = ComplexMatrix::identity(1);
    CHECK(rate(i1, i1, i1, 1.0, 1) == doctest::Approx(1.0).epsilon(1e-14));

    std::mt19937_64 rng(8);
    const ComplexMatrix h = random_matrix(6, 5, rng);
    const SvdResult s = svd(h);
    for (std::size_t ns : {1u, 3u, 5u}) {
        const double snr = 2.5;
        std::vector<double> lam;
        for (std::size_t i = 0; i < ns; ++i) lam.push_back(s.singular_values[i] * s.singular_values[i]);
        const double expected = eigen_rate(lam, snr, ns);
        double manual = 0.0;
        for (double l : lam) manual += std::log2(1.0 + snr * l / static_cast<double>(ns));
        CHECK(expected == doctest::Approx(manual));
        CHECK(rate(h, s.right.leading_cols(ns), s.left.leading_cols(ns), snr, ns) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("rate is invariant to invertible recombination of the combiner") {
    std::mt19937_64 rng(12);
    const ComplexMatrix h = random_matrix(5, 5, rng);
    const ComplexMatrix f = random_matrix(5, 2, rng);
    const ComplexMatrix w = random_matrix(5, 2, rng);
    const double r0 = rate(h, f, w, 3.0, 2);
    CHECK(rate(h, f, w * cplx(0.0, 7.0), 3.0, 2) == doctest::Approx(r0).epsilon(1e-10));
    const ComplexMatrix u = svd(random_matrix(2, 2, rng)).left;
    CHECK(rate(h, f, w * u, 3.0, 2) == doctest::Approx(r0).epsilon(1e-10));
}

TEST_CASE("rate errors") {
    const ComplexMatrix h = ComplexMatrix::identity(3);
    ComplexMatrix w(3, 2);
    w(0, 0) = w(0, 1) = 1.0; // rank one
    CHECK(error_code_of([&] { rate(h, h.leading_cols(2), w, 1.0, 2); }) == Errc::SingularCombiner);
    CHECK(error_code_of([&] { rate(h, h.leading_cols(2), h.leading_cols(1), 1.0, 2); }) == Errc::DimensionMismatch);
    CHECK(error_code_of([&] { rate(h, ComplexMatrix::identity(2), h.leading_cols(2), 1.0, 2); }) ==
          Errc::DimensionMismatch);
}

TEST_CASE("rate_upper_bound") {
    CHECK(rate_upper_bound(256, 256, 16, 1.0) == doctest::Approx(16.0 * std::log2(257.0)).epsilon(1e-14));
    CHECK(rate_upper_bound(256, 256, 16, 1.0) == doctest::Approx(128.09).epsilon(1e-4));
    CHECK(rate_upper_bound(3, 5, 1, 2.0) == doctest::Approx(std::log2(31.0)));
}

TEST_CASE("dft_diag_quality") {
    // Block circulant with circulant blocks: exactly diagonalised.
    const std::size_t nv = 3, nh = 4;
    ComplexMatrix g(nv * nh, nv * nh);
    std::mt19937_64 rng(3);
    const ComplexMatrix c = random_matrix(nv, nh, rng);
    for (std::size_t i = 0; i < nv * nh; ++i)
        for (std::size_t k = 0; k < nv * nh; ++k)
            g(i, k) = c((i / nh + nv - k / nh) % nv, (i % nh + nh - k % nh) % nh);
    CHECK(dft_diag_quality(g, nv, nh) < 1e-28);

    const ComplexMatrix r = random_matrix(12, 12, rng);
    const double q = dft_diag_quality(r + r.adjoint(), 3, 4);
    CHECK(q > 0.0);
    CHECK(q <= 1.0);
    CHECK(error_code_of([&] { dft_diag_quality(r, 5, 2); }) == Errc::DimensionMismatch);
}

TEST_CASE("dft_diag_quality of the optimal 4x4 parallel core") {
    const SpacingSolution s = optimal_spacing(4, 4, 2, kLambda, kD);
    const AntennaLayout tx = build_layout({4, 4, s.d_t, s.d_t}, Side::Tx, kD);
    const AntennaLayout rx = build_layout({4, 4, s.d_r, s.d_r}, Side::Rx, kD);
    const ComplexMatrix g = gram(transverse_channel(tx, rx, params()), GramSide::TxGram);
    CHECK(dft_diag_quality(g, 4, 4) == doctest::Approx(0.2111392855979574).epsilon(1e-9));
}

TEST_CASE("block_toeplitz_deviation detects a perturbation") {
    const ComplexMatrix g = ComplexMatrix::identity(6);
    CHECK(block_toeplitz_deviation(g, 2, 3) == 0.0);
    ComplexMatrix h = g;
    h(4, 4) = 2.0;
    CHECK(block_toeplitz_deviation(h, 2, 3) == doctest::Approx(1.0));
}

TEST_CASE("spectrum_gap") {
    std::mt19937_64 rng(1);
    const ComplexMatrix a = random_matrix(4, 3, rng);
    CHECK(spectrum_gap(a, a) == 0.0);
    CHECK(spectrum_gap(a, a * cplx(0, 1)) < 1e-13);
    CHECK(error_code_of([&] { spectrum_gap(a, random_matrix(3, 4, rng)); }) == Errc::DimensionMismatch);
}

} // TEST_SUITE
