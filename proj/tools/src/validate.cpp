// SPDX-License-Identifier: Apache-2.0
//
// losmimo - line-of-sight wide-aperture MIMO array design and beam focusing
// Copyright (C) 2026 The losmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "losmimo/beamforming.hpp"
#include "losmimo/channel.hpp"
#include "losmimo/geometry.hpp"
#include "losmimo/harness/commands.hpp"
#include "losmimo/linalg.hpp"
#include "losmimo/spectral.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace losmimo::harness {

namespace {

constexpr double kLambda = 0.010707;
constexpr double kDistance = 50.0;

struct Fixture {
    ArraySpec tx_spec, rx_spec;
    AntennaLayout tx, rx;
    ChannelParams params;
    ChannelSet channel;
};

// 4x4 per side at optimal spacing for ns = 4 (2 x 2).
Fixture make_fixture(double rot_deg) {
    Fixture f;
    f.params.wavelength = kLambda;
    f.params.distance = kDistance;
    const SpacingSolution s = optimal_spacing(4, 4, 2, kLambda, kDistance);
    const double rot = rot_deg * std::numbers::pi / 180.0;
    f.tx_spec = ArraySpec{4, 4, s.d_t, s.d_t, rot, rot, LayoutKind::ParallelogramOptimal};
    f.rx_spec = ArraySpec{4, 4, s.d_r, s.d_r, rot, rot, LayoutKind::ParallelogramOptimal};
    f.tx = build_layout(f.tx_spec, Side::Tx, kDistance);
    f.rx = build_layout(f.rx_spec, Side::Rx, kDistance);
    f.channel = fresnel_factors(f.tx, f.rx, f.params);
    return f;
}

InvariantResult check(std::string name, double value, double limit) {
    return {std::move(name), value <= limit, fmt::format("{:.3e} <= {:.1e}", value, limit)};
}

} // namespace

std::vector<InvariantResult> run_validate(const ValidateOptions &opts) {
    std::vector<InvariantResult> out;
    auto guarded = [&](const std::string &name, auto &&body) {
        try {
            out.push_back(body());
        } catch (const std::exception &e) {
            out.push_back({name, false, std::string("threw: ") + e.what()});
        }
    };

    const Fixture rotated = make_fixture(20.0);
    const Fixture parallel = make_fixture(0.0);
    const double nm = 256.0;

    guarded("channel-normalization", [&] {
        const double e = rotated.channel.h_exact.squared_frobenius_norm();
        return check("channel-normalization", std::abs(e - nm) / nm, 1e-9);
    });

    guarded("fresnel-recomposition", [&] {
        ChannelSet cs = rotated.channel;
        if (opts.flip_dt_sign)
            for (cplx &z : cs.d_t) z = std::conj(z);
        const ComplexMatrix taylor = taylor_channel(rotated.tx, rotated.rx, rotated.params);
        return check("fresnel-recomposition", max_abs_diff(cs.recompose(), taylor), 1e-10);
    });

    guarded("kronecker-factorization", [&] {
        const LinearFactors lf = kron_factor_channel(parallel.tx_spec, parallel.rx_spec, parallel.params);
        return check("kronecker-factorization", max_abs_diff(kron(lf.h_linv, lf.h_linh), parallel.channel.h_tilde), 1e-10);
    });

    guarded("block-toeplitz-gram", [&] {
        const ComplexMatrix g = gram(parallel.channel.h_tilde, GramSide::TxGram);
        return check("block-toeplitz-gram", block_toeplitz_deviation(g, 4, 4) / nm, 1e-10);
    });

    guarded("optimal-spacing-streams", [&] {
        const SpacingSolution s = optimal_spacing(16, 16, 4, kLambda, kDistance, 0.5);
        const std::size_t got = even_floor(s.d_t * s.d_r * 256.0 / (kLambda * kDistance));
        return InvariantResult{"optimal-spacing-streams", got == 4 && s.achieved_streams == 4,
                               fmt::format("{} streams (want 4)", got)};
    });

    guarded("parallelogram-plane", [&] {
        double worst = 0.0;
        const double rot = 20.0 * std::numbers::pi / 180.0;
        for (const Point3 &p : rotated.tx.coords)
            worst = std::max(worst, std::abs(plane_residual(p, rot, rot, Side::Tx, kDistance)));
        for (const Point3 &p : rotated.rx.coords)
            worst = std::max(worst, std::abs(plane_residual(p, rot, rot, Side::Rx, kDistance)));
        return check("parallelogram-plane", worst, 1e-12);
    });

    guarded("dictionary-unitary", [&] {
        const ComplexMatrix vt = dictionary_tx(rotated.tx, rotated.params, 4, 4);
        const ComplexMatrix ur = dictionary_rx(rotated.rx, rotated.params, 4, 4);
        return check("dictionary-unitary", std::max(orthonormality_error(vt), orthonormality_error(ur)), 1e-10);
    });

    guarded("eigendecomposition-residual", [&] {
        const ComplexMatrix g = gram(rotated.channel.h_exact, GramSide::TxGram);
        const EigenSpectrum es = eig_hermitian(g);
        const ComplexMatrix lhs = g * es.vectors;
        std::vector<cplx> vals(es.values.begin(), es.values.end());
        const double resid = max_abs_diff(lhs, scale_cols(es.vectors, vals)) / g.frobenius_norm();
        return check("eigendecomposition-residual", std::max(resid, orthonormality_error(es.vectors)), 1e-9);
    });

    guarded("svd-reconstruction", [&] {
        const ComplexMatrix &h = rotated.channel.h_exact;
        const SvdResult s = svd(h);
        std::vector<cplx> sv(s.singular_values.begin(), s.singular_values.end());
        const ComplexMatrix rec = times_adjoint(scale_cols(s.left, sv), s.right);
        return check("svd-reconstruction", max_abs_diff(rec, h), 1e-9);
    });

    guarded("water-filling-kkt", [&] {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0.0, 10.0);
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> eig(8);
            for (double &e : eig) e = u(rng);
            std::sort(eig.rbegin(), eig.rend());
            const double p = 0.1 + u(rng), g = 0.1 + u(rng);
            const PowerAllocation a = water_filling(eig, p, g);
            double sum = 0.0;
            for (std::size_t i = 0; i < eig.size(); ++i) {
                sum += a.powers[i];
                const double floor_i = 1.0 / (g * eig[i]);
                if (a.powers[i] > 0.0)
                    worst = std::max(worst, std::abs(a.powers[i] + floor_i - a.water_level));
                else
                    worst = std::max(worst, std::max(0.0, a.water_level - floor_i));
            }
            worst = std::max(worst, std::abs(sum - p));
        }
        return check("water-filling-kkt", worst, 1e-9);
    });

    const ComplexMatrix &h = parallel.channel.h_exact;
    const DigitalBeamformer digital = digital_svd(h, 4);

    guarded("rate-upper-bound", [&] {
        double worst = -1e300;
        for (double db : {-10.0, 0.0, 10.0, 20.0}) {
            const double snr = std::pow(10.0, db / 10.0);
            worst = std::max(worst, digital_rate(h, digital, snr) - rate_upper_bound(16, 16, 4, snr));
        }
        return check("rate-upper-bound", std::max(worst, 0.0), 1e-9);
    });

    guarded("hybrid-below-digital", [&] {
        const ComplexMatrix vt = dictionary_tx(parallel.tx, parallel.params, 4, 4);
        const ComplexMatrix ur = dictionary_rx(parallel.rx, parallel.params, 4, 4);
        const auto asym = asymptotic_hybrid(vt, ur, h, 4);
        const auto pe = phase_extraction_hybrid(h, digital, 4);
        const HybridBeamformer ot = omp_hybrid(digital.precoder, vt, 4, Side::Tx);
        const HybridBeamformer orx = omp_hybrid(digital.combiner, ur, 4, Side::Rx);
        double worst = -1e300;
        for (double snr : {0.1, 1.0, 10.0}) {
            const double d = digital_rate(h, digital, snr);
            worst = std::max({worst, hybrid_rate(h, asym.first, asym.second, snr) - d,
                              hybrid_rate(h, pe.first, pe.second, snr) - d, hybrid_rate(h, ot, orx, snr) - d});
        }
        return check("hybrid-below-digital", std::max(worst, 0.0), 1e-9);
    });

    guarded("analog-constant-modulus", [&] {
        const ComplexMatrix vt = dictionary_tx(rotated.tx, rotated.params, 4, 4);
        const ComplexMatrix ur = dictionary_rx(rotated.rx, rotated.params, 4, 4);
        const ComplexMatrix &hr = rotated.channel.h_exact;
        const DigitalBeamformer dr = digital_svd(hr, 4);
        const auto asym = asymptotic_hybrid(vt, ur, hr, 4);
        const auto pe = phase_extraction_hybrid(hr, dr, 6, &vt, &ur);
        const HybridBeamformer ot = omp_hybrid(dr.precoder, vt, 4, Side::Tx);
        const double worst = std::max({modulus_spread(asym.first.analog), modulus_spread(asym.second.analog),
                                       modulus_spread(pe.first.analog), modulus_spread(pe.second.analog),
                                       modulus_spread(ot.analog)});
        return check("analog-constant-modulus", worst, 1e-12);
    });

    guarded("omp-complete-basis", [&] {
        const ComplexMatrix vt = dictionary_tx(rotated.tx, rotated.params, 4, 4);
        OmpTrace trace;
        omp_hybrid(digital_svd(rotated.channel.h_exact, 4).precoder, vt, 16, Side::Tx, &trace);
        double rise = 0.0;
        for (std::size_t i = 1; i < trace.residual_norms.size(); ++i)
            rise = std::max(rise, trace.residual_norms[i] - trace.residual_norms[i - 1]);
        return check("omp-complete-basis", std::max(trace.residual_norms.back(), rise > 1e-12 ? rise : 0.0), 1e-9);
    });

    guarded("prolate-spectrum", [&] {
        const std::vector<double> ev = eigvals_hermitian(prolate_matrix(32.0, 7, 16));
        const double outside = std::max({0.0, -ev.back(), ev.front() - 1.0});
        return check("prolate-spectrum", outside, 1e-9);
    });

    return out;
}

std::string validate_report(const std::vector<InvariantResult> &results) {
    std::string out;
    std::size_t failed = 0;
    for (const InvariantResult &r : results) {
        out += fmt::format("{} {:<28} {}\n", r.pass ? "PASS" : "FAIL", r.name, r.detail);
        failed += r.pass ? 0 : 1;
    }
    out += fmt::format("{} invariants, {} failed\n", results.size(), failed);
    return out;
}

} // namespace losmimo::harness
