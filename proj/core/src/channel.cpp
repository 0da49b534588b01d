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

#include "losmimo/channel.hpp"
#include "losmimo/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace losmimo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_nonempty(const AntennaLayout &tx, const AntennaLayout &rx) {
    if (tx.coords.empty() || rx.coords.empty()) throw Error(Errc::InvalidArgument, "empty antenna layout");
}

} // namespace

double wavelength_from_ghz(double frequency_ghz) {
    if (!(frequency_ghz > 0.0)) throw Error(Errc::InvalidArgument, "carrier frequency must be positive");
    return kSpeedOfLight / (frequency_ghz * 1e9);
}

void ChannelParams::validate() const {
    if (!(wavelength > 0.0) || !(distance > 0.0) || !(tx_gain > 0.0) || !(rx_gain > 0.0) || !(noise_power > 0.0) ||
        !(tx_power > 0.0))
        throw Error(Errc::InvalidArgument, "channel parameters must be strictly positive");
}

double ChannelParams::zeta() const noexcept {
    const double amp = std::sqrt(tx_gain * rx_gain) * wavelength / (4.0 * std::numbers::pi * distance);
    return amp * amp;
}

ComplexMatrix ChannelSet::recompose() const {
    ComplexMatrix out = scale_cols(h_tilde, d_t);
    std::vector<cplx> dr_conj(d_r.size());
    for (std::size_t i = 0; i < d_r.size(); ++i) dr_conj[i] = std::conj(d_r[i]);
    return scale_rows(out, dr_conj);
}

bool fresnel_regime(const AntennaLayout &tx, const AntennaLayout &rx, const ChannelParams &params) {
    return std::max(aperture(tx), aperture(rx)) < params.distance;
}

ComplexMatrix exact_channel(const AntennaLayout &tx, const AntennaLayout &rx, const ChannelParams &params) {
    params.validate();
    require_nonempty(tx, rx);
    const double k = kTwoPi / params.wavelength;
    ComplexMatrix h(rx.size(), tx.size());
    for (std::size_t n = 0; n < rx.size(); ++n) {
        const Point3 &r = rx.coords[n];
        auto row = h.row(n);
        for (std::size_t m = 0; m < tx.size(); ++m) {
            const Point3 &t = tx.coords[m];
            const double dx = r.x - t.x, dy = r.y - t.y, dz = r.z - t.z;
            row[m] = std::polar(1.0, -k * std::sqrt(dx * dx + dy * dy + dz * dz));
        }
    }
    return h;
}

double taylor_distance(const Point3 &t, const Point3 &r, double distance) noexcept {
    const double dx = r.x - t.x, dy = r.y - t.y;
    return r.z - t.z + (dx * dx + dy * dy) / (2.0 * distance);
}

ComplexMatrix taylor_channel(const AntennaLayout &tx, const AntennaLayout &rx, const ChannelParams &params) {
    params.validate();
    require_nonempty(tx, rx);
    const double k = kTwoPi / params.wavelength;
    ComplexMatrix h(rx.size(), tx.size());
    for (std::size_t n = 0; n < rx.size(); ++n)
        for (std::size_t m = 0; m < tx.size(); ++m)
            h(n, m) = std::polar(1.0, -k * taylor_distance(tx.coords[m], rx.coords[n], params.distance));
    return h;
}

std::vector<cplx> tx_phase_diagonal(const AntennaLayout &tx, const ChannelParams &params) {
    const double k = kTwoPi / params.wavelength;
    const double two_d = 2.0 * params.distance;
    std::vector<cplx> d(tx.size());
    for (std::size_t m = 0; m < tx.size(); ++m) {
        const Point3 &t = tx.coords[m];
        d[m] = std::polar(1.0, k * (t.z - (t.x * t.x + t.y * t.y) / two_d));
    }
    return d;
}

std::vector<cplx> rx_phase_diagonal(const AntennaLayout &rx, const ChannelParams &params) {
    const double k = kTwoPi / params.wavelength;
    const double two_d = 2.0 * params.distance;
    std::vector<cplx> d(rx.size());
    for (std::size_t n = 0; n < rx.size(); ++n) {
        const Point3 &r = rx.coords[n];
        // r.z already carries D.
        d[n] = std::polar(1.0, k * (r.z + (r.x * r.x + r.y * r.y) / two_d));
    }
    return d;
}

ComplexMatrix transverse_channel(const AntennaLayout &tx, const AntennaLayout &rx, const ChannelParams &params) {
    params.validate();
    require_nonempty(tx, rx);
    const double k = kTwoPi / params.wavelength / params.distance;
    ComplexMatrix h(rx.size(), tx.size());
    for (std::size_t n = 0; n < rx.size(); ++n)
        for (std::size_t m = 0; m < tx.size(); ++m) {
            const Point3 &r = rx.coords[n];
            const Point3 &t = tx.coords[m];
            h(n, m) = std::polar(1.0, k * (r.x * t.x + r.y * t.y));
        }
    return h;
}

ChannelSet fresnel_factors(const AntennaLayout &tx, const AntennaLayout &rx, const ChannelParams &params) {
    ChannelSet out;
    out.h_exact = exact_channel(tx, rx, params);
    out.h_tilde = transverse_channel(tx, rx, params);
    out.d_t = tx_phase_diagonal(tx, params);
    out.d_r = rx_phase_diagonal(rx, params);
    out.zeta = params.zeta();
    return out;
}

LinearFactors kron_factor_channel(const ArraySpec &spec_tx, const ArraySpec &spec_rx, const ChannelParams &params) {
    params.validate();
    spec_tx.validate();
    spec_rx.validate();
    if (spec_tx.theta != 0.0 || spec_tx.phi != 0.0 || spec_rx.theta != 0.0 || spec_rx.phi != 0.0)
        throw Error(Errc::NotParallel, "Kronecker factorisation needs theta = phi = 0 on both arrays");

    const double k = kTwoPi / params.wavelength / params.distance;
    auto linear = [k](std::size_t n_rx, std::size_t n_tx, double d_r, double d_t) {
        ComplexMatrix h(n_rx, n_tx);
        for (std::size_t n = 0; n < n_rx; ++n)
            for (std::size_t m = 0; m < n_tx; ++m)
                h(n, m) = std::polar(1.0, k * d_r * d_t * static_cast<double>(n) * static_cast<double>(m));
        return h;
    };
    return {linear(spec_rx.n_v, spec_tx.n_v, spec_rx.d_v, spec_tx.d_v),
            linear(spec_rx.n_h, spec_tx.n_h, spec_rx.d_h, spec_tx.d_h)};
}

ComplexMatrix gram(const ComplexMatrix &h, GramSide side) {
    if (h.empty()) throw Error(Errc::InvalidArgument, "gram of empty matrix");
    ComplexMatrix g = side == GramSide::TxGram ? adjoint_times(h, h) : times_adjoint(h, h);
    // Symmetrise away rounding so the result is Hermitian to the last bit.
    for (std::size_t i = 0; i < g.rows(); ++i) {
        g(i, i) = g(i, i).real();
        for (std::size_t j = i + 1; j < g.cols(); ++j) {
            const cplx v = 0.5 * (g(i, j) + std::conj(g(j, i)));
            g(i, j) = v;
            g(j, i) = std::conj(v);
        }
    }
    return g;
}

ComplexMatrix prolate_matrix(double alpha, std::size_t k_param, std::size_t dim) {
    if (!(alpha > 0.0)) throw Error(Errc::InvalidArgument, "prolate alpha must be positive");
    if (dim == 0) throw Error(Errc::InvalidArgument, "prolate dimension must be >= 1");
    const double kp1 = static_cast<double>(k_param) + 1.0;
    ComplexMatrix b(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) {
            const double diff = static_cast<double>(i) - static_cast<double>(k);
            const double den = std::sin(std::numbers::pi * diff / alpha);
            if (std::abs(den) < 1e-9) {
                const double q = std::round(diff / alpha);
                const bool odd = std::fmod(std::abs(q) * static_cast<double>(k_param), 2.0) == 1.0;
                b(i, k) = (odd ? -kp1 : kp1) / alpha;
            } else {
                b(i, k) = std::sin(std::numbers::pi * diff * kp1 / alpha) / (alpha * den);
            }
        }
    return b;
}

} // namespace losmimo
