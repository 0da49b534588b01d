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

#ifndef LOSMIMO_CHANNEL_HPP
#define LOSMIMO_CHANNEL_HPP

#include "losmimo/geometry.hpp"
#include "losmimo/matrix.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace losmimo {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Carrier wavelength in meters for a frequency in GHz.
double wavelength_from_ghz(double frequency_ghz);

struct ChannelParams {
    double wavelength = 0.0;
    double distance = 0.0;
    double tx_gain = 1.0;
    double rx_gain = 1.0;
    double noise_power = 1.0;
    double tx_power = 1.0;

    void validate() const;
    /// Constant path loss zeta = (sqrt(G_t G_r) lambda / (4 pi D))^2.
    double zeta() const noexcept;
};

/// Exact channel plus its Fresnel factorisation H ~ D_r^* H_tilde D_t.
struct ChannelSet {
    ComplexMatrix h_exact;
    ComplexMatrix h_tilde;
    std::vector<cplx> d_t;
    std::vector<cplx> d_r;
    double zeta = 0.0;

    /// D_r^* H_tilde D_t.
    ComplexMatrix recompose() const;
};

/// True when both apertures are below the link distance.
bool fresnel_regime(const AntennaLayout &tx, const AntennaLayout &rx, const ChannelParams &params);

/// Normalised spherical-wavefront channel, entry (n, m) = exp(-j 2 pi / lambda * |r_n - t_m|).
ComplexMatrix exact_channel(const AntennaLayout &tx, const AntennaLayout &rx, const ChannelParams &params);

/// Second-order Taylor distance D + r_z - t_z + ((r_x - t_x)^2 + (r_y - t_y)^2) / (2D).
/// r.z is the absolute Rx coordinate, i.e. it already includes D.
double taylor_distance(const Point3 &t, const Point3 &r, double distance) noexcept;

/// Channel built from taylor_distance; the reference the factorisation must reproduce.
ComplexMatrix taylor_channel(const AntennaLayout &tx, const AntennaLayout &rx, const ChannelParams &params);

/// D_t phases: exp(+j 2 pi / lambda (t_z - (t_x^2 + t_y^2) / (2D))).
std::vector<cplx> tx_phase_diagonal(const AntennaLayout &tx, const ChannelParams &params);
/// D_r phases: exp(+j 2 pi / lambda (D + r_z + (r_x^2 + r_y^2) / (2D))).
std::vector<cplx> rx_phase_diagonal(const AntennaLayout &rx, const ChannelParams &params);
/// H_tilde entry (n, m) = exp(+j 2 pi / lambda (r_x t_x + r_y t_y) / D).
ComplexMatrix transverse_channel(const AntennaLayout &tx, const AntennaLayout &rx, const ChannelParams &params);

ChannelSet fresnel_factors(const AntennaLayout &tx, const AntennaLayout &rx, const ChannelParams &params);

struct LinearFactors {
    ComplexMatrix h_linv;
    ComplexMatrix h_linh;
};

/// Vertical and horizontal linear-array channels whose Kronecker product is
/// H_tilde for parallel arrays. Throws NotParallel for rotated specs.
LinearFactors kron_factor_channel(const ArraySpec &spec_tx, const ArraySpec &spec_rx, const ChannelParams &params);

enum class GramSide { TxGram, RxGram };

/// TxGram: H^* H. RxGram: H H^*.
ComplexMatrix gram(const ComplexMatrix &h, GramSide side);

/// Prolate matrix B_dim(alpha, K): entry (i, k) =
/// sin(pi (i-k) (K+1) / alpha) / (alpha sin(pi (i-k) / alpha)), with the removable
/// singularities replaced by their limit (K+1)/alpha * (-1)^(q K), q = (i-k)/alpha.
ComplexMatrix prolate_matrix(double alpha, std::size_t k_param, std::size_t dim);

} // namespace losmimo

#endif
