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

#ifndef LOSMIMO_BEAMFORMING_HPP
#define LOSMIMO_BEAMFORMING_HPP

#include "losmimo/channel.hpp"
#include "losmimo/geometry.hpp"
#include "losmimo/matrix.hpp"
#include "losmimo/spectral.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace losmimo {

/// Analog (constant modulus) plus baseband stage on one side of the link.
///
/// Transmit-side beamformers are scaled so that ||analog * baseband||_F^2
/// equals the stream count, i.e. unit power per stream, the same budget a
/// digital precoder with orthonormal columns spends. Receive-side scale is
/// left as produced since it cancels in the rate.
struct HybridBeamformer {
    ComplexMatrix analog;   // N_ant x n_rf
    ComplexMatrix baseband; // n_rf x n_s
    Side side = Side::Tx;
    std::size_t n_rf = 0;
    std::vector<std::size_t> selected; // dictionary columns, when drawn from one

    [[nodiscard]] ComplexMatrix combined() const { return analog * baseband; }
    [[nodiscard]] std::size_t streams() const noexcept { return baseband.cols(); }
};

struct DigitalBeamformer {
    ComplexMatrix precoder; // M x n_s, columns scaled by sqrt(p_i) under water-filling
    ComplexMatrix combiner; // N x n_s
    std::vector<double> singular_values;
    std::optional<PowerAllocation> powers; // empty for uniform power
    bool rank_deficient = false;
};

struct UniformPower {};
struct WaterFill {
    double p_total = 1.0;
    double gain_over_noise = 1.0;
};

DigitalBeamformer digital_svd(const ComplexMatrix &h, std::size_t ns);
DigitalBeamformer digital_svd(const ComplexMatrix &h, std::size_t ns, WaterFill power);
/// Water-filled copy of a uniform-power beamformer, reusing its decomposition.
DigitalBeamformer with_water_filling(const DigitalBeamformer &uniform, WaterFill power);

/// Rate of a digital beamformer: uniform prefactor snr/ns, or snr with the
/// water-filled column powers already folded into the precoder.
double digital_rate(const ComplexMatrix &h, const DigitalBeamformer &bf, double snr);

/// D_t^* (Omega_v (x) Omega_h)^*, an M x M unitary with entries of modulus 1/sqrt(M).
ComplexMatrix dictionary_tx(const AntennaLayout &layout, const ChannelParams &params, std::size_t nv, std::size_t nh);
/// D_r^* (Omega_v (x) Omega_h)^* for the receive array.
ComplexMatrix dictionary_rx(const AntennaLayout &layout, const ChannelParams &params, std::size_t nv, std::size_t nh);

enum class ColumnSelection { GainRanked, FirstColumns };

/// Indices of the k dictionary columns with the largest ||h d_k||, ties to the
/// lower index.
std::vector<std::size_t> rank_columns(const ComplexMatrix &h, const ComplexMatrix &dict, std::size_t k);

/// Closed-form DFT hybrid. Analog stages are ns dictionary columns, baseband
/// stages identities (scaled for the transmit power budget).
std::pair<HybridBeamformer, HybridBeamformer> asymptotic_hybrid(const ComplexMatrix &tx_dict, const ComplexMatrix &rx_dict,
                                                                const ComplexMatrix &h, std::size_t ns,
                                                                ColumnSelection selection = ColumnSelection::GainRanked);

struct OmpTrace {
    std::vector<std::size_t> selected;
    std::vector<double> residual_norms; // ||target - F_RF F_BB||_F after each iteration
    double reconstruction_error = 0.0;  // final residual over ||target||_F, before power scaling
};

/// Orthogonal matching pursuit of target over the columns of a unitary
/// dictionary; exactly n_rf iterations, no column picked twice.
HybridBeamformer omp_hybrid(const ComplexMatrix &target, const ComplexMatrix &dictionary, std::size_t n_rf,
                            Side side = Side::Tx, OmpTrace *trace = nullptr);

/// Phase-of-optimum analog stage with baseband from the SVD of the effective
/// channel. Extra RF chains (n_rf > ns) take the strongest unused dictionary
/// columns, so the dictionaries are required only in that case.
std::pair<HybridBeamformer, HybridBeamformer> phase_extraction_hybrid(const ComplexMatrix &h,
                                                                      const DigitalBeamformer &digital, std::size_t n_rf,
                                                                      const ComplexMatrix *tx_dict = nullptr,
                                                                      const ComplexMatrix *rx_dict = nullptr);

/// Uniform-power rate of a precoder/combiner pair.
double hybrid_rate(const ComplexMatrix &h, const HybridBeamformer &tx, const HybridBeamformer &rx, double snr);

/// max |a_ij| / min |a_ij| - 1 over the analog matrix.
double modulus_spread(const ComplexMatrix &analog);

} // namespace losmimo

#endif
