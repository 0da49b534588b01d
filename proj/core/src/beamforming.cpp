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
#include "losmimo/error.hpp"
#include "losmimo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace losmimo {

namespace {

DigitalBeamformer svd_beamformer(const ComplexMatrix &h, std::size_t ns) {
    const std::size_t k = std::min(h.rows(), h.cols());
    if (ns == 0) throw Error(Errc::InvalidArgument, "stream count must be positive");
    if (ns > k)
        throw Error(Errc::StreamExceedsArray,
                    std::to_string(ns) + " streams exceed channel dimension " + std::to_string(k));
    SvdResult s = svd(h);
    DigitalBeamformer out;
    out.precoder = s.right.leading_cols(ns);
    out.combiner = s.left.leading_cols(ns);
    out.singular_values = std::move(s.singular_values);
    const double top = out.singular_values.empty() ? 0.0 : out.singular_values.front();
    out.rank_deficient = !(out.singular_values[ns - 1] > kSvdRankThreshold * top);
    return out;
}

// Scale the baseband so the combined transmit matrix spends unit power per stream.
void normalize_tx(HybridBeamformer &bf) {
    const double energy = bf.combined().squared_frobenius_norm();
    if (energy > 0.0) bf.baseband *= std::sqrt(static_cast<double>(bf.streams()) / energy);
}

ComplexMatrix dictionary(std::span<const cplx> phases, std::size_t nv, std::size_t nh) {
    if (phases.size() != nv * nh)
        throw Error(Errc::DimensionMismatch, "layout has " + std::to_string(phases.size()) + " antennas, grid is " +
                                                 std::to_string(nv) + "x" + std::to_string(nh));
    std::vector<cplx> conj_phase(phases.size());
    std::transform(phases.begin(), phases.end(), conj_phase.begin(), [](cplx z) { return std::conj(z); });
    return scale_rows(kron(dft_matrix(nv), dft_matrix(nh)).adjoint(), conj_phase);
}

ComplexMatrix phase_only(const ComplexMatrix &f) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(f.rows()));
    ComplexMatrix out(f.rows(), f.cols());
    for (std::size_t r = 0; r < f.rows(); ++r)
        for (std::size_t c = 0; c < f.cols(); ++c) out(r, c) = std::polar(scale, std::arg(f(r, c)));
    return out;
}

} // namespace

DigitalBeamformer digital_svd(const ComplexMatrix &h, std::size_t ns) { return svd_beamformer(h, ns); }

DigitalBeamformer digital_svd(const ComplexMatrix &h, std::size_t ns, WaterFill power) {
    return with_water_filling(svd_beamformer(h, ns), power);
}

DigitalBeamformer with_water_filling(const DigitalBeamformer &uniform, WaterFill power) {
    if (uniform.powers) throw Error(Errc::InvalidArgument, "beamformer is already water-filled");
    DigitalBeamformer out = uniform;
    const std::size_t ns = out.precoder.cols();
    std::vector<double> eigs(ns);
    for (std::size_t i = 0; i < ns; ++i) eigs[i] = out.singular_values[i] * out.singular_values[i];
    PowerAllocation alloc = water_filling(eigs, power.p_total, power.gain_over_noise);
    std::vector<cplx> col_scale(ns);
    for (std::size_t i = 0; i < ns; ++i) col_scale[i] = std::sqrt(alloc.powers[i] / power.p_total);
    out.precoder = scale_cols(out.precoder, col_scale);
    out.powers = std::move(alloc);
    return out;
}

double digital_rate(const ComplexMatrix &h, const DigitalBeamformer &bf, double snr) {
    if (bf.powers) return rate_with_prefactor(h, bf.precoder, bf.combiner, snr);
    return rate(h, bf.precoder, bf.combiner, snr, bf.precoder.cols());
}

ComplexMatrix dictionary_tx(const AntennaLayout &layout, const ChannelParams &params, std::size_t nv, std::size_t nh) {
    return dictionary(tx_phase_diagonal(layout, params), nv, nh);
}

ComplexMatrix dictionary_rx(const AntennaLayout &layout, const ChannelParams &params, std::size_t nv, std::size_t nh) {
    return dictionary(rx_phase_diagonal(layout, params), nv, nh);
}

std::vector<std::size_t> rank_columns(const ComplexMatrix &h, const ComplexMatrix &dict, std::size_t k) {
    if (h.cols() != dict.rows()) throw Error(Errc::DimensionMismatch, "dictionary rows do not match channel columns");
    if (k > dict.cols()) throw Error(Errc::DictionaryExhausted, "cannot rank more columns than the dictionary holds");
    const ComplexMatrix g = h * dict;
    std::vector<double> gain(g.cols(), 0.0);
    for (std::size_t r = 0; r < g.rows(); ++r) {
        auto row = g.row(r);
        for (std::size_t c = 0; c < g.cols(); ++c) gain[c] += std::norm(row[c]);
    }
    std::vector<std::size_t> idx(g.cols());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return gain[a] > gain[b]; });
    idx.resize(k);
    return idx;
}

std::pair<HybridBeamformer, HybridBeamformer> asymptotic_hybrid(const ComplexMatrix &tx_dict, const ComplexMatrix &rx_dict,
                                                                const ComplexMatrix &h, std::size_t ns,
                                                                ColumnSelection selection) {
    if (h.cols() != tx_dict.rows() || h.rows() != rx_dict.rows())
        throw Error(Errc::DimensionMismatch, "dictionaries do not match the channel");
    if (ns == 0) throw Error(Errc::InvalidArgument, "stream count must be positive");
    if (ns > std::min(tx_dict.cols(), rx_dict.cols()))
        throw Error(Errc::StreamExceedsArray, "stream count exceeds dictionary size");

    std::vector<std::size_t> tx_sel, rx_sel;
    if (selection == ColumnSelection::GainRanked) {
        tx_sel = rank_columns(h, tx_dict, ns);
        rx_sel = rank_columns(h.adjoint(), rx_dict, ns);
    } else {
        tx_sel.resize(ns);
        std::iota(tx_sel.begin(), tx_sel.end(), std::size_t{0});
        rx_sel = tx_sel;
    }

    HybridBeamformer tx{tx_dict.select_cols(tx_sel), ComplexMatrix::identity(ns), Side::Tx, ns, tx_sel};
    HybridBeamformer rx{rx_dict.select_cols(rx_sel), ComplexMatrix::identity(ns), Side::Rx, ns, rx_sel};
    normalize_tx(tx);
    return {std::move(tx), std::move(rx)};
}

HybridBeamformer omp_hybrid(const ComplexMatrix &target, const ComplexMatrix &dictionary, std::size_t n_rf, Side side,
                            OmpTrace *trace) {
    if (target.rows() != dictionary.rows())
        throw Error(Errc::DimensionMismatch, "target and dictionary row counts differ");
    if (n_rf > dictionary.cols())
        throw Error(Errc::DictionaryExhausted, std::to_string(n_rf) + " RF chains but only " +
                                                   std::to_string(dictionary.cols()) + " dictionary columns");
    if (n_rf < target.cols() || n_rf == 0)
        throw Error(Errc::InvalidArgument, "n_rf must be at least the number of target columns");

    const double target_norm = target.frobenius_norm();
    const ComplexMatrix dict_adj = dictionary.adjoint();
    std::vector<bool> used(dictionary.cols(), false);
    std::vector<std::size_t> selected;
    selected.reserve(n_rf);
    std::vector<double> norms;
    ComplexMatrix residual = target;
    ComplexMatrix analog, baseband;

    for (std::size_t it = 0; it < n_rf; ++it) {
        const ComplexMatrix proj = dict_adj * residual;
        std::size_t best = dictionary.cols();
        double best_score = -1.0;
        for (std::size_t k = 0; k < proj.rows(); ++k) {
            if (used[k]) continue;
            double score = 0.0;
            for (cplx v : proj.row(k)) score += std::norm(v);
            if (score > best_score) {
                best_score = score;
                best = k;
            }
        }
        used[best] = true;
        selected.push_back(best);
        analog = dictionary.select_cols(selected);
        baseband = least_squares(analog, target);

        residual = target - analog * baseband;
        const double norm = residual.frobenius_norm();
        norms.push_back(norm);
        // Dividing an exact zero residual would only manufacture NaNs.
        if (norm > std::numeric_limits<double>::min() && norm > 1e-14 * target_norm) residual *= 1.0 / (norm * norm);
    }

    HybridBeamformer out{std::move(analog), std::move(baseband), side, n_rf, selected};
    if (trace) {
        trace->selected = selected;
        trace->residual_norms = norms;
        trace->reconstruction_error = target_norm > 0.0 ? norms.back() / target_norm : 0.0;
    }
    if (side == Side::Tx) normalize_tx(out);
    return out;
}

std::pair<HybridBeamformer, HybridBeamformer> phase_extraction_hybrid(const ComplexMatrix &h,
                                                                      const DigitalBeamformer &digital, std::size_t n_rf,
                                                                      const ComplexMatrix *tx_dict,
                                                                      const ComplexMatrix *rx_dict) {
    const std::size_t ns = digital.precoder.cols();
    if (digital.combiner.cols() != ns || digital.precoder.rows() != h.cols() || digital.combiner.rows() != h.rows())
        throw Error(Errc::DimensionMismatch, "digital beamformer does not match the channel");
    if (n_rf < ns) throw Error(Errc::InvalidArgument, "n_rf must be at least the stream count");
    if (n_rf > std::min(h.rows(), h.cols())) throw Error(Errc::StreamExceedsArray, "n_rf exceeds array size");

    ComplexMatrix f_rf = phase_only(digital.precoder);
    ComplexMatrix w_rf = phase_only(digital.combiner);
    if (n_rf > ns) {
        if (!tx_dict || !rx_dict) throw Error(Errc::InvalidArgument, "padding extra RF chains needs both dictionaries");
        f_rf = f_rf.append_cols(tx_dict->select_cols(rank_columns(h, *tx_dict, n_rf - ns)));
        w_rf = w_rf.append_cols(rx_dict->select_cols(rank_columns(h.adjoint(), *rx_dict, n_rf - ns)));
    }

    const SvdResult eff = svd(adjoint_times(w_rf, h * f_rf));
    HybridBeamformer tx{std::move(f_rf), eff.right.leading_cols(ns), Side::Tx, n_rf, {}};
    HybridBeamformer rx{std::move(w_rf), eff.left.leading_cols(ns), Side::Rx, n_rf, {}};
    normalize_tx(tx);
    return {std::move(tx), std::move(rx)};
}

double hybrid_rate(const ComplexMatrix &h, const HybridBeamformer &tx, const HybridBeamformer &rx, double snr) {
    return rate(h, tx.combined(), rx.combined(), snr, tx.streams());
}

double modulus_spread(const ComplexMatrix &analog) {
    if (analog.empty()) return 0.0;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (cplx v : analog.entries()) {
        const double m = std::abs(v);
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
    return hi / lo - 1.0;
}

} // namespace losmimo
