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

#include "losmimo/spectral.hpp"
#include "losmimo/channel.hpp"
#include "losmimo/error.hpp"
#include "losmimo/geometry.hpp"
#include "losmimo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace losmimo {

namespace {

void require_eps(double eps) {
    if (!(eps > 0.0 && eps < 0.5)) throw Error(Errc::BadEpsilon, "eps must lie in (0, 0.5), got " + std::to_string(eps));
}

ClusterReport count_clusters(std::span<const double> values, double normalizer, double eps) {
    if (!(normalizer > 0.0)) throw Error(Errc::InvalidArgument, "cluster normalizer must be positive");
    require_eps(eps);
    ClusterReport r;
    r.eps = eps;
    for (double v : values) {
        const double w = v / normalizer;
        if (w >= 1.0 - eps)
            ++r.count_near_one;
        else if (w <= eps)
            ++r.count_near_zero;
        else
            ++r.transition_count;
    }
    return r;
}

} // namespace

double transition_band(std::size_t n_i, std::size_t m_i, double delta, double eps) {
    require_eps(eps);
    if (m_i == 0 || !(delta > 0.0)) throw Error(Errc::InvalidArgument, "transition_band needs M >= 1 and delta > 0");
    const double m = static_cast<double>(m_i);
    const double n_max = static_cast<double>(std::max(n_i, m_i));
    const double ratio = n_max / (m * delta);
    if (!(ratio > 1.0)) return std::numeric_limits<double>::infinity();

    const double first = (4.0 / (std::numbers::pi * std::numbers::pi) * std::log(8.0 * m) + 6.0) * std::log(16.0 / eps);
    const double arg = std::numbers::pi / 32.0 * eps * (ratio * ratio - 1.0);
    const double second = std::max(-std::log(arg) / std::log(ratio), 0.0);
    return first + 2.0 * second;
}

ClusterReport cluster_report(std::span<const double> values, double normalizer, double eps, double delta,
                             std::size_t n_min, std::size_t n_max, std::size_t m_dim) {
    ClusterReport r = count_clusters(values, normalizer, eps);
    r.predicted_rank = even_floor(delta * static_cast<double>(n_min));
    r.transition_bound = 2.0 * transition_band(n_max, m_dim, delta, eps);
    return r;
}

ClusterReport cluster_report_2d(std::span<const double> values, double normalizer, double eps, const AxisCluster &v,
                                const AxisCluster &h) {
    ClusterReport r = count_clusters(values, normalizer, eps);
    r.predicted_rank = even_floor(v.delta * static_cast<double>(v.n_min)) * even_floor(h.delta * static_cast<double>(h.n_min));
    const double tv = std::min(2.0 * transition_band(v.n_max, v.m_dim, v.delta, eps), static_cast<double>(v.m_dim));
    const double th = std::min(2.0 * transition_band(h.n_max, h.m_dim, h.delta, eps), static_cast<double>(h.m_dim));
    const double mv = static_cast<double>(v.m_dim), mh = static_cast<double>(h.m_dim);
    r.transition_bound = tv * mh + th * mv - tv * th;
    return r;
}

PowerAllocation water_filling(std::span<const double> eigs, double p_total, double gain_over_noise) {
    if (!(p_total > 0.0)) throw Error(Errc::InvalidArgument, "total power must be positive");
    if (!(gain_over_noise > 0.0)) throw Error(Errc::InvalidArgument, "gain over noise must be positive");
    for (std::size_t i = 0; i < eigs.size(); ++i) {
        if (!(eigs[i] >= 0.0)) throw Error(Errc::InvalidArgument, "eigenvalues must be non-negative");
        if (i > 0 && eigs[i] > eigs[i - 1]) throw Error(Errc::InvalidArgument, "eigenvalues must be descending");
    }
    std::size_t positive = 0;
    while (positive < eigs.size() && eigs[positive] > 0.0) ++positive;
    if (positive == 0) throw Error(Errc::AllZeroEigenvalues, "no channel gain to allocate power over");

    // Largest k whose water level clears the k-th floor.
    double floor_sum = 0.0;
    double level = 0.0;
    std::size_t active = 0;
    for (std::size_t k = 1; k <= positive; ++k) {
        const double floor_k = 1.0 / (gain_over_noise * eigs[k - 1]);
        const double candidate = (p_total + floor_sum + floor_k) / static_cast<double>(k);
        if (candidate <= floor_k) break;
        floor_sum += floor_k;
        level = candidate;
        active = k;
    }

    PowerAllocation out;
    out.water_level = level;
    out.active = active;
    out.powers.assign(eigs.size(), 0.0);
    for (std::size_t i = 0; i < active; ++i) out.powers[i] = level - 1.0 / (gain_over_noise * eigs[i]);
    return out;
}

double rate_with_prefactor(const ComplexMatrix &h, const ComplexMatrix &f, const ComplexMatrix &w, double prefactor) {
    if (f.rows() != h.cols() || w.rows() != h.rows())
        throw Error(Errc::DimensionMismatch, "precoder/combiner row counts do not match the channel");
    if (!(prefactor >= 0.0)) throw Error(Errc::InvalidArgument, "rate prefactor must be non-negative");
    const ComplexMatrix r = gram(w, GramSide::TxGram);
    const double cond = hermitian_condition(r);
    if (!(cond <= kMaxGramCondition))
        throw Error(Errc::SingularCombiner, "combiner Gram condition " + std::to_string(cond));

    // det(I + c R^{-1} A A^*) = det(R + c A A^*) / det(R), A = W^* H F.
    const ComplexMatrix a = adjoint_times(w, h * f);
    ComplexMatrix m = gram(a, GramSide::RxGram);
    m *= prefactor;
    m += r;
    const double value = (logdet_hpd(m) - logdet_hpd(r)) / std::numbers::ln2;
    return std::max(value, 0.0);
}

double rate(const ComplexMatrix &h, const ComplexMatrix &f, const ComplexMatrix &w, double snr, std::size_t ns) {
    if (ns == 0) throw Error(Errc::InvalidArgument, "stream count must be positive");
    if (f.cols() != ns || w.cols() != ns)
        throw Error(Errc::DimensionMismatch, "precoder and combiner need exactly ns columns");
    return rate_with_prefactor(h, f, w, snr / static_cast<double>(ns));
}

double rate_upper_bound(std::size_t n, std::size_t m, std::size_t ns, double snr) {
    if (ns == 0) throw Error(Errc::InvalidArgument, "stream count must be positive");
    const double s = static_cast<double>(ns);
    return s * std::log2(1.0 + snr * static_cast<double>(n) * static_cast<double>(m) / (s * s));
}

double eigen_rate(std::span<const double> gram_eigs, double snr, std::size_t ns) {
    double total = 0.0;
    const std::size_t k = std::min(ns, gram_eigs.size());
    for (std::size_t i = 0; i < k; ++i)
        total += std::log2(1.0 + snr * std::max(gram_eigs[i], 0.0) / static_cast<double>(ns));
    return total;
}

double dft_diag_quality(const ComplexMatrix &g, std::size_t nv, std::size_t nh) {
    if (!g.is_square() || nv * nh != g.rows())
        throw Error(Errc::DimensionMismatch, "Gram of size " + std::to_string(g.rows()) + "x" +
                                                 std::to_string(g.cols()) + " does not match " + std::to_string(nv) +
                                                 "x" + std::to_string(nh) + " grid");
    const ComplexMatrix omega = kron(dft_matrix(nv), dft_matrix(nh));
    const ComplexMatrix q = adjoint_times(omega, g * omega);
    const double total = q.squared_frobenius_norm();
    if (total == 0.0) return 0.0;
    double diag = 0.0;
    for (std::size_t i = 0; i < q.rows(); ++i) diag += std::norm(q(i, i));
    return std::clamp((total - diag) / total, 0.0, 1.0);
}

double block_toeplitz_deviation(const ComplexMatrix &g, std::size_t nv, std::size_t nh) {
    if (!g.is_square() || nv * nh != g.rows()) throw Error(Errc::DimensionMismatch, "Gram does not match grid");
    const std::size_t wv = 2 * nv - 1, wh = 2 * nh - 1;
    std::vector<cplx> ref(wv * wh);
    std::vector<bool> seen(wv * wh, false);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t k = 0; k < g.cols(); ++k) {
            const std::size_t dv = i / nh + nv - 1 - k / nh;
            const std::size_t dh = i % nh + nh - 1 - k % nh;
            const std::size_t slot = dv * wh + dh;
            if (!seen[slot]) {
                seen[slot] = true;
                ref[slot] = g(i, k);
            } else {
                worst = std::max(worst, std::abs(g(i, k) - ref[slot]));
            }
        }
    return worst;
}

std::vector<double> gram_eigenvalues(const ComplexMatrix &h) {
    const GramSide side = h.cols() <= h.rows() ? GramSide::TxGram : GramSide::RxGram;
    return eigvals_hermitian(gram(h, side));
}

double spectrum_gap(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(Errc::DimensionMismatch, "spectrum_gap shapes differ");
    const auto ea = gram_eigenvalues(a);
    const auto eb = gram_eigenvalues(b);
    double gap = 0.0;
    for (std::size_t i = 0; i < ea.size(); ++i) gap = std::max(gap, std::abs(ea[i] - eb[i]));
    return gap / (static_cast<double>(a.rows()) * static_cast<double>(a.cols()));
}

} // namespace losmimo
