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

#ifndef LOSMIMO_SPECTRAL_HPP
#define LOSMIMO_SPECTRAL_HPP

#include "losmimo/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace losmimo {

/// Eigenvalue clustering summary for a (normalised) Gram spectrum.
struct ClusterReport {
    double eps = 0.0;
    std::size_t count_near_one = 0;   // normalised value >= 1 - eps
    std::size_t count_near_zero = 0;  // normalised value <= eps
    std::size_t transition_count = 0; // strictly in between
    std::size_t predicted_rank = 0;
    double transition_bound = 0.0;
};

/// Per-axis quantities entering the transition-band bound.
struct AxisCluster {
    double delta = 0.0;      // d_t d_r N_max / (lambda D)
    std::size_t n_min = 0;   // min(N_i, M_i)
    std::size_t n_max = 0;   // max(N_i, M_i)
    std::size_t m_dim = 0;   // M_i, the Gram dimension
};

/// Transition-band size R(N, M, delta, eps) (natural logarithms):
///   (4/pi^2 ln(8M) + 6) ln(16/eps)
///   + 2 [ -ln(pi/32 eps (r^2 - 1)) / ln r ]^+,   r = N_max / (M delta).
/// Returns +infinity when r <= 1, where the bound is vacuous.
double transition_band(std::size_t n_i, std::size_t m_i, double delta, double eps);

/// Counts on values / normalizer for one linear axis. predicted_rank is
/// 2 floor(delta n_min / 2), transition_bound is 2 R.
ClusterReport cluster_report(std::span<const double> values, double normalizer, double eps, double delta,
                             std::size_t n_min, std::size_t n_max, std::size_t m_dim);

/// Planar version for a Kronecker Gram G_v (x) G_h. predicted_rank is the
/// product of the per-axis ranks; the transition bound counts index pairs with
/// at least one factor inside its per-axis transition window.
ClusterReport cluster_report_2d(std::span<const double> values, double normalizer, double eps, const AxisCluster &v,
                                const AxisCluster &h);

struct PowerAllocation {
    std::vector<double> powers;
    double water_level = 0.0;
    std::size_t active = 0;
};

/// Water-filling over descending non-negative gains: maximises
/// sum log(1 + g lambda_i p_i) subject to sum p_i = p_total.
PowerAllocation water_filling(std::span<const double> eigs, double p_total, double gain_over_noise);

/// log2 det(I + prefactor R^{-1} W^* H F F^* H^* W), R = W^* W.
double rate_with_prefactor(const ComplexMatrix &h, const ComplexMatrix &f, const ComplexMatrix &w, double prefactor);

/// Uniform-power achievable rate in bits/s/Hz, prefactor snr / ns.
/// f and w must both have ns columns. Throws SingularCombiner when
/// cond(W^* W) exceeds 1e12.
double rate(const ComplexMatrix &h, const ComplexMatrix &f, const ComplexMatrix &w, double snr, std::size_t ns);

/// ns log2(1 + snr n m / ns^2).
double rate_upper_bound(std::size_t n, std::size_t m, std::size_t ns, double snr);

/// sum_{i < ns} log2(1 + snr lambda_i / ns) over the leading Gram eigenvalues.
double eigen_rate(std::span<const double> gram_eigs, double snr, std::size_t ns);

/// Fraction of Frobenius energy off the diagonal after the 2D-DFT change of
/// basis (Omega_nv (x) Omega_nh)^* G (Omega_nv (x) Omega_nh). In [0, 1].
double dft_diag_quality(const ComplexMatrix &g, std::size_t nv, std::size_t nh);

/// Largest deviation of G from a doubly block Toeplitz pattern: entries with
/// the same (i_v - k_v, i_h - k_h) offset are compared against the first one seen.
double block_toeplitz_deviation(const ComplexMatrix &g, std::size_t nv, std::size_t nh);

/// L-infinity gap between the sorted Gram eigenvalues of two equally sized
/// channels, divided by N M.
double spectrum_gap(const ComplexMatrix &a, const ComplexMatrix &b);

/// Descending eigenvalues of the smaller Gram matrix of h.
std::vector<double> gram_eigenvalues(const ComplexMatrix &h);

} // namespace losmimo

#endif
