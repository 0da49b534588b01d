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

#include "losmimo/linalg.hpp"
#include "losmimo/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace losmimo {

namespace {

void require_finite(const ComplexMatrix &a, const char *op) {
    if (!a.all_finite()) throw Error(Errc::NonFinite, std::string(op) + ": matrix has NaN/Inf entries");
}

double off_diagonal_mass(const ComplexMatrix &a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
}

// Jacobi core. When vecs_t is non-null it receives the eigenvectors as rows
// (transposed storage keeps the per-rotation update contiguous).
std::vector<double> jacobi(ComplexMatrix work, double tol, ComplexMatrix *vecs_t) {
    const std::size_t n = work.rows();
    const double scale = work.frobenius_norm();
    if (vecs_t) *vecs_t = ComplexMatrix::identity(n);

    std::vector<double> diag(n);
    if (scale == 0.0 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) diag[i] = work(i, i).real();
        return diag;
    }

    const double target = tol * scale;
    constexpr int kMaxSweeps = 100;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        const double off = off_diagonal_mass(work);
        if (off < target) break;
        // Early sweeps only rotate the large entries. Later, a pair is skipped when
        // even n^2 entries of its size would stay under a tenth of the target.
        const double skip_below =
            sweep < 3 ? 0.2 * off / static_cast<double>(n * n) : 0.1 * target / static_cast<double>(n);
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx b = work(p, q);
                const double mag = std::abs(b);
                if (mag == 0.0 || mag < skip_below) continue;
                const double app = work(p, p).real();
                const double aqq = work(q, q).real();

                // Phase-align the pair to a real symmetric 2x2 block, then
                // apply the classic real rotation.
                const cplx phase = b / mag;
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const cplx ephi = std::conj(phase);
                // U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] acting on (p, q), so
                // rows of U^* A U are p' = c p - s e^{i phi} q, q' = s p + c e^{i phi} q.
                cplx *rp = work.row(p).data();
                cplx *rq = work.row(q).data();
                cplx *base = work.entries().data();
                auto rotate = [&](std::size_t lo, std::size_t hi) {
                    for (std::size_t k = lo; k < hi; ++k) {
                        const cplx a = rp[k], z = phase * rq[k];
                        const cplx np = c * a - s * z, nq = s * a + c * z;
                        rp[k] = np;
                        rq[k] = nq;
                        base[k * n + p] = std::conj(np);
                        base[k * n + q] = std::conj(nq);
                    }
                };
                rotate(0, p);
                rotate(p + 1, q);
                rotate(q + 1, n);
                work(p, p) = app - t * mag;
                work(q, q) = aqq + t * mag;
                work(p, q) = 0.0;
                work(q, p) = 0.0;

                if (vecs_t) {
                    // V <- V U, stored as rows of V^T.
                    auto vp = vecs_t->row(p);
                    auto vq = vecs_t->row(q);
                    for (std::size_t k = 0; k < n; ++k) {
                        const cplx a = vp[k], z = ephi * vq[k];
                        vp[k] = c * a - s * z;
                        vq[k] = s * a + c * z;
                    }
                }
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) diag[i] = work(i, i).real();
    return diag;
}

ComplexMatrix checked_hermitian_copy(const ComplexMatrix &a) {
    if (!a.is_square())
        throw Error(Errc::NonSquare, std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " input");
    require_finite(a, "eig_hermitian");
    const double asym = hermitian_asymmetry(a);
    if (asym > kHermitianTolerance)
        throw Error(Errc::NonHermitianInput, "relative asymmetry " + std::to_string(asym));
    ComplexMatrix h(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        h(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

std::vector<std::size_t> descending_order(const std::vector<double> &values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return values[l] > values[r]; });
    return order;
}

// Modified Gram-Schmidt (two passes) over the columns of q, in place. Columns
// listed in `fixed` first, then the rest are orthogonalised against them.
void reorthonormalize(ComplexMatrix &q, std::size_t keep) {
    const std::size_t m = q.rows();
    for (std::size_t j = 0; j < keep; ++j) {
        std::vector<cplx> v = q.col(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                cplx dot = 0.0;
                for (std::size_t r = 0; r < m; ++r) dot += std::conj(q(r, i)) * v[r];
                for (std::size_t r = 0; r < m; ++r) v[r] -= dot * q(r, i);
            }
        }
        double nrm = 0.0;
        for (const auto &x : v) nrm += std::norm(x);
        nrm = std::sqrt(nrm);
        for (auto &x : v) x /= nrm;
        q.set_col(j, v);
    }
}

// Fills columns [filled, k) of q with unit vectors orthogonal to everything
// before them, drawing candidates from the standard basis.
void complete_basis(ComplexMatrix &q, std::size_t filled) {
    const std::size_t m = q.rows();
    const std::size_t k = q.cols();
    std::size_t next_candidate = 0;
    for (std::size_t j = filled; j < k; ++j) {
        for (;;) {
            if (next_candidate >= m) throw Error(Errc::DimensionMismatch, "cannot complete orthonormal basis");
            std::vector<cplx> v(m, 0.0);
            v[next_candidate++] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t i = 0; i < j; ++i) {
                    cplx dot = 0.0;
                    for (std::size_t r = 0; r < m; ++r) dot += std::conj(q(r, i)) * v[r];
                    for (std::size_t r = 0; r < m; ++r) v[r] -= dot * q(r, i);
                }
            }
            double nrm = 0.0;
            for (const auto &x : v) nrm += std::norm(x);
            nrm = std::sqrt(nrm);
            if (nrm < 1e-6) continue;
            for (auto &x : v) x /= nrm;
            q.set_col(j, v);
            break;
        }
    }
}

SvdResult svd_tall(const ComplexMatrix &a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const EigenSpectrum gram = eig_hermitian(adjoint_times(a, a));

    SvdResult out;
    out.right = gram.vectors;
    out.singular_values.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.singular_values[k] = std::sqrt(std::max(gram.values[k], 0.0));

    const double s1 = n ? out.singular_values[0] : 0.0;
    std::size_t rank = 0;
    while (rank < n && s1 > 0.0 && out.singular_values[rank] > kSvdRankThreshold * s1) ++rank;
    for (std::size_t k = rank; k < n; ++k) out.singular_values[k] = 0.0;

    out.left = ComplexMatrix(m, n);
    const ComplexMatrix av = a * out.right.leading_cols(rank);
    for (std::size_t k = 0; k < rank; ++k) {
        const double inv = 1.0 / out.singular_values[k];
        for (std::size_t r = 0; r < m; ++r) out.left(r, k) = av(r, k) * inv;
    }
    reorthonormalize(out.left, rank);
    complete_basis(out.left, rank);
    return out;
}

} // namespace

double hermitian_asymmetry(const ComplexMatrix &a) {
    if (!a.is_square()) throw Error(Errc::NonSquare, "asymmetry of non-square matrix");
    double diff = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) diff += std::norm(a(i, j) - std::conj(a(j, i)));
    const double total = a.frobenius_norm();
    return total == 0.0 ? 0.0 : std::sqrt(diff) / total;
}

EigenSpectrum eig_hermitian(const ComplexMatrix &a, double tol) {
    ComplexMatrix vecs_t;
    const std::vector<double> raw = jacobi(checked_hermitian_copy(a), tol, &vecs_t);
    const auto order = descending_order(raw);

    EigenSpectrum out;
    const std::size_t n = raw.size();
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = raw[order[k]];
        auto src = vecs_t.row(order[k]);
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = src[r];
    }
    return out;
}

std::vector<double> eigvals_hermitian(const ComplexMatrix &a, double tol) {
    std::vector<double> raw = jacobi(checked_hermitian_copy(a), tol, nullptr);
    std::stable_sort(raw.begin(), raw.end(), std::greater<>());
    return raw;
}

SvdResult svd(const ComplexMatrix &a) {
    if (a.empty()) throw Error(Errc::InvalidArgument, "svd of empty matrix");
    require_finite(a, "svd");
    if (a.rows() >= a.cols()) return svd_tall(a);
    SvdResult t = svd_tall(a.adjoint());
    return SvdResult{std::move(t.right), std::move(t.singular_values), std::move(t.left)};
}

ComplexMatrix dft_matrix(std::size_t k) {
    if (k == 0) throw Error(Errc::InvalidArgument, "dft_matrix size must be >= 1");
    ComplexMatrix out(k, k);
    const double norm = 1.0 / std::sqrt(static_cast<double>(k));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            // Reduce the exponent modulo k to keep the angle small and exact.
            const std::size_t e = (a * b) % k;
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(k);
            out(a, b) = std::polar(norm, ang);
        }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.empty() || b.empty()) throw Error(Errc::InvalidArgument, "kron of empty matrix");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

double hermitian_condition(const ComplexMatrix &a) {
    const auto vals = eigvals_hermitian(a);
    if (vals.empty()) return 1.0;
    if (vals.back() <= 0.0) return std::numeric_limits<double>::infinity();
    return vals.front() / vals.back();
}

double logdet_hpd(const ComplexMatrix &a) {
    if (!a.is_square()) throw Error(Errc::NonSquare, "logdet of non-square matrix");
    const std::size_t n = a.rows();
    ComplexMatrix l(n, n);
    double logdet = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
        if (!(d > 0.0)) throw Error(Errc::IllConditionedBasis, "matrix is not positive definite");
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        logdet += 2.0 * std::log(ljj);
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }
    return logdet;
}

ComplexMatrix least_squares(const ComplexMatrix &basis, const ComplexMatrix &target) {
    if (basis.rows() != target.rows())
        throw Error(Errc::DimensionMismatch, "least_squares: basis and target row counts differ");
    if (basis.cols() == 0) throw Error(Errc::InvalidArgument, "least_squares: empty basis");
    const ComplexMatrix gram = adjoint_times(basis, basis);
    const double cond = hermitian_condition(gram);
    if (!(cond <= kMaxGramCondition))
        throw Error(Errc::IllConditionedBasis, "Gram condition " + std::to_string(cond));

    // Cholesky solve of gram * X = basis^* target.
    const std::size_t n = gram.rows();
    ComplexMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = gram(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
        if (!(d > 0.0)) throw Error(Errc::IllConditionedBasis, "Gram matrix is not positive definite");
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = gram(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / l(j, j);
        }
    }
    ComplexMatrix x = adjoint_times(basis, target);
    for (std::size_t c = 0; c < x.cols(); ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = x(i, c);
            for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, c);
            x(i, c) = s / l(i, i);
        }
        for (std::size_t i = n; i-- > 0;) {
            cplx s = x(i, c);
            for (std::size_t k = i + 1; k < n; ++k) s -= std::conj(l(k, i)) * x(k, c);
            x(i, c) = s / l(i, i);
        }
    }
    return x;
}

double orthonormality_error(const ComplexMatrix &q) {
    const ComplexMatrix g = adjoint_times(q, q);
    double m = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) m = std::max(m, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    return m;
}

} // namespace losmimo
