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

#ifndef LOSMIMO_LINALG_HPP
#define LOSMIMO_LINALG_HPP

#include "losmimo/matrix.hpp"

#include <cstddef>
#include <vector>

namespace losmimo {

/// Eigenpairs of a Hermitian matrix. values[k] pairs with column k of vectors;
/// values are sorted non-increasing, ties keep the lower original index first.
struct EigenSpectrum {
    std::vector<double> values;
    ComplexMatrix vectors;
};

/// Thin singular value decomposition A = U diag(s) V^*, with
/// k = min(rows, cols) columns in U and V.
struct SvdResult {
    ComplexMatrix left;
    std::vector<double> singular_values;
    ComplexMatrix right;
};

inline constexpr double kJacobiTolerance = 1e-11;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kSvdRankThreshold = 1e-10;
inline constexpr double kMaxGramCondition = 1e12;

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
///
/// Sweeps the strict upper triangle in row-major order and stops once the
/// off-diagonal Frobenius mass falls below tol * ||a||_F. Input asymmetry above
/// kHermitianTolerance (relative, Frobenius) is rejected; smaller asymmetry is
/// averaged out before iterating.
EigenSpectrum eig_hermitian(const ComplexMatrix &a, double tol = kJacobiTolerance);

/// Eigenvalues only; same solver, vectors are not accumulated.
std::vector<double> eigvals_hermitian(const ComplexMatrix &a, double tol = kJacobiTolerance);

/// SVD through the eigendecomposition of the smaller Gram matrix. Singular
/// values at or below kSvdRankThreshold * s_1 are treated as zero and their
/// singular vectors are completed to an orthonormal set.
SvdResult svd(const ComplexMatrix &a);

/// Unitary k-point DFT matrix, entry (a, b) = exp(-j 2 pi a b / k) / sqrt(k).
ComplexMatrix dft_matrix(std::size_t k);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// X = (B^* B)^{-1} B^* T. Throws IllConditionedBasis when the Gram condition
/// number exceeds kMaxGramCondition.
ComplexMatrix least_squares(const ComplexMatrix &basis, const ComplexMatrix &target);

/// Ratio of largest to smallest eigenvalue of a Hermitian PSD matrix
/// (infinity when the smallest is not positive).
double hermitian_condition(const ComplexMatrix &a);

/// log(det(a)) of a Hermitian positive definite matrix via Cholesky; natural log.
/// Throws IllConditionedBasis if a pivot is not positive.
double logdet_hpd(const ComplexMatrix &a);

/// ||A - A^*||_F / ||A||_F (0 for the zero matrix).
double hermitian_asymmetry(const ComplexMatrix &a);

/// ||Q^* Q - I||_max, handy for orthonormality checks.
double orthonormality_error(const ComplexMatrix &q);

} // namespace losmimo

#endif
