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

#include "losmimo/matrix.hpp"
#include "losmimo/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace losmimo {

namespace {

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(Errc::DimensionMismatch,
                    std::string(op) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                        std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, cplx fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw Error(Errc::DimensionMismatch, "entry count " + std::to_string(data_.size()) + " does not match " +
                                                 std::to_string(rows_) + "x" + std::to_string(cols_));
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
        if (r.size() != cols_) throw Error(Errc::DimensionMismatch, "ragged initializer list");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

std::vector<cplx> ComplexMatrix::col(std::size_t c) const {
    std::vector<cplx> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

void ComplexMatrix::set_col(std::size_t c, std::span<const cplx> values) {
    if (values.size() != rows_) throw Error(Errc::DimensionMismatch, "set_col length");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

ComplexMatrix ComplexMatrix::leading_cols(std::size_t k) const {
    if (k > cols_) throw Error(Errc::DimensionMismatch, "leading_cols beyond column count");
    ComplexMatrix out(rows_, k);
    for (std::size_t r = 0; r < rows_; ++r)
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_), k,
                    out.data_.begin() + static_cast<std::ptrdiff_t>(r * k));
    return out;
}

ComplexMatrix ComplexMatrix::select_cols(std::span<const std::size_t> indices) const {
    ComplexMatrix out(rows_, indices.size());
    for (std::size_t j = 0; j < indices.size(); ++j) {
        if (indices[j] >= cols_) throw Error(Errc::DimensionMismatch, "select_cols index out of range");
        for (std::size_t r = 0; r < rows_; ++r) out(r, j) = (*this)(r, indices[j]);
    }
    return out;
}

ComplexMatrix ComplexMatrix::append_cols(const ComplexMatrix &other) const {
    if (empty()) return other;
    if (other.empty()) return *this;
    if (other.rows_ != rows_) throw Error(Errc::DimensionMismatch, "append_cols row count");
    ComplexMatrix out(rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto dst = out.row(r);
        std::copy(row(r).begin(), row(r).end(), dst.begin());
        std::copy(other.row(r).begin(), other.row(r).end(), dst.begin() + static_cast<std::ptrdiff_t>(cols_));
    }
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix out(*this);
    for (auto &v : out.data_) v = std::conj(v);
    return out;
}

double ComplexMatrix::squared_frobenius_norm() const noexcept {
    double s = 0.0;
    for (const auto &v : data_) s += std::norm(v);
    return s;
}

double ComplexMatrix::frobenius_norm() const noexcept { return std::sqrt(squared_frobenius_norm()); }

cplx ComplexMatrix::trace() const {
    if (!is_square()) throw Error(Errc::NonSquare, "trace of non-square matrix");
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

bool ComplexMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx &v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &rhs) {
    require_same_shape(*this, rhs, "operator+");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &rhs) {
    require_same_shape(*this, rhs, "operator-");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cplx s) noexcept {
    for (auto &v : data_) v *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows())
        throw Error(Errc::DimensionMismatch, "matmul " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                                 " * " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto dst = out.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            auto src = b.row(k);
            for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += aik * src[j];
        }
    }
    return out;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix adjoint_times(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows()) throw Error(Errc::DimensionMismatch, "adjoint_times row counts differ");
    ComplexMatrix out(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        auto arow = a.row(k);
        auto brow = b.row(k);
        for (std::size_t i = 0; i < arow.size(); ++i) {
            const cplx aki = std::conj(arow[i]);
            if (aki == cplx{}) continue;
            auto dst = out.row(i);
            for (std::size_t j = 0; j < brow.size(); ++j) dst[j] += aki * brow[j];
        }
    }
    return out;
}

ComplexMatrix times_adjoint(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.cols()) throw Error(Errc::DimensionMismatch, "times_adjoint column counts differ");
    ComplexMatrix out(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto arow = a.row(i);
        for (std::size_t j = 0; j < b.rows(); ++j) {
            auto brow = b.row(j);
            cplx s = 0.0;
            for (std::size_t k = 0; k < arow.size(); ++k) s += arow[k] * std::conj(brow[k]);
            out(i, j) = s;
        }
    }
    return out;
}

ComplexMatrix scale_rows(const ComplexMatrix &a, std::span<const cplx> d) {
    if (d.size() != a.rows()) throw Error(Errc::DimensionMismatch, "scale_rows length");
    ComplexMatrix out(a);
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (auto &v : out.row(r)) v *= d[r];
    return out;
}

ComplexMatrix scale_cols(const ComplexMatrix &a, std::span<const cplx> d) {
    if (d.size() != a.cols()) throw Error(Errc::DimensionMismatch, "scale_cols length");
    ComplexMatrix out(a);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto row = out.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) row[c] *= d[c];
    }
    return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
    return m;
}

} // namespace losmimo
