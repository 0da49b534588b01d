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

#ifndef LOSMIMO_GEOMETRY_HPP
#define LOSMIMO_GEOMETRY_HPP

#include <cstddef>
#include <vector>

namespace losmimo {

enum class LayoutKind {
    ParallelogramOptimal, // xy-projection of the parallel grid, z sheared onto the rotated plane
    RotatedUpa,           // rigid rotation of the flat grid (baseline)
};

enum class Side { Tx, Rx };

/// Logical planar array: n_v x n_h elements at spacing (d_v, d_h) meters,
/// rotated by (theta, phi) radians.
struct ArraySpec {
    std::size_t n_v = 1;
    std::size_t n_h = 1;
    double d_v = 0.0;
    double d_h = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    LayoutKind layout_kind = LayoutKind::ParallelogramOptimal;

    std::size_t count() const noexcept { return n_v * n_h; }
    void validate() const;
};

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Realised antenna positions. Element m sits at grid index
/// (m / n_h, m % n_h); Rx coordinates already include the link distance in z.
struct AntennaLayout {
    std::vector<Point3> coords;
    Side side = Side::Tx;
    double link_distance = 0.0;
    std::size_t n_v = 1;
    std::size_t n_h = 1;

    std::size_t size() const noexcept { return coords.size(); }
};

struct SpacingSolution {
    double d_t = 0.0;
    double d_r = 0.0;
    double delta = 0.0;
    std::size_t achieved_streams = 0;
};

/// 2 * floor(x / 2) with a relative slack of 1e-9, so products that are even
/// integers up to rounding land on the intended value.
std::size_t even_floor(double x) noexcept;

/// Per-axis spacing that makes 2 floor(d_t d_r n m / (2 lambda D)) equal ns.
/// The product d_t d_r is placed at ns lambda D / (n m); split = d_t / d_r.
SpacingSolution optimal_spacing(std::size_t n_i, std::size_t m_i, std::size_t ns_i, double wavelength,
                                double distance, double split = 1.0);

AntennaLayout build_layout(const ArraySpec &spec, Side side, double distance);

/// Largest pairwise Euclidean distance between elements.
double aperture(const AntennaLayout &layout);

/// L_t L_r >= 2 sqrt(ns) lambda D.
bool aperture_feasible(double l_t, double l_r, std::size_t ns, double wavelength, double distance);

/// Left-hand side of the plane equation of the rotated array (0 on the plane).
/// For Tx: cos(t) sin(p) x + sin(t) y + cos(t) cos(p) z.
/// For Rx: cos(t) sin(p) x + sin(t) y - cos(t) cos(p) (z - D).
double plane_residual(const Point3 &p, double theta, double phi, Side side, double distance) noexcept;

} // namespace losmimo

#endif
