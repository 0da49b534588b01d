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

#include "losmimo/geometry.hpp"
#include "losmimo/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace losmimo {

namespace {

constexpr double kMinPlaneTilt = 1e-6;

// Rotation used by the RotatedUpa baseline. The grid's normal is taken onto the
// same plane that the parallelogram layout occupies:
//   Tx: R = Ry(phi) Rx(-theta), Rx: R = Ry(-phi) Rx(theta).
Point3 rotate(const Point3 &p, double theta, double phi, Side side) {
    const double t = side == Side::Tx ? -theta : theta;
    const double f = side == Side::Tx ? phi : -phi;
    const double ct = std::cos(t), st = std::sin(t);
    const double cf = std::cos(f), sf = std::sin(f);
    // Rx(t)
    const double x1 = p.x;
    const double y1 = ct * p.y - st * p.z;
    const double z1 = st * p.y + ct * p.z;
    // Ry(f)
    return {cf * x1 + sf * z1, y1, -sf * x1 + cf * z1};
}

} // namespace

void ArraySpec::validate() const {
    if (n_v < 1 || n_h < 1) throw Error(Errc::InvalidArgument, "array needs at least one element per axis");
    if (!(d_v > 0.0) || !(d_h > 0.0)) throw Error(Errc::InvalidArgument, "antenna spacing must be positive");
    if (!std::isfinite(theta) || !std::isfinite(phi)) throw Error(Errc::NonFinite, "rotation angle");
    if (layout_kind == LayoutKind::ParallelogramOptimal && std::abs(std::cos(theta) * std::cos(phi)) <= kMinPlaneTilt)
        throw Error(Errc::DegeneratePlane, "array plane contains the link axis (|cos(theta) cos(phi)| <= 1e-6)");
}

std::size_t even_floor(double x) noexcept {
    if (!(x > 0.0)) return 0;
    return 2 * static_cast<std::size_t>(std::floor(x / 2.0 * (1.0 + 1e-9)));
}

SpacingSolution optimal_spacing(std::size_t n_i, std::size_t m_i, std::size_t ns_i, double wavelength,
                                double distance, double split) {
    if (!(wavelength > 0.0) || !(distance > 0.0))
        throw Error(Errc::InvalidArgument, "wavelength and distance must be positive");
    if (!(split > 0.0) || split > 1.0) throw Error(Errc::InvalidArgument, "split must lie in (0, 1]");
    if (n_i == 0 || m_i == 0) throw Error(Errc::InvalidArgument, "axis element count must be positive");
    if (ns_i % 2 != 0 || ns_i == 0)
        throw Error(Errc::OddStreamCount, "per-axis stream count " + std::to_string(ns_i) + " is not a positive even number");
    if (ns_i > std::min(n_i, m_i))
        throw Error(Errc::StreamExceedsArray, "per-axis stream count " + std::to_string(ns_i) + " exceeds min(" +
                                                  std::to_string(n_i) + ", " + std::to_string(m_i) + ")");

    const double nm = static_cast<double>(n_i) * static_cast<double>(m_i);
    const double product = static_cast<double>(ns_i) * wavelength * distance / nm;

    SpacingSolution out;
    out.d_t = std::sqrt(product * split);
    out.d_r = std::sqrt(product / split);
    const double n_max = static_cast<double>(std::max(n_i, m_i));
    out.delta = out.d_t * out.d_r * n_max / (wavelength * distance);
    out.achieved_streams = even_floor(out.d_t * out.d_r * nm / (wavelength * distance));
    return out;
}

AntennaLayout build_layout(const ArraySpec &spec, Side side, double distance) {
    spec.validate();
    if (side == Side::Rx && !(distance > 0.0)) throw Error(Errc::InvalidArgument, "link distance must be positive");

    AntennaLayout out;
    out.side = side;
    out.link_distance = distance;
    out.n_v = spec.n_v;
    out.n_h = spec.n_h;
    out.coords.reserve(spec.count());

    const double ct = std::cos(spec.theta), st = std::sin(spec.theta);
    const double cf = std::cos(spec.phi), sf = std::sin(spec.phi);
    const double z0 = side == Side::Rx ? distance : 0.0;

    for (std::size_t m = 0; m < spec.count(); ++m) {
        const double mv = static_cast<double>(m / spec.n_h);
        const double mh = static_cast<double>(m % spec.n_h);
        const double x = spec.d_v * mv;
        const double y = spec.d_h * mh;
        Point3 p;
        if (spec.layout_kind == LayoutKind::ParallelogramOptimal) {
            const double shear = (ct * sf * x + st * y) / (ct * cf);
            p = {x, y, z0 + (side == Side::Tx ? -shear : shear)};
        } else {
            p = rotate({x, y, 0.0}, spec.theta, spec.phi, side);
            p.z += z0;
        }
        out.coords.push_back(p);
    }
    return out;
}

double aperture(const AntennaLayout &layout) {
    double best = 0.0;
    const auto &c = layout.coords;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            const double dx = c[i].x - c[j].x, dy = c[i].y - c[j].y, dz = c[i].z - c[j].z;
            best = std::max(best, dx * dx + dy * dy + dz * dz);
        }
    return std::sqrt(best);
}

bool aperture_feasible(double l_t, double l_r, std::size_t ns, double wavelength, double distance) {
    return l_t * l_r >= 2.0 * std::sqrt(static_cast<double>(ns)) * wavelength * distance;
}

double plane_residual(const Point3 &p, double theta, double phi, Side side, double distance) noexcept {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double cf = std::cos(phi), sf = std::sin(phi);
    if (side == Side::Tx) return ct * sf * p.x + st * p.y + ct * cf * p.z;
    return ct * sf * p.x + st * p.y - ct * cf * (p.z - distance);
}

} // namespace losmimo
