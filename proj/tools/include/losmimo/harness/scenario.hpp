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

#ifndef LOSMIMO_HARNESS_SCENARIO_HPP
#define LOSMIMO_HARNESS_SCENARIO_HPP

#include "losmimo/beamforming.hpp"
#include "losmimo/channel.hpp"
#include "losmimo/geometry.hpp"
#include "losmimo/harness/config.hpp"

#include <map>
#include <vector>

namespace losmimo::harness {

/// One realised link: array specs, layouts and the channel with its Fresnel factors.
struct Link {
    ArraySpec tx_spec;
    ArraySpec rx_spec;
    AntennaLayout tx;
    AntennaLayout rx;
    ChannelParams params;
    ChannelSet channel;
};

/// Builds the link at a common rotation (theta = phi on both sides) with all
/// spacings multiplied by scale.
Link build_link(const ScenarioConfig &cfg, double rotation_deg, double scale = 1.0);

/// Per-axis delta = d_t d_r max(N_i, M_i) / (lambda D) for the link.
AxisCluster axis_cluster(const Link &link, bool vertical);

double db_to_linear(double db);

/// Rates of the configured schemes (plus digital-uniform, always) on one link,
/// in bits/s/Hz, one entry per snr of snr_db. build_ms holds the time spent
/// constructing each scheme's beamformers.
struct SchemeRates {
    std::map<Scheme, std::vector<double>> rates;
    std::map<Scheme, double> build_ms;
    std::map<Scheme, std::vector<double>> eval_ms;
};

SchemeRates evaluate_schemes(const Link &link, const ScenarioConfig &cfg, const std::vector<Scheme> &schemes,
                             const std::vector<double> &snr_db);

} // namespace losmimo::harness

#endif
