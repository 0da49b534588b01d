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

#ifndef LOSMIMO_HARNESS_CONFIG_HPP
#define LOSMIMO_HARNESS_CONFIG_HPP

#include "losmimo/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace losmimo::harness {

enum class Scheme { DigitalWaterFill, DigitalUniform, AsymptoticHybrid, OmpHybrid, PhaseExtract };
enum class SpacingMode { Optimal, HalfWavelength, Explicit };

std::string to_string(Scheme s);
std::string to_string(SpacingMode m);

struct ArrayConfig {
    std::size_t n_v = 1;
    std::size_t n_h = 1;
    double d_v = 0.0; // meters, explicit spacing mode only
    double d_h = 0.0;
    LayoutKind layout = LayoutKind::ParallelogramOptimal;
};

struct ScenarioConfig {
    double frequency_ghz = 28.0;
    double distance_m = 50.0;
    ArrayConfig tx;
    ArrayConfig rx;
    std::size_t ns = 1;
    std::pair<std::size_t, std::size_t> ns_split{1, 1};
    std::size_t n_rf_tx = 1;
    std::size_t n_rf_rx = 1;
    std::vector<double> snr_db;
    std::vector<Scheme> schemes;
    SpacingMode spacing_mode = SpacingMode::Optimal;
    std::vector<double> rotation_deg{0.0};
    std::vector<double> aperture_scales{1.0};
    double cluster_eps = 0.1;
    std::int64_t seed = 0;
    std::string output_path;
};

/// Rejected configuration. what() reads "<source>:<line>: <field>: <reason>".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string source, int line, std::string field, const std::string &reason);

    const std::string &field() const noexcept { return field_; }
    int line() const noexcept { return line_; }

private:
    std::string field_;
    int line_;
};

ScenarioConfig parse_config_text(const std::string &text, const std::string &source = "<config>");
ScenarioConfig load_config(const std::string &path);

} // namespace losmimo::harness

#endif
