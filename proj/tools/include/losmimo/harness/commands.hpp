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

#ifndef LOSMIMO_HARNESS_COMMANDS_HPP
#define LOSMIMO_HARNESS_COMMANDS_HPP

#include "losmimo/harness/config.hpp"
#include "losmimo/spectral.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace losmimo::harness {

/// Failure of a numeric kernel at a specific grid point (exit code 3).
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    std::size_t threads = 1;
    bool timing = false; // wall_time_ms stays 0 unless set, keeping output byte-stable
};

/// Runs fn(0..n-1) on up to `threads` workers. If any call throws, the
/// exception from the lowest index is rethrown after all workers finish.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)> &fn);

std::string format_real(double v); // 12 significant digits

struct SpectrumResult {
    std::vector<double> eigenvalues; // Gram H^* H, descending
    double normalizer = 1.0;         // N M / ns
    ClusterReport report;
};

SpectrumResult spectrum(const ScenarioConfig &cfg);
std::string spectrum_csv(const SpectrumResult &r);

struct SweepRow {
    std::string scheme;
    double snr_db = 0.0;
    double rotation_deg = 0.0;
    double rate_bps_hz = 0.0;
    double digital_gap_ratio = 0.0;
    double wall_time_ms = 0.0;
    double fresnel_error = 0.0; // emitted by rotation sweeps only
};

/// Rows ordered by scheme (config order), snr ascending, rotation ascending.
std::vector<SweepRow> rate_sweep(const ScenarioConfig &cfg, const RunOptions &opts);
std::string sweep_csv(const std::vector<SweepRow> &rows, bool with_fresnel_error);

struct ApertureRow {
    double scale = 0.0;
    double snr_db = 0.0;
    double l_t = 0.0;
    double l_r = 0.0;
    double product = 0.0;
    bool feasible = false;
    double rate_bps_hz = 0.0;
    double wall_time_ms = 0.0;
};

/// Digital-uniform rate with every spacing multiplied by each scale, at the
/// first configured rotation. Ordered by scale as given, then snr ascending.
std::vector<ApertureRow> aperture_sweep(const ScenarioConfig &cfg, const std::vector<double> &scales,
                                        const RunOptions &opts);
std::string aperture_csv(const std::vector<ApertureRow> &rows);

struct InvariantResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidateOptions {
    bool flip_dt_sign = false; // fault injection: conjugates D_t in the recomposition check
};

std::vector<InvariantResult> run_validate(const ValidateOptions &opts);
std::string validate_report(const std::vector<InvariantResult> &results);

} // namespace losmimo::harness

#endif
