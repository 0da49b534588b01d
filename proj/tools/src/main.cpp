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

#include "losmimo/error.hpp"
#include "losmimo/harness/commands.hpp"
#include "losmimo/harness/config.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

namespace hz = losmimo::harness;

enum Exit { kOk = 0, kInvariant = 1, kConfig = 2, kNumeric = 3 };

int emit(const std::string &text, const std::string &out_flag, const hz::ScenarioConfig *cfg) {
    std::string path = out_flag;
    if (path.empty() && cfg) path = cfg->output_path;
    if (path.empty() || path == "-") {
        std::cout << text;
        return kOk;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write " << path << "\n";
        return kConfig;
    }
    f << text;
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"losmimo: line-of-sight MIMO array and beamforming studies"};
    app.require_subcommand(1);

    std::string config_path, out_path, inject;
    std::size_t threads = 1;
    bool timing = false;
    std::vector<double> scales;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "scenario file (YAML)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "output CSV path; overrides output_path, '-' for stdout");
        sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--timing", timing, "fill wall_time_ms (output no longer byte-stable)");
    };

    CLI::App *spectrum = app.add_subcommand("spectrum", "Gram eigenvalues and clustering summary");
    add_common(spectrum);
    CLI::App *rate = app.add_subcommand("rate-sweep", "rates of every scheme over the snr/rotation grid");
    add_common(rate);
    CLI::App *rotation = app.add_subcommand("rotation-sweep", "rate sweep with Fresnel error per rotation");
    add_common(rotation);
    CLI::App *aperture = app.add_subcommand("aperture-sweep", "digital rate against scaled spacing");
    add_common(aperture);
    aperture->add_option("--scales", scales, "spacing scale factors; default from the config");
    CLI::App *validate = app.add_subcommand("validate", "run the invariant suite");
    validate->add_option("--inject", inject, "fault injection for self-test")->check(CLI::IsMember({"dt-sign"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kOk : kConfig;
    }

    if (validate->parsed()) {
        hz::ValidateOptions vo;
        vo.flip_dt_sign = inject == "dt-sign";
        const auto results = hz::run_validate(vo);
        std::cout << hz::validate_report(results);
        for (const auto &r : results)
            if (!r.pass) return kInvariant;
        return kOk;
    }

    try {
        const hz::ScenarioConfig cfg = hz::load_config(config_path);
        const hz::RunOptions opts{threads, timing};
        std::string text;
        if (spectrum->parsed()) {
            text = hz::spectrum_csv(hz::spectrum(cfg));
        } else if (rate->parsed()) {
            text = hz::sweep_csv(hz::rate_sweep(cfg, opts), false);
        } else if (rotation->parsed()) {
            text = hz::sweep_csv(hz::rate_sweep(cfg, opts), true);
        } else {
            text = hz::aperture_csv(hz::aperture_sweep(cfg, scales.empty() ? cfg.aperture_scales : scales, opts));
        }
        return emit(text, out_path, &cfg);
    } catch (const hz::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const hz::NumericFailure &e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kNumeric;
    } catch (const losmimo::Error &e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kNumeric;
    }
}
