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

#include "losmimo/harness/commands.hpp"
#include "losmimo/error.hpp"
#include "losmimo/harness/scenario.hpp"
#include "losmimo/linalg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace losmimo::harness {

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)> &fn) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    for (auto &e : errors)
        if (e) std::rethrow_exception(e);
}

std::string format_real(double v) {
    if (v == 0.0) return "0"; // folds -0
    return fmt::format("{:.12g}", v);
}

namespace {

[[noreturn]] void numeric_failure(const std::string &where, const std::exception &e) {
    throw NumericFailure(where + ": " + e.what());
}

} // namespace

SpectrumResult spectrum(const ScenarioConfig &cfg) {
    const double rot = cfg.rotation_deg.front();
    try {
        const Link link = build_link(cfg, rot);
        const ComplexMatrix &h = link.channel.h_exact;
        SpectrumResult r;
        r.eigenvalues = eigvals_hermitian(gram(h, GramSide::TxGram));
        r.normalizer = static_cast<double>(h.rows()) * static_cast<double>(h.cols()) / static_cast<double>(cfg.ns);
        r.report = cluster_report_2d(r.eigenvalues, r.normalizer, cfg.cluster_eps, axis_cluster(link, true),
                                     axis_cluster(link, false));
        return r;
    } catch (const Error &e) {
        numeric_failure("spectrum at rotation " + format_real(rot) + " deg", e);
    }
}

std::string spectrum_csv(const SpectrumResult &r) {
    std::string out = "index,raw_value,normalized_value\n";
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
        out += fmt::format("{},{},{}\n", i, format_real(r.eigenvalues[i]), format_real(r.eigenvalues[i] / r.normalizer));
    const ClusterReport &c = r.report;
    out += "\nfield,value\n";
    out += "normalizer," + format_real(r.normalizer) + "\n";
    out += "eps," + format_real(c.eps) + "\n";
    out += fmt::format("count_near_one,{}\ncount_near_zero,{}\ntransition_count,{}\npredicted_rank,{}\n",
                       c.count_near_one, c.count_near_zero, c.transition_count, c.predicted_rank);
    out += "transition_bound," + format_real(c.transition_bound) + "\n";
    return out;
}

std::vector<SweepRow> rate_sweep(const ScenarioConfig &cfg, const RunOptions &opts) {
    const std::size_t n_rot = cfg.rotation_deg.size();
    std::vector<SchemeRates> per_rot(n_rot);
    std::vector<double> fresnel(n_rot, 0.0);

    parallel_for(n_rot, opts.threads, [&](std::size_t i) {
        const double rot = cfg.rotation_deg[i];
        try {
            const Link link = build_link(cfg, rot);
            fresnel[i] = max_abs_diff(link.channel.h_exact, link.channel.recompose());
            per_rot[i] = evaluate_schemes(link, cfg, cfg.schemes, cfg.snr_db);
        } catch (const Error &e) {
            numeric_failure("rotation " + format_real(rot) + " deg", e);
        }
    });

    std::vector<SweepRow> rows;
    for (Scheme s : cfg.schemes)
        for (std::size_t k = 0; k < cfg.snr_db.size(); ++k)
            for (std::size_t i = 0; i < n_rot; ++i) {
                const SchemeRates &sr = per_rot[i];
                SweepRow row;
                row.scheme = to_string(s);
                row.snr_db = cfg.snr_db[k];
                row.rotation_deg = cfg.rotation_deg[i];
                row.rate_bps_hz = sr.rates.at(s)[k];
                const double ref = sr.rates.at(Scheme::DigitalUniform)[k];
                row.digital_gap_ratio = ref > 0.0 ? row.rate_bps_hz / ref : 0.0;
                if (opts.timing) row.wall_time_ms = sr.build_ms.at(s) + sr.eval_ms.at(s)[k];
                row.fresnel_error = fresnel[i];
                rows.push_back(std::move(row));
            }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow> &rows, bool with_fresnel_error) {
    std::string out = "scheme,snr_db,rotation_deg,rate_bps_hz,digital_gap_ratio,wall_time_ms";
    out += with_fresnel_error ? ",fresnel_error\n" : "\n";
    for (const SweepRow &r : rows) {
        out += fmt::format("{},{},{},{},{},{}", r.scheme, format_real(r.snr_db), format_real(r.rotation_deg),
                           format_real(r.rate_bps_hz), format_real(r.digital_gap_ratio), format_real(r.wall_time_ms));
        out += with_fresnel_error ? "," + format_real(r.fresnel_error) + "\n" : "\n";
    }
    return out;
}

std::vector<ApertureRow> aperture_sweep(const ScenarioConfig &cfg, const std::vector<double> &scales,
                                        const RunOptions &opts) {
    for (double s : scales)
        if (!(s > 0.0)) throw ConfigError("<arguments>", 0, "scales", "aperture scales must be positive");
    const double rot = cfg.rotation_deg.front();
    std::vector<std::vector<ApertureRow>> per_scale(scales.size());

    parallel_for(scales.size(), opts.threads, [&](std::size_t i) {
        try {
            const Link link = build_link(cfg, rot, scales[i]);
            const double lt = aperture(link.tx), lr = aperture(link.rx);
            const bool feasible = aperture_feasible(lt, lr, cfg.ns, link.params.wavelength, link.params.distance);
            const SchemeRates sr = evaluate_schemes(link, cfg, {Scheme::DigitalUniform}, cfg.snr_db);
            for (std::size_t k = 0; k < cfg.snr_db.size(); ++k) {
                ApertureRow row{scales[i], cfg.snr_db[k], lt, lr, lt * lr, feasible,
                                sr.rates.at(Scheme::DigitalUniform)[k], 0.0};
                if (opts.timing) row.wall_time_ms = sr.build_ms.at(Scheme::DigitalUniform) + sr.eval_ms.at(Scheme::DigitalUniform)[k];
                per_scale[i].push_back(row);
            }
        } catch (const Error &e) {
            numeric_failure("aperture scale " + format_real(scales[i]), e);
        }
    });

    std::vector<ApertureRow> rows;
    for (auto &v : per_scale) rows.insert(rows.end(), v.begin(), v.end());
    return rows;
}

std::string aperture_csv(const std::vector<ApertureRow> &rows) {
    std::string out = "scale,snr_db,l_t,l_r,product,feasible,rate_bps_hz,wall_time_ms\n";
    for (const ApertureRow &r : rows)
        out += fmt::format("{},{},{},{},{},{},{},{}\n", format_real(r.scale), format_real(r.snr_db), format_real(r.l_t),
                           format_real(r.l_r), format_real(r.product), r.feasible ? 1 : 0, format_real(r.rate_bps_hz),
                           format_real(r.wall_time_ms));
    return out;
}

} // namespace losmimo::harness
