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

#include "losmimo/harness/scenario.hpp"
#include "losmimo/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>

namespace losmimo::harness {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

ArraySpec make_spec(const ArrayConfig &a, double d_v, double d_h, double rot) {
    ArraySpec s;
    s.n_v = a.n_v;
    s.n_h = a.n_h;
    s.d_v = d_v;
    s.d_h = d_h;
    s.theta = rot;
    s.phi = rot;
    s.layout_kind = a.layout;
    return s;
}

} // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

Link build_link(const ScenarioConfig &cfg, double rotation_deg, double scale) {
    Link link;
    link.params.wavelength = wavelength_from_ghz(cfg.frequency_ghz);
    link.params.distance = cfg.distance_m;
    link.params.validate();
    const double lambda = link.params.wavelength;
    const double d = cfg.distance_m;

    double tv = cfg.tx.d_v, th = cfg.tx.d_h, rv = cfg.rx.d_v, rh = cfg.rx.d_h;
    switch (cfg.spacing_mode) {
    case SpacingMode::Optimal: {
        const SpacingSolution sv = optimal_spacing(cfg.rx.n_v, cfg.tx.n_v, cfg.ns_split.first, lambda, d);
        const SpacingSolution sh = optimal_spacing(cfg.rx.n_h, cfg.tx.n_h, cfg.ns_split.second, lambda, d);
        tv = sv.d_t;
        rv = sv.d_r;
        th = sh.d_t;
        rh = sh.d_r;
        break;
    }
    case SpacingMode::HalfWavelength:
        tv = th = rv = rh = lambda / 2.0;
        break;
    case SpacingMode::Explicit:
        break;
    }

    const double rot = rotation_deg * std::numbers::pi / 180.0;
    link.tx_spec = make_spec(cfg.tx, tv * scale, th * scale, rot);
    link.rx_spec = make_spec(cfg.rx, rv * scale, rh * scale, rot);
    link.tx = build_layout(link.tx_spec, Side::Tx, d);
    link.rx = build_layout(link.rx_spec, Side::Rx, d);
    link.channel = fresnel_factors(link.tx, link.rx, link.params);
    return link;
}

AxisCluster axis_cluster(const Link &link, bool vertical) {
    const std::size_t m = vertical ? link.tx_spec.n_v : link.tx_spec.n_h;
    const std::size_t n = vertical ? link.rx_spec.n_v : link.rx_spec.n_h;
    const double dt = vertical ? link.tx_spec.d_v : link.tx_spec.d_h;
    const double dr = vertical ? link.rx_spec.d_v : link.rx_spec.d_h;
    AxisCluster a;
    a.n_min = std::min(n, m);
    a.n_max = std::max(n, m);
    a.m_dim = m;
    a.delta = dt * dr * static_cast<double>(a.n_max) / (link.params.wavelength * link.params.distance);
    return a;
}

SchemeRates evaluate_schemes(const Link &link, const ScenarioConfig &cfg, const std::vector<Scheme> &schemes,
                             const std::vector<double> &snr_db) {
    const ComplexMatrix &h = link.channel.h_exact;
    SchemeRates out;

    auto t0 = Clock::now();
    const DigitalBeamformer digital = digital_svd(h, cfg.ns);
    const double digital_ms = elapsed_ms(t0);

    std::optional<ComplexMatrix> tx_dict, rx_dict;
    auto dictionaries = [&] {
        if (!tx_dict) {
            tx_dict = dictionary_tx(link.tx, link.params, link.tx_spec.n_v, link.tx_spec.n_h);
            rx_dict = dictionary_rx(link.rx, link.params, link.rx_spec.n_v, link.rx_spec.n_h);
        }
    };

    auto wanted = schemes;
    if (std::find(wanted.begin(), wanted.end(), Scheme::DigitalUniform) == wanted.end())
        wanted.push_back(Scheme::DigitalUniform);

    for (Scheme s : wanted) {
        std::vector<double> rates, eval;
        t0 = Clock::now();
        std::optional<std::pair<HybridBeamformer, HybridBeamformer>> hybrid;
        double build = 0.0;
        switch (s) {
        case Scheme::DigitalUniform:
        case Scheme::DigitalWaterFill:
            build = digital_ms;
            break;
        case Scheme::AsymptoticHybrid:
            dictionaries();
            hybrid = asymptotic_hybrid(*tx_dict, *rx_dict, h, cfg.ns, ColumnSelection::GainRanked);
            break;
        case Scheme::OmpHybrid:
            dictionaries();
            hybrid.emplace(omp_hybrid(digital.precoder, *tx_dict, cfg.n_rf_tx, Side::Tx),
                           omp_hybrid(digital.combiner, *rx_dict, cfg.n_rf_rx, Side::Rx));
            break;
        case Scheme::PhaseExtract: {
            const std::size_t n_rf = std::min(cfg.n_rf_tx, cfg.n_rf_rx);
            if (n_rf > cfg.ns) dictionaries();
            hybrid = phase_extraction_hybrid(h, digital, n_rf, tx_dict ? &*tx_dict : nullptr,
                                             rx_dict ? &*rx_dict : nullptr);
            break;
        }
        }
        if (hybrid) build = elapsed_ms(t0);

        for (double db : snr_db) {
            const double snr = db_to_linear(db);
            const auto t1 = Clock::now();
            double r = 0.0;
            if (s == Scheme::DigitalUniform)
                r = digital_rate(h, digital, snr);
            else if (s == Scheme::DigitalWaterFill)
                r = digital_rate(h, with_water_filling(digital, WaterFill{1.0, snr}), snr);
            else
                r = hybrid_rate(h, hybrid->first, hybrid->second, snr);
            rates.push_back(r);
            eval.push_back(elapsed_ms(t1));
        }
        out.rates[s] = std::move(rates);
        out.eval_ms[s] = std::move(eval);
        out.build_ms[s] = build;
    }
    return out;
}

} // namespace losmimo::harness
