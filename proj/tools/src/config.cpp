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

#include "losmimo/harness/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace losmimo::harness {

namespace {

struct SchemeName {
    const char *name;
    Scheme scheme;
};
constexpr SchemeName kSchemes[] = {
    {"digital-wf", Scheme::DigitalWaterFill},      {"digital-uniform", Scheme::DigitalUniform},
    {"asymptotic-hybrid", Scheme::AsymptoticHybrid}, {"omp-hybrid", Scheme::OmpHybrid},
    {"phase-extract", Scheme::PhaseExtract},
};

int line_of(const YAML::Node &n) {
    const YAML::Mark m = n.Mark();
    return m.is_null() ? 0 : m.line + 1;
}

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const YAML::Node &at, const std::string &field, const std::string &reason) const {
        throw ConfigError(source_, line_of(at), field, reason);
    }
    [[noreturn]] void fail_line(int line, const std::string &field, const std::string &reason) const {
        throw ConfigError(source_, line, field, reason);
    }

    void only_keys(const YAML::Node &map, const std::string &prefix, std::initializer_list<const char *> allowed) const {
        if (!map.IsMap()) fail(map, prefix.empty() ? "<root>" : prefix, "expected a mapping");
        for (const auto &kv : map) {
            const auto key = kv.first.as<std::string>();
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char *a) { return key == a; }))
                fail(kv.first, join(prefix, key), "unknown field");
        }
    }

    YAML::Node get(const YAML::Node &map, const std::string &prefix, const char *key, bool required) {
        YAML::Node n = map[key];
        if (!n.IsDefined()) {
            if (required) fail(map, join(prefix, key), "missing required field");
            return n;
        }
        lines_[join(prefix, key)] = line_of(n);
        return n;
    }

    double real(const YAML::Node &n, const std::string &field) const {
        if (!n.IsScalar()) fail(n, field, "expected a number");
        double v = 0.0;
        if (!YAML::convert<double>::decode(n, v) || !std::isfinite(v))
            fail(n, field, "expected a finite number, got '" + n.Scalar() + "'");
        return v;
    }

    std::size_t count(const YAML::Node &n, const std::string &field) const {
        if (!n.IsScalar()) fail(n, field, "expected a non-negative integer");
        long long v = 0;
        if (!YAML::convert<long long>::decode(n, v) || v < 0)
            fail(n, field, "expected a non-negative integer, got '" + n.Scalar() + "'");
        return static_cast<std::size_t>(v);
    }

    std::vector<double> reals(const YAML::Node &n, const std::string &field) const {
        if (!n.IsSequence()) fail(n, field, "expected a list of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < n.size(); ++i) out.push_back(real(n[i], field + "[" + std::to_string(i) + "]"));
        return out;
    }

    int line(const std::string &field) const {
        auto it = lines_.find(field);
        return it == lines_.end() ? 0 : it->second;
    }

    static std::string join(const std::string &prefix, const std::string &key) {
        return prefix.empty() ? key : prefix + "." + key;
    }

private:
    std::string source_;
    std::map<std::string, int> lines_;
};

ArrayConfig read_array(Reader &rd, const YAML::Node &root, const char *key) {
    const YAML::Node n = rd.get(root, "", key, true);
    rd.only_keys(n, key, {"n_v", "n_h", "d_v", "d_h", "layout"});
    const std::string p = key;
    ArrayConfig a;
    a.n_v = rd.count(rd.get(n, p, "n_v", true), p + ".n_v");
    a.n_h = rd.count(rd.get(n, p, "n_h", true), p + ".n_h");
    if (auto v = rd.get(n, p, "d_v", false); v.IsDefined()) a.d_v = rd.real(v, p + ".d_v");
    if (auto v = rd.get(n, p, "d_h", false); v.IsDefined()) a.d_h = rd.real(v, p + ".d_h");
    if (auto v = rd.get(n, p, "layout", false); v.IsDefined()) {
        const std::string s = v.IsScalar() ? v.Scalar() : "";
        if (s == "parallelogram")
            a.layout = LayoutKind::ParallelogramOptimal;
        else if (s == "rotated-upa")
            a.layout = LayoutKind::RotatedUpa;
        else
            rd.fail(v, p + ".layout", "expected 'parallelogram' or 'rotated-upa'");
    }
    if (a.n_v == 0) rd.fail_line(rd.line(p + ".n_v"), p + ".n_v", "must be at least 1");
    if (a.n_h == 0) rd.fail_line(rd.line(p + ".n_h"), p + ".n_h", "must be at least 1");
    return a;
}

void validate(const Reader &rd, ScenarioConfig &c) {
    auto bad = [&](const std::string &field, const std::string &reason) { rd.fail_line(rd.line(field), field, reason); };

    if (!(c.frequency_ghz > 0.0)) bad("frequency_ghz", "must be positive");
    if (!(c.distance_m > 0.0)) bad("distance_m", "must be positive");
    const auto [sv, sh] = c.ns_split;
    auto split_ok = [](std::size_t f) { return f == 1 || (f > 0 && f % 2 == 0); };
    if (!split_ok(sv) || !split_ok(sh)) bad("ns_split", "each factor must be even, or 1 for a single-stream axis");
    if (c.spacing_mode == SpacingMode::Optimal && (sv % 2 != 0 || sh % 2 != 0))
        bad("ns_split", "optimal spacing needs even per-axis stream counts");
    if (c.ns != sv * sh) bad("ns", "must equal the product of ns_split");
    const std::size_t n_rx = c.rx.n_v * c.rx.n_h, n_tx = c.tx.n_v * c.tx.n_h;
    if (c.ns > std::min(c.n_rf_tx, c.n_rf_rx)) bad("ns", "exceeds the RF chain count");
    if (std::min(c.n_rf_tx, c.n_rf_rx) > std::min(n_rx, n_tx)) bad("n_rf_tx", "RF chains exceed the array size");
    if (c.schemes.empty()) bad("schemes", "must list at least one scheme");
    if (c.snr_db.empty()) bad("snr_db", "must list at least one value");
    if (c.rotation_deg.empty()) c.rotation_deg = {0.0};
    for (double s : c.aperture_scales)
        if (!(s > 0.0)) bad("aperture_scales", "scales must be positive");
    if (!(c.cluster_eps > 0.0 && c.cluster_eps < 0.5)) bad("cluster_eps", "must lie in (0, 0.5)");
    if (c.spacing_mode == SpacingMode::Explicit) {
        for (const char *side : {"tx", "rx"}) {
            const ArrayConfig &a = std::string(side) == "tx" ? c.tx : c.rx;
            if (!(a.d_v > 0.0)) bad(std::string(side) + ".d_v", "explicit spacing needs a positive value");
            if (!(a.d_h > 0.0)) bad(std::string(side) + ".d_h", "explicit spacing needs a positive value");
        }
    } else {
        if (c.tx.n_v != c.rx.n_v || c.tx.n_h != c.rx.n_h)
            bad("rx.n_v", "derived spacing modes need matching tx/rx grids");
        if (c.spacing_mode == SpacingMode::Optimal && (sv > std::min(c.tx.n_v, c.rx.n_v) || sh > std::min(c.tx.n_h, c.rx.n_h)))
            bad("ns_split", "per-axis streams exceed the array");
    }
}

} // namespace

std::string to_string(Scheme s) {
    for (const auto &e : kSchemes)
        if (e.scheme == s) return e.name;
    return "?";
}

std::string to_string(SpacingMode m) {
    switch (m) {
    case SpacingMode::Optimal: return "optimal";
    case SpacingMode::HalfWavelength: return "half-wavelength";
    case SpacingMode::Explicit: return "explicit";
    }
    return "?";
}

ConfigError::ConfigError(std::string source, int line, std::string field, const std::string &reason)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + field + ": " + reason), field_(std::move(field)),
      line_(line) {}

ScenarioConfig parse_config_text(const std::string &text, const std::string &source) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception &e) {
        throw ConfigError(source, e.mark.is_null() ? 0 : e.mark.line + 1, "<syntax>", e.msg);
    }
    Reader rd(source);
    if (!root.IsMap()) rd.fail(root, "<root>", "expected a mapping of fields");
    rd.only_keys(root, "",
                 {"frequency_ghz", "distance_m", "tx", "rx", "ns", "ns_split", "n_rf_tx", "n_rf_rx", "snr_db", "schemes",
                  "spacing_mode", "rotation_deg", "aperture_scales", "cluster_eps", "seed", "output_path"});

    ScenarioConfig c;
    c.frequency_ghz = rd.real(rd.get(root, "", "frequency_ghz", true), "frequency_ghz");
    c.distance_m = rd.real(rd.get(root, "", "distance_m", true), "distance_m");
    c.tx = read_array(rd, root, "tx");
    c.rx = read_array(rd, root, "rx");
    c.ns = rd.count(rd.get(root, "", "ns", true), "ns");

    const YAML::Node split = rd.get(root, "", "ns_split", true);
    if (!split.IsSequence() || split.size() != 2) rd.fail(split, "ns_split", "expected a pair [ns_v, ns_h]");
    c.ns_split = {rd.count(split[0], "ns_split[0]"), rd.count(split[1], "ns_split[1]")};

    c.n_rf_tx = c.n_rf_rx = c.ns;
    if (auto n = rd.get(root, "", "n_rf_tx", false); n.IsDefined()) c.n_rf_tx = rd.count(n, "n_rf_tx");
    if (auto n = rd.get(root, "", "n_rf_rx", false); n.IsDefined()) c.n_rf_rx = rd.count(n, "n_rf_rx");

    c.snr_db = rd.reals(rd.get(root, "", "snr_db", true), "snr_db");

    const YAML::Node schemes = rd.get(root, "", "schemes", true);
    if (!schemes.IsSequence()) rd.fail(schemes, "schemes", "expected a list of scheme names");
    for (std::size_t i = 0; i < schemes.size(); ++i) {
        const YAML::Node s = schemes[i];
        const std::string name = s.IsScalar() ? s.Scalar() : "";
        auto it = std::find_if(std::begin(kSchemes), std::end(kSchemes), [&](const SchemeName &e) { return name == e.name; });
        if (it == std::end(kSchemes)) rd.fail(s, "schemes[" + std::to_string(i) + "]", "unknown scheme '" + name + "'");
        if (std::find(c.schemes.begin(), c.schemes.end(), it->scheme) != c.schemes.end())
            rd.fail(s, "schemes[" + std::to_string(i) + "]", "duplicate scheme '" + name + "'");
        c.schemes.push_back(it->scheme);
    }

    if (auto n = rd.get(root, "", "spacing_mode", false); n.IsDefined()) {
        const std::string s = n.IsScalar() ? n.Scalar() : "";
        if (s == "optimal")
            c.spacing_mode = SpacingMode::Optimal;
        else if (s == "half-wavelength")
            c.spacing_mode = SpacingMode::HalfWavelength;
        else if (s == "explicit")
            c.spacing_mode = SpacingMode::Explicit;
        else
            rd.fail(n, "spacing_mode", "expected optimal, half-wavelength or explicit");
    }
    if (auto n = rd.get(root, "", "rotation_deg", false); n.IsDefined()) c.rotation_deg = rd.reals(n, "rotation_deg");
    if (auto n = rd.get(root, "", "aperture_scales", false); n.IsDefined())
        c.aperture_scales = rd.reals(n, "aperture_scales");
    if (auto n = rd.get(root, "", "cluster_eps", false); n.IsDefined()) c.cluster_eps = rd.real(n, "cluster_eps");
    if (auto n = rd.get(root, "", "seed", false); n.IsDefined()) {
        long long v = 0;
        if (!n.IsScalar() || !YAML::convert<long long>::decode(n, v)) rd.fail(n, "seed", "expected an integer");
        c.seed = v;
    }
    if (auto n = rd.get(root, "", "output_path", false); n.IsDefined()) {
        if (!n.IsScalar()) rd.fail(n, "output_path", "expected a path string");
        c.output_path = n.Scalar();
    }

    validate(rd, c);
    std::sort(c.snr_db.begin(), c.snr_db.end());
    std::sort(c.rotation_deg.begin(), c.rotation_deg.end());
    return c;
}

ScenarioConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, 0, "<file>", "cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

} // namespace losmimo::harness
