// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#include "qnp/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qnp {

std::vector<double> TimeGrid::points() const {
    std::vector<double> ts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        ts[static_cast<std::size_t>(i)] =
            start + (stop - start) * static_cast<double>(i) /
                        static_cast<double>(count - 1);
    return ts;
}

TimeGrid parse_time_grid(const std::string& text) {
    TimeGrid g;
    char extra = 0;
    const int n = std::sscanf(text.c_str(), "%lf:%lf:%d%c", &g.start, &g.stop,
                              &g.count, &extra);
    if (n != 3)
        throw ConfigError("time grid must be START:STOP:COUNT, got '" + text +
                          "'");
    return g;
}

std::vector<double> parse_c_list(const std::string& text) {
    std::vector<double> cs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            cs.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("bad correlation factor '" + item + "'");
        }
    }
    if (cs.empty()) throw ConfigError("empty correlation factor list");
    return cs;
}

void RunConfig::validate() const {
    if (t2_s.size() != 3)
        throw ConfigError("spin system: need exactly 3 T2 values");
    for (double t2 : t2_s)
        if (!(t2 > 0)) throw ConfigError("spin system: T2 must be positive");
    if (offsets_hz.size() != 3)
        throw ConfigError("spin system: need exactly 3 offsets");
    if (j_hz.size() != 3)
        throw ConfigError("spin system: J must be a 3x3 matrix");
    for (const auto& row : j_hz)
        if (row.size() != 3)
            throw ConfigError("spin system: J must be a 3x3 matrix");
    if (c_values.empty())
        throw ConfigError("need at least one correlation factor");
    for (double c : c_values)
        if (c < 0.0 || c > 1.0)
            throw ConfigError("correlation factors must lie in [0, 1]");
    if (grid.count < 2) throw ConfigError("time grid count must be >= 2");
    if (!(grid.stop > grid.start))
        throw ConfigError("time grid stop must exceed start");
    if (grid.start < 0) throw ConfigError("time grid start must be >= 0");
    if (noise_sigma < 0) throw ConfigError("noise sigma must be >= 0");
    if (mc_samples < 1) throw ConfigError("samples must be >= 1");
    if (output.empty()) throw ConfigError("output path must not be empty");
    try {
        if (!spin_system().weak_coupling_valid())
            throw ConfigError(
                "spin system: offsets violate the weak-coupling condition "
                "|nu_i - nu_j| > 10 |J_ij| / 2");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

Rates RunConfig::rates() const {
    return Rates::from_t2(t2_s[0], t2_s[1], t2_s[2]);
}

SpinSystem RunConfig::spin_system() const {
    Eigen::VectorXd off(3), t2(3);
    Eigen::MatrixXd j(3, 3);
    for (int i = 0; i < 3; ++i) {
        off[i] = offsets_hz[static_cast<std::size_t>(i)];
        t2[i] = t2_s[static_cast<std::size_t>(i)];
        for (int k = 0; k < 3; ++k)
            j(i, k) = j_hz[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    }
    return SpinSystem(3, std::move(off), std::move(j), std::move(t2));
}

namespace {

template <typename T>
void read_if(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    RunConfig cfg;
    try {
        if (j.contains("spin_system")) {
            const auto& s = j["spin_system"];
            read_if(s, "t2_s", cfg.t2_s);
            read_if(s, "offsets_hz", cfg.offsets_hz);
            read_if(s, "j_hz", cfg.j_hz);
        }
        if (j.contains("c")) {
            if (j["c"].is_array())
                cfg.c_values = j["c"].get<std::vector<double>>();
            else
                cfg.c_values = {j["c"].get<double>()};
        }
        if (j.contains("t_grid")) {
            const auto& g = j["t_grid"];
            read_if(g, "start", cfg.grid.start);
            read_if(g, "stop", cfg.grid.stop);
            read_if(g, "count", cfg.grid.count);
        }
        if (j.contains("method"))
            cfg.method = method_from_name(j["method"].get<std::string>());
        read_if(j, "noise_sigma", cfg.noise_sigma);
        read_if(j, "seed", cfg.seed);
        read_if(j, "samples", cfg.mc_samples);
        read_if(j, "output", cfg.output);
        if (j.contains("format"))
            cfg.format = format_from_name(j["format"].get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config field: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

}  // namespace qnp
