// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#include "qnp/curve_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qnp {

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& field, int line_no) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &pos);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": not a number: '" + field + "'");
    }
    while (pos < field.size() &&
           std::isspace(static_cast<unsigned char>(field[pos])))
        ++pos;
    if (pos != field.size())
        throw ParseError("line " + std::to_string(line_no) +
                         ": trailing junk in '" + field + "'");
    return v;
}

}  // namespace

CurveFormat format_from_name(const std::string& name) {
    if (name == "csv") return CurveFormat::csv;
    if (name == "json") return CurveFormat::json;
    throw std::invalid_argument("unknown format '" + name +
                                "' (expected csv or json)");
}

std::string format_name(CurveFormat f) {
    return f == CurveFormat::csv ? "csv" : "json";
}

std::string curve_to_csv(const DecayCurve& curve) {
    std::string out = "t_seconds,value,sigma\n";
    for (const auto& p : curve.points())
        out += fmt17(p.t) + "," + fmt17(p.value) + "," + fmt17(p.sigma) + "\n";
    return out;
}

DecayCurve curve_from_csv(const std::string& text, Method method) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::vector<CurvePoint> pts;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != "t_seconds,value,sigma")
                throw ParseError("line 1: expected header "
                                 "'t_seconds,value,sigma', got '" + line + "'");
            saw_header = true;
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(
                start, comma == std::string::npos ? comma : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 3)
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected 3 columns, got " +
                             std::to_string(fields.size()));
        pts.push_back({parse_double(fields[0], line_no),
                       parse_double(fields[1], line_no),
                       parse_double(fields[2], line_no)});
    }
    if (!saw_header) throw ParseError("empty file");
    if (pts.empty()) throw ParseError("no data rows");
    try {
        return DecayCurve(method, std::move(pts));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string curve_to_json(const DecayCurve& curve) {
    nlohmann::json j;
    j["method"] = method_name(curve.method());
    nlohmann::json meta;
    meta["gamma"] = curve.meta().gamma;
    if (curve.meta().c_true) meta["c_true"] = *curve.meta().c_true;
    meta["seed"] = curve.meta().seed;
    meta["noise_sigma"] = curve.meta().noise_sigma;
    j["metadata"] = meta;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : curve.points())
        pts.push_back({{"t", p.t}, {"value", p.value}, {"sigma", p.sigma}});
    j["points"] = pts;
    return j.dump(2) + "\n";
}

DecayCurve curve_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        const Method method = method_from_name(j.at("method"));
        CurveMeta meta;
        if (j.contains("metadata")) {
            const auto& m = j["metadata"];
            if (m.contains("gamma"))
                meta.gamma = m["gamma"].get<std::vector<double>>();
            if (m.contains("c_true")) meta.c_true = m["c_true"].get<double>();
            if (m.contains("seed")) meta.seed = m["seed"].get<std::uint64_t>();
            if (m.contains("noise_sigma"))
                meta.noise_sigma = m["noise_sigma"].get<double>();
        }
        std::vector<CurvePoint> pts;
        for (const auto& p : j.at("points"))
            pts.push_back({p.at("t").get<double>(), p.at("value").get<double>(),
                           p.at("sigma").get<double>()});
        return DecayCurve(method, std::move(pts), std::move(meta));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad curve object: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

void write_curve_file(const DecayCurve& curve,
                      const std::filesystem::path& path, CurveFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    out << (format == CurveFormat::csv ? curve_to_csv(curve)
                                       : curve_to_json(curve));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

DecayCurve read_curve_file(const std::filesystem::path& path,
                           Method fallback_method) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    if (path.extension() == ".json") return curve_from_json(buf.str());
    return curve_from_csv(buf.str(), fallback_method);
}

std::string fit_result_to_json(const FitResult& fit, Method method) {
    nlohmann::json j;
    j["method"] = method_name(method);
    j["c_hat"] = fit.c_hat;
    j["ci_low"] = fit.ci_low;
    j["ci_high"] = fit.ci_high;
    j["residual_rms"] = fit.residual_rms;
    j["n_bootstrap"] = fit.n_bootstrap;
    j["clamped"] = fit.clamped;
    return j.dump(2) + "\n";
}

}  // namespace qnp
