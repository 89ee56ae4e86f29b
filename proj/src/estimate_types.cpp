// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#include "qnp/estimate_types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qnp {

std::string method_name(Method m) {
    return m == Method::qec ? "qec" : "dq";
}

Method method_from_name(const std::string& name) {
    if (name == "qec") return Method::qec;
    if (name == "dq") return Method::dq;
    throw std::invalid_argument("unknown method '" + name +
                                "' (expected qec or dq)");
}

DecayCurve::DecayCurve(Method method, std::vector<CurvePoint> points,
                       CurveMeta meta)
    : method_(method), points_(std::move(points)), meta_(std::move(meta)) {
    if (points_.empty())
        throw std::invalid_argument("DecayCurve: no points");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!std::isfinite(p.t) || !std::isfinite(p.value) ||
            !std::isfinite(p.sigma))
            throw std::invalid_argument("DecayCurve: non-finite entry");
        if (p.sigma < 0)
            throw std::invalid_argument("DecayCurve: negative sigma");
        if (i > 0 && points_[i - 1].t >= p.t)
            throw std::invalid_argument("DecayCurve: t must be strictly increasing");
    }
}

DecayCurve DecayCurve::from_unsorted(Method method,
                                     std::vector<CurvePoint> points,
                                     CurveMeta meta) {
    std::sort(points.begin(), points.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.t < b.t; });
    return DecayCurve(method, std::move(points), std::move(meta));
}

}  // namespace qnp
