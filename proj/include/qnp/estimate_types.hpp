// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qnp {

enum class Method { qec, dq };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct CurvePoint {
    double t;      // seconds
    double value;
    double sigma;  // per-point measurement uncertainty, >= 0
};

struct CurveMeta {
    std::vector<double> gamma;     // rates used to generate the curve
    std::optional<double> c_true;  // injected correlation factor, if synthetic
    std::uint64_t seed = 0;
    double noise_sigma = 0.0;
};

// Ordered (t, value, sigma) samples; the object experiments emit and the
// fitter consumes.
class DecayCurve {
public:
    DecayCurve(Method method, std::vector<CurvePoint> points,
               CurveMeta meta = {});

    /// Sorts by t first, then applies the invariants.
    static DecayCurve from_unsorted(Method method,
                                    std::vector<CurvePoint> points,
                                    CurveMeta meta = {});

    Method method() const { return method_; }
    const std::vector<CurvePoint>& points() const { return points_; }
    const CurveMeta& meta() const { return meta_; }
    CurveMeta& meta() { return meta_; }
    std::size_t size() const { return points_.size(); }

private:
    Method method_;
    std::vector<CurvePoint> points_;
    CurveMeta meta_;
};

struct FitResult {
    double c_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double residual_rms = 0.0;
    int n_bootstrap = 0;
    bool clamped = false;  // minimum sits on a boundary of [0, 1]
};

}  // namespace qnp
