// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#include "fitcheck/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fitcheck {

double yaw_angular_cost(double a, double b) {
    const double d = std::fmod(std::abs(a - b), 360.0);
    return std::min(d, 360.0 - d);
}

double euclidean_cost(const Vec3& a, const Vec3& b) { return norm(a - b); }

namespace {

// Two-row DP. `cost(i, j)` is evaluated lazily for cells inside the band.
template <typename Cost>
double dtw_dp(std::size_t n, std::size_t m, const DtwOptions& opts, Cost&& cost) {
    if (n == 0 || m == 0) {
        throw std::invalid_argument("dtw: sequences must be non-empty");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t gap = n > m ? n - m : m - n;
    const std::size_t band = opts.band ? std::max(*opts.band, gap) : std::max(n, m);

    std::vector<double> prev(m, inf);
    std::vector<double> curr(m, inf);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i > band ? i - band : 0;
        const std::size_t hi = std::min(m - 1, i + band);
        std::fill(curr.begin(), curr.end(), inf);
        for (std::size_t j = lo; j <= hi; ++j) {
            double best;
            if (i == 0 && j == 0) {
                best = 0.0;
            } else {
                best = inf;
                if (i > 0) best = std::min(best, prev[j]);
                if (j > 0) best = std::min(best, curr[j - 1]);
                if (i > 0 && j > 0) best = std::min(best, prev[j - 1]);
            }
            curr[j] = cost(i, j) + best;
        }
        std::swap(prev, curr);
    }
    return prev[m - 1];
}

}  // namespace

double dtw_yaw(std::span<const double> a, std::span<const double> b, const DtwOptions& opts) {
    return dtw_dp(a.size(), b.size(), opts,
                  [&](std::size_t i, std::size_t j) { return yaw_angular_cost(a[i], b[j]); });
}

double dtw_translation(std::span<const Vec3> a, std::span<const Vec3> b, const DtwOptions& opts) {
    const auto& axes = opts.translation_axes;
    return dtw_dp(a.size(), b.size(), opts, [&](std::size_t i, std::size_t j) {
        double sq = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
            if (axes[k]) {
                const double d = a[i][k] - b[j][k];
                sq += d * d;
            }
        }
        return std::sqrt(sq);
    });
}

double combined_motion_distance(const MotionSignature& query, const MotionSignature& cand, double alpha,
                                const DtwOptions& opts) {
    query.validate();
    cand.validate();
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("alpha must be a finite non-negative number");
    }
    const double yaw = dtw_yaw(query.yaw_seq, cand.yaw_seq, opts);
    const double trans = dtw_translation(query.translation_seq, cand.translation_seq, opts);
    return yaw + alpha * trans;
}

}  // namespace fitcheck
