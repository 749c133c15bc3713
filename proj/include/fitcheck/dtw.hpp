// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>

#include "fitcheck/imu.hpp"
#include "fitcheck/vec3.hpp"

namespace fitcheck {

/// Shortest angular separation in degrees, in [0, 180]. Inputs may be
/// unwrapped; they are compared modulo 360.
double yaw_angular_cost(double a, double b);

double euclidean_cost(const Vec3& a, const Vec3& b);

struct DtwOptions {
    /// Sakoe-Chiba half-width in cells. Unset means no windowing. The band
    /// is widened to at least |len(a) - len(b)| so a path always exists.
    std::optional<std::size_t> band;
    /// Translation axes that participate in the Euclidean cost.
    std::array<bool, 3> translation_axes{true, true, true};
};

/// Raw (unnormalised) DTW with steps (1,0), (0,1), (1,1):
///   D(i,j) = cost(a_i, b_j) + min(D(i-1,j), D(i,j-1), D(i-1,j-1)).
/// Throws std::invalid_argument on an empty sequence.
double dtw_yaw(std::span<const double> a, std::span<const double> b, const DtwOptions& opts = {});
double dtw_translation(std::span<const Vec3> a, std::span<const Vec3> b, const DtwOptions& opts = {});

/// D = DTW_yaw(query, cand) + alpha * DTW_translation(query, cand).
double combined_motion_distance(const MotionSignature& query, const MotionSignature& cand, double alpha,
                                const DtwOptions& opts = {});

}  // namespace fitcheck
