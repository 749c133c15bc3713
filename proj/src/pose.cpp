// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#include "fitcheck/pose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fitcheck {

void PoseSequence::validate() const {
    if (!(frame_size[0] > 0.0) || !(frame_size[1] > 0.0)) {
        throw std::invalid_argument("pose frame_size must be positive");
    }
    for (std::size_t idx : foot_indices) {
        if (idx >= keypoint_count) {
            throw std::invalid_argument("foot index " + std::to_string(idx) + " outside keypoint range");
        }
    }
    for (std::size_t f = 0; f < frames.size(); ++f) {
        if (frames[f].size() != keypoint_count) {
            throw std::invalid_argument("pose frame " + std::to_string(f) + " has " +
                                        std::to_string(frames[f].size()) + " keypoints, expected " +
                                        std::to_string(keypoint_count));
        }
        for (const auto& kp : frames[f]) {
            if (!std::isfinite(kp.x) || !std::isfinite(kp.y) || !(kp.confidence >= 0.0 && kp.confidence <= 1.0)) {
                throw std::invalid_argument("pose frame " + std::to_string(f) + " has an invalid keypoint");
            }
        }
    }
}

namespace {

double median(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) return upper;
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

}  // namespace

GroundedPose ground_pose_sequence(const PoseSequence& poses, const GroundSpec& spec, double conf_threshold) {
    poses.validate();
    const double frame_h = poses.frame_size[1];
    if (!(spec.ground_y >= 0.0 && spec.ground_y <= frame_h)) {
        throw std::invalid_argument("ground_y must lie within the frame height");
    }
    if (!(spec.target_height_frac > 0.0 && spec.target_height_frac <= 1.0)) {
        throw std::invalid_argument("target_height_frac must lie in (0, 1]");
    }

    double max_foot_y = -std::numeric_limits<double>::infinity();
    bool any_foot = false;
    double sum_x = 0.0;
    std::size_t count_x = 0;
    std::vector<double> heights;

    for (const auto& frame : poses.frames) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const auto& kp : frame) {
            if (kp.confidence < conf_threshold) continue;
            lo = std::min(lo, kp.y);
            hi = std::max(hi, kp.y);
            sum_x += kp.x;
            ++count_x;
        }
        if (hi >= lo) heights.push_back(hi - lo);
        for (std::size_t idx : poses.foot_indices) {
            const auto& kp = frame[idx];
            if (kp.confidence >= conf_threshold) {
                any_foot = true;
                max_foot_y = std::max(max_foot_y, kp.y);
            }
        }
    }
    if (!any_foot) {
        throw std::invalid_argument("no foot keypoint reaches the confidence threshold");
    }

    const double body_height = median(heights);
    if (!(body_height > 0.0)) {
        throw std::invalid_argument("median body height is zero");
    }

    GroundedPose out;
    out.scale = spec.target_height_frac * frame_h / body_height;
    const double mean_x = sum_x / static_cast<double>(count_x);
    out.translation = {spec.center_x - out.scale * mean_x, spec.ground_y - out.scale * max_foot_y};

    out.poses = poses;
    for (auto& frame : out.poses.frames) {
        for (auto& kp : frame) {
            kp.x = out.scale * kp.x + out.translation[0];
            kp.y = out.scale * kp.y + out.translation[1];
        }
    }
    return out;
}

}  // namespace fitcheck
