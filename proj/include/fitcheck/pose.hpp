// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace fitcheck {

struct Keypoint {
    double x = 0.0;
    double y = 0.0;
    double confidence = 0.0;

    bool operator==(const Keypoint&) const = default;
};

inline constexpr std::size_t kDwposeKeypointCount = 133;

/// Per-frame 2D keypoints in image space (y grows downwards).
struct PoseSequence {
    std::size_t keypoint_count = kDwposeKeypointCount;
    std::array<double, 2> frame_size{576.0, 1024.0};  // width, height
    std::vector<std::size_t> foot_indices;
    std::vector<std::vector<Keypoint>> frames;

    void validate() const;
    bool operator==(const PoseSequence&) const = default;
};

struct GroundSpec {
    double ground_y = 0.0;           // image-space y of the contact line
    double target_height_frac = 0.6; // subject height / frame height
    double center_x = 0.0;
};

inline constexpr double kDefaultConfThreshold = 0.3;

struct GroundedPose {
    PoseSequence poses;
    double scale = 1.0;
    std::array<double, 2> translation{0.0, 0.0};
};

/// Applies one similarity transform p' = s * p + t to every keypoint of
/// every frame. s maps the median per-frame body height (vertical extent
/// of confident keypoints) to target_height_frac * frame height; t puts
/// the lowest confident foot of the whole sequence on ground_y and the
/// mean confident x on center_x.
///
/// Throws std::invalid_argument if no foot keypoint reaches the threshold
/// or the median body height is zero.
GroundedPose ground_pose_sequence(const PoseSequence& poses, const GroundSpec& spec,
                                  double conf_threshold = kDefaultConfThreshold);

}  // namespace fitcheck
