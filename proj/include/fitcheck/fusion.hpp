// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "fitcheck/feature_map.hpp"

namespace fitcheck {

struct Segment {
    std::size_t start = 0;  // first content frame; covers [start, start + T)

    bool operator==(const Segment&) const = default;
};

struct FrameWeight {
    std::size_t segment = 0;
    double weight = 0.0;

    bool operator==(const FrameWeight&) const = default;
};

/// Overlapping layout of T-frame content windows over N frames. Overlap
/// counts content frames only; the two reference slots of each segment
/// are not part of the layout.
struct FusionPlan {
    std::size_t total_content_frames = 0;  // N
    std::size_t segment_content_len = 0;   // T
    std::size_t overlap = 0;
    std::vector<Segment> segments;
    /// Per content frame, the covering segments (ascending) and their
    /// blend weights. Empty until fusion_weights() runs.
    std::vector<std::vector<FrameWeight>> weights;

    bool operator==(const FusionPlan&) const = default;
};

/// Starts at 0, T-o, 2(T-o), ...; a start that would run past N is clamped
/// to N-T. Throws std::invalid_argument if N < T, T == 0 or o >= T.
FusionPlan plan_segments(std::size_t n, std::size_t t, std::size_t overlap);

/// Symmetric ramp raw(p) = min(p + 1, T - p) per segment position,
/// normalised over the segments covering each frame.
FusionPlan fusion_weights(FusionPlan plan);

/// One denoised segment: 2 reference frames followed by T content frames.
struct LatentSegment {
    std::size_t segment_index = 0;
    FeatureMap frames;
};

/// Drops the reference slots and blends content frames by the plan's
/// weights, accumulating in ascending segment order. Returns N frames.
FeatureMap fuse(const std::vector<LatentSegment>& segments, const FusionPlan& plan);

}  // namespace fitcheck
