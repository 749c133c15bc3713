// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#include "fitcheck/fusion.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fitcheck {

FusionPlan plan_segments(std::size_t n, std::size_t t, std::size_t overlap) {
    if (t == 0) {
        throw std::invalid_argument("plan_segments: T must be positive");
    }
    if (overlap >= t) {
        throw std::invalid_argument("plan_segments: overlap must be less than T");
    }
    if (n < t) {
        throw std::invalid_argument("plan_segments: N must be at least T");
    }
    FusionPlan plan;
    plan.total_content_frames = n;
    plan.segment_content_len = t;
    plan.overlap = overlap;

    const std::size_t stride = t - overlap;
    std::size_t start = 0;
    plan.segments.push_back({start});
    while (start + t < n) {
        start = std::min(start + stride, n - t);
        plan.segments.push_back({start});
    }
    return plan;
}

FusionPlan fusion_weights(FusionPlan plan) {
    if (plan.segments.empty()) {
        throw std::invalid_argument("fusion_weights: plan has no segments");
    }
    const std::size_t n = plan.total_content_frames;
    const std::size_t t = plan.segment_content_len;
    plan.weights.assign(n, {});
    for (std::size_t s = 0; s < plan.segments.size(); ++s) {
        const std::size_t start = plan.segments[s].start;
        for (std::size_t p = 0; p < t; ++p) {
            const double raw = static_cast<double>(std::min(p + 1, t - p));
            plan.weights.at(start + p).push_back({s, raw});
        }
    }
    for (std::size_t f = 0; f < n; ++f) {
        auto& list = plan.weights[f];
        if (list.empty()) {
            throw std::logic_error("fusion_weights: frame " + std::to_string(f) + " is not covered");
        }
        double total = 0.0;
        for (const auto& fw : list) total += fw.weight;
        for (auto& fw : list) fw.weight /= total;
    }
    return plan;
}

FeatureMap fuse(const std::vector<LatentSegment>& segments, const FusionPlan& plan) {
    const std::size_t n = plan.total_content_frames;
    const std::size_t t = plan.segment_content_len;
    if (segments.size() != plan.segments.size()) {
        throw std::invalid_argument("fuse: expected " + std::to_string(plan.segments.size()) +
                                    " segments, got " + std::to_string(segments.size()));
    }
    if (plan.weights.size() != n) {
        throw std::invalid_argument("fuse: plan has no weights; run fusion_weights first");
    }

    // Index segments by segment_index so callers may hand them over in any order.
    std::vector<const LatentSegment*> by_index(segments.size(), nullptr);
    for (const auto& seg : segments) {
        if (seg.segment_index >= segments.size() || by_index[seg.segment_index] != nullptr) {
            throw std::invalid_argument("fuse: segment indices must be a permutation of the plan's");
        }
        if (seg.frames.frames() != t + 2) {
            throw std::invalid_argument("fuse: segment " + std::to_string(seg.segment_index) + " has " +
                                        std::to_string(seg.frames.frames()) + " frames, expected " +
                                        std::to_string(t + 2));
        }
        if (!seg.frames.same_spatial_shape(segments.front().frames)) {
            throw std::invalid_argument("fuse: segments differ in latent shape");
        }
        by_index[seg.segment_index] = &seg;
    }

    const FeatureMap& shape = segments.front().frames;
    FeatureMap out(n, shape.height(), shape.width(), shape.channels());
    for (std::size_t f = 0; f < n; ++f) {
        auto dst = out.frame_data(f);
        for (const auto& fw : plan.weights[f]) {
            const LatentSegment& seg = *by_index[fw.segment];
            const std::size_t local = f - plan.segments[fw.segment].start;
            const auto src = seg.frames.frame_data(local + 2);
            for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += fw.weight * src[i];
        }
    }
    return out;
}

}  // namespace fitcheck
