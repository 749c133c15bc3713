// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#include "fitcheck/feature_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fitcheck {

FeatureMap::FeatureMap(std::size_t frames, std::size_t height, std::size_t width, std::size_t channels,
                       double fill)
    : frames_(frames), height_(height), width_(width), channels_(channels) {
    if (height == 0 || width == 0 || channels == 0) {
        throw std::invalid_argument("FeatureMap: height, width and channels must be at least 1");
    }
    data_.assign(frames * height * width * channels, fill);
}

std::span<double> FeatureMap::frame_data(std::size_t f) {
    return std::span<double>(data_).subspan(f * frame_stride(), frame_stride());
}

std::span<const double> FeatureMap::frame_data(std::size_t f) const {
    return std::span<const double>(data_).subspan(f * frame_stride(), frame_stride());
}

FeatureMap FeatureMap::slice(std::size_t first, std::size_t count) const {
    if (first + count > frames_) {
        throw std::out_of_range("FeatureMap::slice: frame range out of bounds");
    }
    FeatureMap out(count, height_, width_, channels_);
    const auto begin = data_.begin() + static_cast<std::ptrdiff_t>(first * frame_stride());
    std::copy(begin, begin + static_cast<std::ptrdiff_t>(count * frame_stride()), out.data_.begin());
    return out;
}

bool FeatureMap::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

FeatureMap assemble_sequence(const FeatureMap& front, const FeatureMap& back, const FeatureMap& content) {
    if (front.frames() != 1 || back.frames() != 1) {
        throw std::invalid_argument("assemble_sequence: front and back must be single frames");
    }
    if (!front.same_spatial_shape(back) || !front.same_spatial_shape(content)) {
        throw std::invalid_argument("assemble_sequence: height, width and channels must match");
    }
    FeatureMap out(content.frames() + 2, front.height(), front.width(), front.channels());
    auto dst = out.data().begin();
    dst = std::copy(front.data().begin(), front.data().end(), dst);
    dst = std::copy(back.data().begin(), back.data().end(), dst);
    std::copy(content.data().begin(), content.data().end(), dst);
    return out;
}

FeatureMap discard_reference_frames(const FeatureMap& video) {
    if (video.frames() < 3) {
        throw std::invalid_argument("discard_reference_frames: need at least 3 frames");
    }
    return video.slice(2, video.frames() - 2);
}

}  // namespace fitcheck
