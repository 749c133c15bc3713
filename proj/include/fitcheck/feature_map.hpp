// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fitcheck {

/// Dense (frames, height, width, channels) block of activations, stored
/// row-major with channels fastest. Spatial dimensions are at least 1;
/// a map may hold zero frames.
class FeatureMap {
public:
    FeatureMap() = default;
    FeatureMap(std::size_t frames, std::size_t height, std::size_t width, std::size_t channels,
               double fill = 0.0);

    std::size_t frames() const noexcept { return frames_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t channels() const noexcept { return channels_; }
    std::size_t frame_stride() const noexcept { return height_ * width_ * channels_; }

    double& at(std::size_t f, std::size_t r, std::size_t c, std::size_t ch) {
        return data_[((f * height_ + r) * width_ + c) * channels_ + ch];
    }
    double at(std::size_t f, std::size_t r, std::size_t c, std::size_t ch) const {
        return data_[((f * height_ + r) * width_ + c) * channels_ + ch];
    }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    std::span<double> frame_data(std::size_t f);
    std::span<const double> frame_data(std::size_t f) const;

    /// Copy of frames [first, first + count).
    FeatureMap slice(std::size_t first, std::size_t count) const;

    bool same_spatial_shape(const FeatureMap& other) const noexcept {
        return height_ == other.height_ && width_ == other.width_ && channels_ == other.channels_;
    }

    bool all_finite() const;

    bool operator==(const FeatureMap&) const = default;

private:
    std::size_t frames_ = 0;
    std::size_t height_ = 1;
    std::size_t width_ = 1;
    std::size_t channels_ = 1;
    std::vector<double> data_;
};

/// Frame sequence [front, back, content...]. front and back are
/// single-frame maps; throws std::invalid_argument on a shape mismatch.
FeatureMap assemble_sequence(const FeatureMap& front, const FeatureMap& back, const FeatureMap& content);

/// Drops the two leading reference frames. Needs at least three frames.
FeatureMap discard_reference_frames(const FeatureMap& video);

template <typename Frame>
std::vector<Frame> discard_reference_frames(const std::vector<Frame>& video) {
    if (video.size() < 3) {
        throw std::invalid_argument("discard_reference_frames: need at least 3 frames");
    }
    return {video.begin() + 2, video.end()};
}

}  // namespace fitcheck
