// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fitcheck/retrieval.hpp"

namespace fitcheck {

/// Reproducible random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. Its seed is SplitMix64(seed) combined with
/// SplitMix64(stream), so (seed, stream) pairs give independent streams
/// (one per data-loading worker). Distributions are implemented here
/// rather than with <random>'s, whose algorithms vary between standard
/// libraries.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    /// Child stream for worker `id`.
    SeededRng split(std::uint64_t id) const;

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform01();
    /// Uniform integer on [0, bound), unbiased. bound must be positive.
    std::uint64_t below(std::uint64_t bound);
    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct VideoMeta {
    std::vector<Orientation> labels;  // one per frame
    std::size_t frame_count() const noexcept { return labels.size(); }
};

enum class WindowMode { Random, MustFront, MustBack };

const char* to_string(WindowMode m);

struct TrainingWindow {
    std::size_t start = 0;
    WindowMode mode = WindowMode::Random;
};

/// Draws a sampling mode with `probs` (Random, MustFront, MustBack), then a
/// contiguous T-frame window start uniformly among the windows that satisfy
/// it. MustFront/MustBack fall back to Random when no window contains the
/// label; the returned mode reports the branch that was drawn.
TrainingWindow sample_training_window(const VideoMeta& meta, std::size_t t, SeededRng& rng,
                                      const std::array<double, 3>& probs = {0.2, 0.4, 0.4});

/// All window starts in [0, N - T] whose frames include `label`.
std::vector<std::size_t> qualifying_window_starts(const VideoMeta& meta, std::size_t t, Orientation label);

struct ConditioningSet {
    bool has_vae = true;
    bool has_image = true;
    bool has_pose = true;

    bool operator==(const ConditioningSet&) const = default;
};

/// Clears each present flag independently with probability p.
ConditioningSet apply_condition_dropout(ConditioningSet cond, SeededRng& rng, double p);

bool gate_augmentation(SeededRng& rng, double p = 0.5);

enum class FinetuneGt { FrontGT, BackGT };

FinetuneGt choose_finetune_gt(SeededRng& rng, double p_front = 0.8);

/// T copies of a ground-truth frame and its pose.
template <typename Frame, typename Pose>
std::pair<std::vector<Frame>, std::vector<Pose>> duplicate_gt(const Frame& frame, const Pose& pose, int t) {
    if (t < 1) {
        throw std::invalid_argument("duplicate_gt: T must be at least 1");
    }
    return {std::vector<Frame>(static_cast<std::size_t>(t), frame),
            std::vector<Pose>(static_cast<std::size_t>(t), pose)};
}

/// Per-pixel loss weight: beta inside the shadow/reflection mask, 1 elsewhere.
std::vector<std::vector<double>> weighted_loss_mask(const std::vector<std::vector<bool>>& region_mask,
                                                    double beta = 2.0);

}  // namespace fitcheck
