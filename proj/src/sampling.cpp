// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#include "fitcheck/sampling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fitcheck {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(splitmix64(seed) ^ splitmix64(~stream)) {}

SeededRng SeededRng::split(std::uint64_t id) const {
    return SeededRng(seed_, splitmix64(stream_ + 1) ^ id);
}

double SeededRng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t SeededRng::below(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("SeededRng::below: bound must be positive");
    }
    // Rejection on the top of the range keeps every residue equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

const char* to_string(WindowMode m) {
    switch (m) {
        case WindowMode::Random: return "random";
        case WindowMode::MustFront: return "must_front";
        case WindowMode::MustBack: return "must_back";
    }
    return "random";
}

std::vector<std::size_t> qualifying_window_starts(const VideoMeta& meta, std::size_t t, Orientation label) {
    const std::size_t n = meta.frame_count();
    std::vector<std::size_t> prefix(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + (meta.labels[i] == label ? 1 : 0);
    std::vector<std::size_t> starts;
    for (std::size_t s = 0; s + t <= n; ++s) {
        if (prefix[s + t] > prefix[s]) starts.push_back(s);
    }
    return starts;
}

TrainingWindow sample_training_window(const VideoMeta& meta, std::size_t t, SeededRng& rng,
                                      const std::array<double, 3>& probs) {
    if (t == 0 || meta.frame_count() < t) {
        throw std::invalid_argument("sample_training_window: video shorter than T");
    }
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_training_window: bad probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("sample_training_window: probabilities must sum to 1");
    }

    const double u = rng.uniform01();
    WindowMode mode = WindowMode::MustBack;
    if (u < probs[0]) {
        mode = WindowMode::Random;
    } else if (u < probs[0] + probs[1]) {
        mode = WindowMode::MustFront;
    }
    // u < 1 always, so MustBack absorbs rounding when probs[2] > 0.
    if (mode == WindowMode::MustBack && probs[2] == 0.0) {
        mode = probs[1] > 0.0 ? WindowMode::MustFront : WindowMode::Random;
    }

    const std::size_t windows = meta.frame_count() - t + 1;
    if (mode != WindowMode::Random) {
        const auto label = mode == WindowMode::MustFront ? Orientation::Front : Orientation::Back;
        const auto starts = qualifying_window_starts(meta, t, label);
        if (!starts.empty()) {
            return {starts[rng.below(starts.size())], mode};
        }
    }
    return {static_cast<std::size_t>(rng.below(windows)), mode};
}

ConditioningSet apply_condition_dropout(ConditioningSet cond, SeededRng& rng, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("apply_condition_dropout: p must lie in [0, 1]");
    }
    // One draw per feature regardless of its current state keeps the
    // stream position independent of the input.
    if (rng.bernoulli(p)) cond.has_vae = false;
    if (rng.bernoulli(p)) cond.has_image = false;
    if (rng.bernoulli(p)) cond.has_pose = false;
    return cond;
}

bool gate_augmentation(SeededRng& rng, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("gate_augmentation: p must lie in [0, 1]");
    }
    return rng.bernoulli(p);
}

FinetuneGt choose_finetune_gt(SeededRng& rng, double p_front) {
    if (!(p_front >= 0.0 && p_front <= 1.0)) {
        throw std::invalid_argument("choose_finetune_gt: p_front must lie in [0, 1]");
    }
    return rng.bernoulli(p_front) ? FinetuneGt::FrontGT : FinetuneGt::BackGT;
}

std::vector<std::vector<double>> weighted_loss_mask(const std::vector<std::vector<bool>>& region_mask,
                                                    double beta) {
    if (!(beta >= 1.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("weighted_loss_mask: beta must be >= 1");
    }
    std::vector<std::vector<double>> out;
    out.reserve(region_mask.size());
    for (const auto& row : region_mask) {
        std::vector<double> weights;
        weights.reserve(row.size());
        for (bool inside : row) weights.push_back(inside ? beta : 1.0);
        out.push_back(std::move(weights));
    }
    return out;
}

}  // namespace fitcheck
