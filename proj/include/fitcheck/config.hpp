// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace fitcheck {

/// Fixed hyperparameters shared by every stage of the pipeline.
///
/// Defaults are the published settings: 6 content frames per segment
/// (8 with the two reference slots), 4 overlapping frames, guidance 2,
/// 25 denoising steps, motion weight 0.1, 576x1024 frames, shadow and
/// reflection loss weight 2, and the training-time sampling probabilities.
struct PipelineConfig {
    int content_frames_T = 6;
    int overlap_frames = 4;
    double guidance_scale = 2.0;
    int denoise_steps = 25;
    double alpha_motion = 0.1;
    int frame_width = 576;
    int frame_height = 1024;
    double loss_weight_beta = 2.0;
    double dropout_prob = 0.1;
    double augment_prob = 0.5;
    double finetune_front_gt_prob = 0.8;
    std::array<double, 3> window_policy_probs{0.2, 0.4, 0.4};

    bool operator==(const PipelineConfig&) const = default;
};

// Throws std::invalid_argument naming the first offending field.
void validate(const PipelineConfig& config);

/// Parses a flat JSON object of field overrides. Absent keys keep their
/// defaults; unknown keys are rejected. Throws DataError on parse failure
/// and std::invalid_argument on an invariant violation.
PipelineConfig load_config(std::string_view document);

PipelineConfig load_config_file(const std::string& path);

std::string serialize(const PipelineConfig& config);

/// Applies a single `field=value` override, as used by same-named CLI flags.
void apply_override(PipelineConfig& config, std::string_view field, std::string_view value);

const std::vector<std::string>& config_field_names();

}  // namespace fitcheck
