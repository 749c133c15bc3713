// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "fitcheck/feature_map.hpp"

namespace fitcheck {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Single-head projection weights. scale defaults to 1/sqrt(C).
struct AttentionWeights {
    Matrix wq;
    Matrix wk;
    Matrix wv;
    double scale = 0.0;

    static AttentionWeights with_default_scale(Matrix wq, Matrix wk, Matrix wv);

    std::size_t channels() const noexcept { return static_cast<std::size_t>(wq.rows()); }
    void validate() const;
};

/// Row-stochastic attention matrix softmax(Q K^T * scale), max-subtracted.
Matrix attention_probabilities(const Matrix& tokens, const AttentionWeights& w);

/// softmax(Q K^T * scale) V with Q = X wq, K = X wk, V = X wv.
Matrix self_attention(const Matrix& tokens, const AttentionWeights& w);

/// Widens every frame to 3W: frame 1 -> [x1, x1, x1], frame 2 -> [x2, x2, x2],
/// frame i >= 3 -> [xi, x1, x2]. Needs at least three frames.
FeatureMap build_mra_inputs(const FeatureMap& x);

/// Self-attention over each widened frame (H * 3W tokens), keeping the
/// first W columns, so the output shape equals the input shape.
FeatureMap multi_reference_attention(const FeatureMap& x, const AttentionWeights& w);

}  // namespace fitcheck
