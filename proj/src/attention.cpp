// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#include "fitcheck/attention.hpp"

#include <cmath>
#include <stdexcept>

namespace fitcheck {

AttentionWeights AttentionWeights::with_default_scale(Matrix wq, Matrix wk, Matrix wv) {
    AttentionWeights w{std::move(wq), std::move(wk), std::move(wv), 0.0};
    w.scale = 1.0 / std::sqrt(static_cast<double>(w.wq.rows()));
    return w;
}

void AttentionWeights::validate() const {
    const auto c = wq.rows();
    if (c == 0 || wq.cols() != c || wk.rows() != c || wk.cols() != c || wv.rows() != c || wv.cols() != c) {
        throw std::invalid_argument("attention weights must be square C x C matrices of one size");
    }
    if (!wq.allFinite() || !wk.allFinite() || !wv.allFinite() || !std::isfinite(scale)) {
        throw std::invalid_argument("attention weights must be finite");
    }
}

Matrix attention_probabilities(const Matrix& tokens, const AttentionWeights& w) {
    w.validate();
    if (tokens.rows() == 0) {
        throw std::invalid_argument("self_attention: need at least one token");
    }
    if (tokens.cols() != w.wq.rows()) {
        throw std::invalid_argument("self_attention: token width does not match weights");
    }
    const Matrix q = tokens * w.wq;
    const Matrix k = tokens * w.wk;
    Matrix logits = (q * k.transpose()) * w.scale;
    for (Eigen::Index r = 0; r < logits.rows(); ++r) {
        auto row = logits.row(r);
        row.array() -= row.maxCoeff();
        row = row.array().exp().matrix();
        row /= row.sum();
    }
    if (!logits.allFinite()) {
        throw std::overflow_error("self_attention: non-finite attention weights");
    }
    return logits;
}

Matrix self_attention(const Matrix& tokens, const AttentionWeights& w) {
    const Matrix probs = attention_probabilities(tokens, w);
    return probs * (tokens * w.wv);
}

FeatureMap build_mra_inputs(const FeatureMap& x) {
    if (x.frames() < 3) {
        throw std::invalid_argument("build_mra_inputs: need at least 3 frames");
    }
    const std::size_t h = x.height(), wd = x.width(), c = x.channels();
    FeatureMap out(x.frames(), h, 3 * wd, c);
    for (std::size_t f = 0; f < x.frames(); ++f) {
        // Source frame for each of the three width blocks.
        const std::size_t left = f == 1 ? 1 : 0;
        const std::size_t right = f == 0 ? 0 : 1;
        const std::size_t sources[3] = {f, left, right};
        for (std::size_t r = 0; r < h; ++r) {
            for (std::size_t block = 0; block < 3; ++block) {
                for (std::size_t col = 0; col < wd; ++col) {
                    for (std::size_t ch = 0; ch < c; ++ch) {
                        out.at(f, r, block * wd + col, ch) = x.at(sources[block], r, col, ch);
                    }
                }
            }
        }
    }
    return out;
}

FeatureMap multi_reference_attention(const FeatureMap& x, const AttentionWeights& w) {
    w.validate();
    if (x.channels() != w.channels()) {
        throw std::invalid_argument("multi_reference_attention: channel count does not match weights");
    }
    const FeatureMap wide = build_mra_inputs(x);
    const std::size_t h = x.height(), wd = x.width(), c = x.channels();
    const auto tokens_per_frame = static_cast<Eigen::Index>(h * 3 * wd);

    FeatureMap out(x.frames(), h, wd, c);
    for (std::size_t f = 0; f < x.frames(); ++f) {
        const auto src = wide.frame_data(f);
        const Eigen::Map<const Matrix> tokens(src.data(), tokens_per_frame, static_cast<Eigen::Index>(c));
        const Matrix attended = self_attention(tokens, w);
        for (std::size_t r = 0; r < h; ++r) {
            for (std::size_t col = 0; col < wd; ++col) {
                const auto token = static_cast<Eigen::Index>(r * 3 * wd + col);
                for (std::size_t ch = 0; ch < c; ++ch) {
                    out.at(f, r, col, ch) = attended(token, static_cast<Eigen::Index>(ch));
                }
            }
        }
    }
    return out;
}

}  // namespace fitcheck
