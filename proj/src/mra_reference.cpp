// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#include "fitcheck/mra_reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fitcheck::reference {

namespace {

using Grid = std::vector<std::vector<std::vector<double>>>;  // [row][col][channel]

Grid frame_grid(const FeatureMap& x, std::size_t f) {
    Grid g(x.height(), std::vector<std::vector<double>>(x.width(), std::vector<double>(x.channels())));
    for (std::size_t r = 0; r < x.height(); ++r)
        for (std::size_t c = 0; c < x.width(); ++c)
            for (std::size_t ch = 0; ch < x.channels(); ++ch) g[r][c][ch] = x.at(f, r, c, ch);
    return g;
}

Grid concat_width(const Grid& a, const Grid& b, const Grid& c) {
    Grid out = a;
    for (std::size_t r = 0; r < out.size(); ++r) {
        out[r].insert(out[r].end(), b[r].begin(), b[r].end());
        out[r].insert(out[r].end(), c[r].begin(), c[r].end());
    }
    return out;
}

std::vector<double> project(const std::vector<double>& token, const Matrix& w) {
    std::vector<double> out(token.size(), 0.0);
    for (std::size_t j = 0; j < token.size(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < token.size(); ++i) {
            acc += token[i] * w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
        out[j] = acc;
    }
    return out;
}

}  // namespace

FeatureMap multi_reference_attention(const FeatureMap& x, const AttentionWeights& w) {
    if (x.frames() < 3) {
        throw std::invalid_argument("reference MRA: need at least 3 frames");
    }
    const std::size_t H = x.height(), W = x.width(), C = x.channels();
    const Grid front = frame_grid(x, 0);
    const Grid back = frame_grid(x, 1);

    FeatureMap out(x.frames(), H, W, C);
    for (std::size_t f = 0; f < x.frames(); ++f) {
        const Grid self = frame_grid(x, f);
        Grid wide;
        if (f == 0) {
            wide = concat_width(self, front, front);
        } else if (f == 1) {
            wide = concat_width(self, back, back);
        } else {
            wide = concat_width(self, front, back);
        }

        std::vector<std::vector<double>> tokens;
        for (const auto& row : wide)
            for (const auto& cell : row) tokens.push_back(cell);

        std::vector<std::vector<double>> q, k, v;
        for (const auto& t : tokens) {
            q.push_back(project(t, w.wq));
            k.push_back(project(t, w.wk));
            v.push_back(project(t, w.wv));
        }

        const std::size_t n = tokens.size();
        for (std::size_t r = 0; r < H; ++r) {
            for (std::size_t c = 0; c < W; ++c) {
                const std::size_t qi = r * 3 * W + c;
                std::vector<double> logits(n);
                for (std::size_t j = 0; j < n; ++j) {
                    double d = 0.0;
                    for (std::size_t ch = 0; ch < C; ++ch) d += q[qi][ch] * k[j][ch];
                    logits[j] = d * w.scale;
                }
                const double peak = *std::max_element(logits.begin(), logits.end());
                double denom = 0.0;
                for (double& l : logits) {
                    l = std::exp(l - peak);
                    denom += l;
                }
                for (std::size_t ch = 0; ch < C; ++ch) {
                    double acc = 0.0;
                    for (std::size_t j = 0; j < n; ++j) acc += logits[j] / denom * v[j][ch];
                    out.at(f, r, c, ch) = acc;
                }
            }
        }
    }
    return out;
}

}  // namespace fitcheck::reference
