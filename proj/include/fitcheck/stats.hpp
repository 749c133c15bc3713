// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>

namespace fitcheck {

struct ChiSquareResult {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};

/// Pearson goodness-of-fit of category counts against expected
/// probabilities. Categories with zero expected probability must have zero
/// counts and do not add degrees of freedom.
ChiSquareResult chi_square_test(std::span<const std::size_t> counts, std::span<const double> probs);

/// Sample Pearson correlation of two equally long 0/1 sequences.
double pearson_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace fitcheck
