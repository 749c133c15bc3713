// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fitcheck/attention.hpp"
#include "fitcheck/feature_map.hpp"

namespace fitcheck::reference {

// Plain-loop multi-reference attention used as an equivalence oracle by
// the tests and `fitcheck mra-demo`. Shares no code with the Eigen path:
// it materialises the 3W map with its own indexing and computes attention
// one query row at a time.
FeatureMap multi_reference_attention(const FeatureMap& x, const AttentionWeights& w);

}  // namespace fitcheck::reference
