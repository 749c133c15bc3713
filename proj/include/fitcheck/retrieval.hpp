// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fitcheck/dtw.hpp"
#include "fitcheck/imu.hpp"
#include "fitcheck/vec3.hpp"

namespace fitcheck {

struct MotionEntry {
    std::string id;
    MotionSignature signature;
    std::string pose_path;
    /// Ground normal of the background the motion was captured against,
    /// when the database provides it.
    std::optional<Vec3> ground_normal;
};

struct BackgroundEntry {
    std::string id;
    std::string image_path;
    Vec3 ground_normal{};
    /// Optional image-space ground line and subject centre for grounding.
    std::optional<double> ground_y;
    std::optional<double> center_x;
};

struct RankedResult {
    std::string id;
    double score = 0.0;

    bool operator==(const RankedResult&) const = default;
};

/// Ascending score, ties broken by id.
bool ranks_before(const RankedResult& a, const RankedResult& b);

/// Sorts and truncates to the first k results.
std::vector<RankedResult> top_k(std::vector<RankedResult> scored, std::size_t k);

struct RetrievalOptions {
    DtwOptions dtw;
    /// Worker threads for per-candidate DTW. 0 picks hardware concurrency.
    /// The result does not depend on this value.
    unsigned threads = 1;
};

/// Throws std::invalid_argument on an empty database, k == 0, or duplicate ids.
std::vector<RankedResult> retrieve_motions(std::span<const MotionEntry> db, const MotionSignature& query,
                                           std::size_t k, double alpha, const RetrievalOptions& opts = {});

/// Angle between two unit normals in degrees, in [0, 180].
double normal_angle(const Vec3& n1, const Vec3& n2);

bool is_unit(const Vec3& n, double tol = 1e-6);

std::vector<RankedResult> retrieve_backgrounds(std::span<const BackgroundEntry> db, const Vec3& reference_normal,
                                               std::size_t k);

enum class Orientation { Front, Back, Other };

/// Front for yaw in [330, 360) or [0, 30]; Back for [150, 210]; else Other.
/// Bounds are inclusive. Throws std::invalid_argument outside [0, 360).
Orientation classify_orientation(double yaw);

const char* to_string(Orientation o);

}  // namespace fitcheck
