// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fitcheck/fusion.hpp"
#include "fitcheck/imu.hpp"
#include "fitcheck/pose.hpp"
#include "fitcheck/retrieval.hpp"

// File formats. Every reader throws DataError naming the file and, where
// possible, the 1-based line of the problem.
namespace fitcheck {

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Parses JSON, converting parser byte offsets into line numbers.
nlohmann::json parse_json(const std::string& text, const std::string& source);
nlohmann::json read_json_file(const std::filesystem::path& path);

/// IMU log: JSON lines of {"t", "ax", "ay", "az", "yaw"}. Blank lines are skipped.
ImuRecording parse_imu_log(const std::string& text, const std::string& source);
ImuRecording read_imu_log(const std::filesystem::path& path);
std::string format_imu_log(const ImuRecording& rec);

/// Signature: {"yaw": [...], "translation": [[x,y,z], ...], "sample_rate": hz}.
nlohmann::json signature_to_json(const MotionSignature& sig);
MotionSignature signature_from_json(const nlohmann::json& doc, const std::string& source);

/// Motion DB: array of {id, yaw, translation, pose_path[, ground_normal]}.
/// Relative pose paths are resolved against the database's directory.
std::vector<MotionEntry> read_motion_db(const std::filesystem::path& path);
std::vector<MotionEntry> motion_db_from_json(const nlohmann::json& doc, const std::string& source,
                                             const std::filesystem::path& base_dir = {});

/// Background DB: array of {id, image_path, normal[, ground_y, center_x]}.
std::vector<BackgroundEntry> read_background_db(const std::filesystem::path& path);
std::vector<BackgroundEntry> background_db_from_json(const nlohmann::json& doc, const std::string& source,
                                                     const std::filesystem::path& base_dir = {});

/// Pose: {keypoint_count, frame_size: [w, h], foot_indices: [...], frames: [[[x, y, c], ...], ...]}.
nlohmann::json pose_to_json(const PoseSequence& poses);
PoseSequence pose_from_json(const nlohmann::json& doc, const std::string& source);
PoseSequence read_pose(const std::filesystem::path& path);

nlohmann::json plan_to_json(const FusionPlan& plan);

nlohmann::json ranked_to_json(const std::vector<RankedResult>& results);

}  // namespace fitcheck
