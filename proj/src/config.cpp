// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#include "fitcheck/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fitcheck/error.hpp"
#include "fitcheck/io.hpp"

namespace fitcheck {

namespace {

using nlohmann::json;

void require(bool ok, const char* field, const std::string& why) {
    if (!ok) {
        throw std::invalid_argument(std::string("config field '") + field + "': " + why);
    }
}

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

template <typename T>
void read_field(const json& doc, const char* key, T& out) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        return;
    }
    if constexpr (std::is_same_v<T, int>) {
        if (!it->is_number_integer()) {
            throw std::invalid_argument(std::string("config field '") + key + "': expected integer");
        }
        out = it->get<int>();
    } else {
        if (!it->is_number()) {
            throw std::invalid_argument(std::string("config field '") + key + "': expected number");
        }
        out = it->get<double>();
    }
}

json to_json(const PipelineConfig& c) {
    return json{
        {"content_frames_T", c.content_frames_T},
        {"overlap_frames", c.overlap_frames},
        {"guidance_scale", c.guidance_scale},
        {"denoise_steps", c.denoise_steps},
        {"alpha_motion", c.alpha_motion},
        {"frame_width", c.frame_width},
        {"frame_height", c.frame_height},
        {"loss_weight_beta", c.loss_weight_beta},
        {"dropout_prob", c.dropout_prob},
        {"augment_prob", c.augment_prob},
        {"finetune_front_gt_prob", c.finetune_front_gt_prob},
        {"window_policy_probs", c.window_policy_probs},
    };
}

PipelineConfig from_json(const json& doc) {
    if (!doc.is_object()) {
        throw DataError("config document must be a JSON object");
    }
    const auto& names = config_field_names();
    for (const auto& [key, value] : doc.items()) {
        if (std::find(names.begin(), names.end(), key) == names.end()) {
            throw std::invalid_argument("unknown config field '" + key + "'");
        }
    }

    PipelineConfig c;
    read_field(doc, "content_frames_T", c.content_frames_T);
    read_field(doc, "overlap_frames", c.overlap_frames);
    read_field(doc, "guidance_scale", c.guidance_scale);
    read_field(doc, "denoise_steps", c.denoise_steps);
    read_field(doc, "alpha_motion", c.alpha_motion);
    read_field(doc, "frame_width", c.frame_width);
    read_field(doc, "frame_height", c.frame_height);
    read_field(doc, "loss_weight_beta", c.loss_weight_beta);
    read_field(doc, "dropout_prob", c.dropout_prob);
    read_field(doc, "augment_prob", c.augment_prob);
    read_field(doc, "finetune_front_gt_prob", c.finetune_front_gt_prob);
    if (auto it = doc.find("window_policy_probs"); it != doc.end()) {
        if (!it->is_array() || it->size() != 3) {
            throw std::invalid_argument("config field 'window_policy_probs': expected array of 3 numbers");
        }
        for (std::size_t i = 0; i < 3; ++i) {
            if (!(*it)[i].is_number()) {
                throw std::invalid_argument("config field 'window_policy_probs': expected array of 3 numbers");
            }
            c.window_policy_probs[i] = (*it)[i].get<double>();
        }
    }
    validate(c);
    return c;
}

}  // namespace

const std::vector<std::string>& config_field_names() {
    static const std::vector<std::string> names = {
        "content_frames_T", "overlap_frames",   "guidance_scale", "denoise_steps",
        "alpha_motion",     "frame_width",      "frame_height",   "loss_weight_beta",
        "dropout_prob",     "augment_prob",     "finetune_front_gt_prob",
        "window_policy_probs",
    };
    return names;
}

void validate(const PipelineConfig& c) {
    require(c.content_frames_T > 0, "content_frames_T", "must be positive");
    require(c.overlap_frames >= 0, "overlap_frames", "must be non-negative");
    require(c.overlap_frames < c.content_frames_T + 2, "overlap_frames",
            "must be less than content_frames_T + 2");
    require(std::isfinite(c.guidance_scale) && c.guidance_scale > 0.0, "guidance_scale", "must be positive");
    require(c.denoise_steps > 0, "denoise_steps", "must be positive");
    require(std::isfinite(c.alpha_motion) && c.alpha_motion >= 0.0, "alpha_motion", "must be non-negative");
    require(c.frame_width > 0, "frame_width", "must be positive");
    require(c.frame_height > 0, "frame_height", "must be positive");
    require(std::isfinite(c.loss_weight_beta) && c.loss_weight_beta >= 1.0, "loss_weight_beta",
            "must be >= 1");
    require(is_probability(c.dropout_prob), "dropout_prob", "must lie in [0, 1]");
    require(is_probability(c.augment_prob), "augment_prob", "must lie in [0, 1]");
    require(is_probability(c.finetune_front_gt_prob), "finetune_front_gt_prob", "must lie in [0, 1]");
    double sum = 0.0;
    for (double p : c.window_policy_probs) {
        require(is_probability(p), "window_policy_probs", "each entry must lie in [0, 1]");
        sum += p;
    }
    require(std::abs(sum - 1.0) <= 1e-9, "window_policy_probs", "must sum to 1");
}

PipelineConfig load_config(std::string_view document) {
    std::string text(document);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        return PipelineConfig{};
    }
    return from_json(parse_json(text, "<config>"));
}

PipelineConfig load_config_file(const std::string& path) {
    std::string text = read_text_file(path);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        return PipelineConfig{};
    }
    return from_json(parse_json(text, path));
}

std::string serialize(const PipelineConfig& config) { return to_json(config).dump(2); }

void apply_override(PipelineConfig& config, std::string_view field, std::string_view value) {
    json doc = to_json(config);
    json parsed;
    std::string text(value);
    if (field == "window_policy_probs" && !text.empty() && text.front() != '[') {
        text = "[" + text + "]";
    }
    try {
        parsed = json::parse(text);
    } catch (const json::parse_error&) {
        throw std::invalid_argument("config field '" + std::string(field) + "': cannot parse '" +
                                    std::string(value) + "'");
    }
    doc[std::string(field)] = parsed;
    config = from_json(doc);
}

}  // namespace fitcheck
