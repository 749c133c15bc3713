// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#include "fitcheck/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "fitcheck/error.hpp"

namespace fitcheck {

using nlohmann::json;
namespace fs = std::filesystem;

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError(path.string(), 0, "cannot open file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError(path.string(), 0, "cannot open file for writing");
    }
    out << text;
}

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
        throw DataError(source, line, "invalid JSON");
    }
}

json read_json_file(const fs::path& path) { return parse_json(read_text_file(path), path.string()); }

namespace {

double number_field(const json& obj, const char* key, const std::string& source, std::size_t line,
                    const std::string& where = {}) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) {
        throw DataError(source, line, where + "missing or non-numeric field '" + key + "'");
    }
    return it->get<double>();
}

std::string string_field(const json& obj, const char* key, const std::string& source, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
        throw DataError(source, 0, where + "missing or non-string field '" + key + "'");
    }
    return it->get<std::string>();
}

Vec3 vec3_from(const json& v, const std::string& source, const std::string& where) {
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number()) {
        throw DataError(source, 0, where + "expected a 3-vector");
    }
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

std::string entry_label(std::size_t i) { return "entry " + std::to_string(i) + ": "; }

std::string resolve(const fs::path& base_dir, const std::string& p) {
    const fs::path path(p);
    if (path.is_absolute() || base_dir.empty()) return path.lexically_normal().string();
    return (base_dir / path).lexically_normal().string();
}

}  // namespace

ImuRecording parse_imu_log(const std::string& text, const std::string& source) {
    std::vector<ImuSample> samples;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error&) {
            throw DataError(source, line_no, "invalid JSON");
        }
        if (!obj.is_object()) {
            throw DataError(source, line_no, "expected a JSON object");
        }
        ImuSample s;
        s.t = number_field(obj, "t", source, line_no);
        s.accel = {number_field(obj, "ax", source, line_no), number_field(obj, "ay", source, line_no),
                   number_field(obj, "az", source, line_no)};
        s.yaw = number_field(obj, "yaw", source, line_no);
        if (!samples.empty() && !(s.t > samples.back().t)) {
            throw DataError(source, line_no, "timestamp does not increase");
        }
        if (!(s.yaw >= 0.0 && s.yaw < 360.0)) {
            throw DataError(source, line_no, "yaw outside [0, 360)");
        }
        samples.push_back(s);
    }
    if (samples.size() < 2) {
        throw DataError(source, 0, "IMU log needs at least 2 samples");
    }
    try {
        return ImuRecording(std::move(samples));
    } catch (const std::invalid_argument& e) {
        throw DataError(source, 0, e.what());
    }
}

ImuRecording read_imu_log(const fs::path& path) { return parse_imu_log(read_text_file(path), path.string()); }

std::string format_imu_log(const ImuRecording& rec) {
    std::string out;
    for (const auto& s : rec.samples()) {
        json obj{{"t", s.t}, {"ax", s.accel[0]}, {"ay", s.accel[1]}, {"az", s.accel[2]}, {"yaw", s.yaw}};
        out += obj.dump();
        out += '\n';
    }
    return out;
}

json signature_to_json(const MotionSignature& sig) {
    return json{{"yaw", sig.yaw_seq}, {"translation", sig.translation_seq}, {"sample_rate", sig.sample_rate}};
}

namespace {

MotionSignature signature_fields(const json& doc, const std::string& source, const std::string& where) {
    if (!doc.is_object()) {
        throw DataError(source, 0, where + "expected a JSON object");
    }
    MotionSignature sig;
    auto yaw = doc.find("yaw");
    auto trans = doc.find("translation");
    if (yaw == doc.end() || !yaw->is_array() || trans == doc.end() || !trans->is_array()) {
        throw DataError(source, 0, where + "'yaw' and 'translation' arrays are required");
    }
    for (const auto& v : *yaw) {
        if (!v.is_number()) throw DataError(source, 0, where + "non-numeric yaw value");
        sig.yaw_seq.push_back(v.get<double>());
    }
    for (const auto& v : *trans) sig.translation_seq.push_back(vec3_from(v, source, where + "translation: "));
    if (auto rate = doc.find("sample_rate"); rate != doc.end() && rate->is_number()) {
        sig.sample_rate = rate->get<double>();
    }
    try {
        sig.validate();
    } catch (const std::invalid_argument& e) {
        throw DataError(source, 0, where + e.what());
    }
    return sig;
}

}  // namespace

MotionSignature signature_from_json(const json& doc, const std::string& source) {
    return signature_fields(doc, source, {});
}

std::vector<MotionEntry> motion_db_from_json(const json& doc, const std::string& source, const fs::path& base_dir) {
    if (!doc.is_array()) {
        throw DataError(source, 0, "motion database must be a JSON array");
    }
    std::vector<MotionEntry> db;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& e = doc[i];
        const std::string where = entry_label(i);
        MotionEntry m;
        m.signature = signature_fields(e, source, where);
        m.id = string_field(e, "id", source, where);
        m.pose_path = resolve(base_dir, string_field(e, "pose_path", source, where));
        if (auto n = e.find("ground_normal"); n != e.end()) {
            m.ground_normal = vec3_from(*n, source, where + "ground_normal: ");
            if (!is_unit(*m.ground_normal)) throw DataError(source, 0, where + "ground_normal is not unit length");
        }
        db.push_back(std::move(m));
    }
    return db;
}

std::vector<MotionEntry> read_motion_db(const fs::path& path) {
    return motion_db_from_json(read_json_file(path), path.string(), path.parent_path());
}

std::vector<BackgroundEntry> background_db_from_json(const json& doc, const std::string& source,
                                                     const fs::path& base_dir) {
    if (!doc.is_array()) {
        throw DataError(source, 0, "background database must be a JSON array");
    }
    std::vector<BackgroundEntry> db;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& e = doc[i];
        const std::string where = entry_label(i);
        if (!e.is_object()) throw DataError(source, 0, where + "expected a JSON object");
        BackgroundEntry b;
        b.id = string_field(e, "id", source, where);
        b.image_path = resolve(base_dir, string_field(e, "image_path", source, where));
        auto n = e.find("normal");
        if (n == e.end()) throw DataError(source, 0, where + "missing field 'normal'");
        b.ground_normal = vec3_from(*n, source, where + "normal: ");
        if (!is_unit(b.ground_normal)) throw DataError(source, 0, where + "normal is not unit length");
        if (e.contains("ground_y")) b.ground_y = number_field(e, "ground_y", source, 0, where);
        if (e.contains("center_x")) b.center_x = number_field(e, "center_x", source, 0, where);
        db.push_back(std::move(b));
    }
    return db;
}

std::vector<BackgroundEntry> read_background_db(const fs::path& path) {
    return background_db_from_json(read_json_file(path), path.string(), path.parent_path());
}

json pose_to_json(const PoseSequence& poses) {
    json frames = json::array();
    for (const auto& frame : poses.frames) {
        json kps = json::array();
        for (const auto& kp : frame) kps.push_back({kp.x, kp.y, kp.confidence});
        frames.push_back(std::move(kps));
    }
    return json{{"keypoint_count", poses.keypoint_count},
                {"frame_size", poses.frame_size},
                {"foot_indices", poses.foot_indices},
                {"frames", std::move(frames)}};
}

PoseSequence pose_from_json(const json& doc, const std::string& source) {
    if (!doc.is_object()) throw DataError(source, 0, "pose file must be a JSON object");
    PoseSequence p;
    try {
        p.keypoint_count = doc.value("keypoint_count", kDwposeKeypointCount);
        if (auto fs_it = doc.find("frame_size"); fs_it != doc.end()) {
            p.frame_size = fs_it->get<std::array<double, 2>>();
        }
        p.foot_indices = doc.at("foot_indices").get<std::vector<std::size_t>>();
        for (const auto& frame : doc.at("frames")) {
            std::vector<Keypoint> kps;
            for (const auto& kp : frame) {
                if (!kp.is_array() || kp.size() != 3) throw DataError(source, 0, "keypoint must be [x, y, c]");
                kps.push_back({kp[0].get<double>(), kp[1].get<double>(), kp[2].get<double>()});
            }
            p.frames.push_back(std::move(kps));
        }
    } catch (const json::exception& e) {
        throw DataError(source, 0, std::string("malformed pose file: ") + e.what());
    }
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw DataError(source, 0, e.what());
    }
    return p;
}

PoseSequence read_pose(const fs::path& path) { return pose_from_json(read_json_file(path), path.string()); }

json plan_to_json(const FusionPlan& plan) {
    json segments = json::array();
    for (std::size_t s = 0; s < plan.segments.size(); ++s) {
        segments.push_back({{"index", s},
                            {"start", plan.segments[s].start},
                            {"end", plan.segments[s].start + plan.segment_content_len}});
    }
    json weights = json::array();
    for (std::size_t f = 0; f < plan.weights.size(); ++f) {
        json list = json::array();
        for (const auto& fw : plan.weights[f]) list.push_back({{"segment", fw.segment}, {"weight", fw.weight}});
        weights.push_back({{"frame", f}, {"contributions", std::move(list)}});
    }
    return json{{"total_content_frames", plan.total_content_frames},
                {"segment_content_len", plan.segment_content_len},
                {"overlap", plan.overlap},
                {"reference_slots", 2},
                {"segments", std::move(segments)},
                {"weights", std::move(weights)}};
}

json ranked_to_json(const std::vector<RankedResult>& results) {
    json out = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        out.push_back({{"rank", i + 1}, {"id", results[i].id}, {"score", results[i].score}});
    }
    return out;
}

}  // namespace fitcheck
