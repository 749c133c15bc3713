#include "support/fixtures.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "fitcheck/io.hpp"
#include "support/capture_sim.hpp"

namespace fixtures {

namespace fs = std::filesystem;
using nlohmann::json;

TempDir::TempDir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("fitcheck_" + tag + "_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

namespace {

// A standing figure: a vertical chain of confident keypoints from head to
// feet, with a few low-confidence outliers and slight per-frame bobbing.
fitcheck::PoseSequence standing_figure(std::size_t frames, double bob, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> jitter(-2.0, 2.0);
    fitcheck::PoseSequence p;
    p.foot_indices = {17, 18, 19, 20, 21, 22};
    for (std::size_t f = 0; f < frames; ++f) {
        const double lift = bob * std::sin(0.7 * static_cast<double>(f));
        std::vector<fitcheck::Keypoint> kps(p.keypoint_count);
        for (std::size_t k = 0; k < kps.size(); ++k) {
            const double y = 100.0 + 300.0 * static_cast<double>(k % 23) / 22.0 - lift;
            const double conf = (k % 29 == 5) ? 0.1 : 0.9;
            kps[k] = {250.0 + 30.0 * std::sin(static_cast<double>(k)) + jitter(gen), y + jitter(gen), conf};
        }
        for (std::size_t idx : p.foot_indices) kps[idx] = {240.0 + jitter(gen), 400.0 - lift + jitter(gen), 0.95};
        p.frames.push_back(std::move(kps));
    }
    return p;
}

json normal_json(double tilt_deg, double azimuth_deg) {
    const double t = tilt_deg * std::numbers::pi / 180.0, a = azimuth_deg * std::numbers::pi / 180.0;
    return json::array({std::sin(t) * std::cos(a), std::cos(t), std::sin(t) * std::sin(a)});
}

}  // namespace

PipelineFiles write_pipeline_fixture(const fs::path& dir) {
    PipelineFiles files;
    fs::create_directories(dir / "poses");

    const auto capture = capture_sim::spin_and_walk(4.0, 50.0, 10.0, 1.5, 0.05, 7);
    files.imu_log = dir / "capture.jsonl";
    fitcheck::write_text_file(files.imu_log, fitcheck::format_imu_log(capture.recording));

    const auto query = fitcheck::extract_signature(capture.recording);
    files.query_signature = dir / "query.json";
    fitcheck::write_text_file(files.query_signature, fitcheck::signature_to_json(query).dump());

    struct Spec {
        const char* id;
        double duration, start_yaw, walk;
        std::uint64_t seed;
        double tilt;
    };
    const Spec motions[] = {
        {"twirl_fast", 3.0, 90.0, 0.5, 11, 4.0},   {"walk_spin", 4.0, 12.0, 1.4, 12, 9.0},
        {"slow_turn", 6.0, 200.0, 0.2, 13, 15.0},  {"catwalk", 4.0, 300.0, 3.0, 14, 2.0},
        {"pivot", 2.0, 45.0, 0.0, 15, 20.0},       {"stroll", 5.0, 180.0, 2.0, 16, 6.0},
    };
    json mdb = json::array();
    for (std::size_t i = 0; i < std::size(motions); ++i) {
        const auto& m = motions[i];
        const auto cap = capture_sim::spin_and_walk(m.duration, 30.0, m.start_yaw, m.walk, 0.05, m.seed);
        const auto sig = fitcheck::extract_signature(cap.recording);
        const fs::path pose_rel = fs::path("poses") / (std::string(m.id) + ".json");
        fitcheck::write_text_file(dir / pose_rel,
                                  fitcheck::pose_to_json(standing_figure(12 + 2 * i, 3.0, m.seed)).dump());
        if (i == 0) files.pose = dir / pose_rel;
        json entry = fitcheck::signature_to_json(sig);
        entry["id"] = m.id;
        entry["pose_path"] = pose_rel.generic_string();
        entry["ground_normal"] = normal_json(m.tilt, 30.0 * static_cast<double>(i));
        mdb.push_back(std::move(entry));
    }
    files.motion_db = dir / "motions.json";
    fitcheck::write_text_file(files.motion_db, mdb.dump(2));

    json bdb = json::array();
    const double tilts[] = {0.0, 3.0, 8.0, 12.0, 18.0, 25.0, 40.0};
    for (std::size_t i = 0; i < std::size(tilts); ++i) {
        json entry{{"id", "bg_" + std::to_string(i)},
                   {"image_path", "backgrounds/bg_" + std::to_string(i) + ".png"},
                   {"normal", normal_json(tilts[i], 50.0 * static_cast<double>(i))}};
        if (i % 2 == 0) {
            entry["ground_y"] = 900.0 - 10.0 * static_cast<double>(i);
            entry["center_x"] = 288.0 + 5.0 * static_cast<double>(i);
        }
        bdb.push_back(std::move(entry));
    }
    files.background_db = dir / "backgrounds.json";
    fitcheck::write_text_file(files.background_db, bdb.dump(2));
    return files;
}

}  // namespace fixtures
