#include <doctest.h>

#include <string>

#include "fitcheck/error.hpp"
#include "fitcheck/io.hpp"
#include "support/capture_sim.hpp"
#include "support/fixtures.hpp"

using namespace fitcheck;
namespace fs = std::filesystem;

namespace {

std::string data_error_message(const auto& fn) {
    try {
        fn();
    } catch (const DataError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("IMU log parsing") {
    const std::string good =
        "{\"t\": 0.0, \"ax\": 0, \"ay\": 0, \"az\": 0, \"yaw\": 10}\n"
        "\n"
        "{\"t\": 0.1, \"ax\": 1, \"ay\": 0, \"az\": 0, \"yaw\": 20}\n";
    const auto rec = parse_imu_log(good, "good.jsonl");
    REQUIRE(rec.size() == 2);
    CHECK(rec.samples()[1].accel[0] == 1.0);
    CHECK(rec.samples()[1].yaw == 20.0);

    CHECK(data_error_message([] {
              parse_imu_log("{\"t\": 0, \"ax\": 0, \"ay\": 0, \"az\": 0, \"yaw\": 1}\n{\"t\": 1, \"ax\": 0,",
                            "cap.jsonl");
          }) == "cap.jsonl:2: invalid JSON");
    CHECK(data_error_message([] {
              parse_imu_log("{\"t\": 0, \"ax\": 0, \"ay\": 0, \"az\": 0, \"yaw\": 1}\n\n"
                            "{\"t\": 1, \"ax\": 0, \"ay\": 0, \"yaw\": 2}\n",
                            "cap.jsonl");
          }).starts_with("cap.jsonl:3:"));
    CHECK(data_error_message([] {
              parse_imu_log("{\"t\": 0, \"ax\": 0, \"ay\": 0, \"az\": 0, \"yaw\": 1}\n"
                            "{\"t\": 0, \"ax\": 0, \"ay\": 0, \"az\": 0, \"yaw\": 2}\n",
                            "cap.jsonl");
          }) == "cap.jsonl:2: timestamp does not increase");
    CHECK(data_error_message([] {
              parse_imu_log("{\"t\": 0, \"ax\": 0, \"ay\": 0, \"az\": 0, \"yaw\": 360}\n", "cap.jsonl");
          }) == "cap.jsonl:1: yaw outside [0, 360)");
    CHECK_THROWS_AS(parse_imu_log("{\"t\": 0, \"ax\": 0, \"ay\": 0, \"az\": 0, \"yaw\": 1}\n", "one"), DataError);
    CHECK_THROWS_AS(read_imu_log("/nonexistent/fitcheck/log.jsonl"), DataError);
}

TEST_CASE("IMU log round trip is exact") {
    const auto cap = capture_sim::spin_and_walk(2.0, 100.0, 33.3, 1.0, 0.1, 4);
    const auto back = parse_imu_log(format_imu_log(cap.recording), "mem");
    REQUIRE(back.size() == cap.recording.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back.samples()[i].t == cap.recording.samples()[i].t);
        CHECK(back.samples()[i].accel == cap.recording.samples()[i].accel);
        CHECK(back.samples()[i].yaw == cap.recording.samples()[i].yaw);
    }
}

TEST_CASE("parse_json reports the line of a syntax error") {
    CHECK(data_error_message([] { parse_json("{\n  \"a\": 1,\n  \"b\": ?\n}", "doc.json"); }) ==
          "doc.json:3: invalid JSON");
    CHECK(parse_json("[1, 2]", "x")[1] == 2);
}

TEST_CASE("signature JSON round trip") {
    MotionSignature s{{0.0, 45.5, 91.0}, {{0, 0, 0}, {0.1, 0.2, 0.3}, {0.2, 0.4, 0.6}}, 30.0};
    const auto back = signature_from_json(signature_to_json(s), "mem");
    CHECK(back.yaw_seq == s.yaw_seq);
    CHECK(back.translation_seq == s.translation_seq);
    CHECK(back.sample_rate == s.sample_rate);
    CHECK_THROWS_AS(signature_from_json(nlohmann::json{{"yaw", {1.0}}}, "mem"), DataError);
    CHECK_THROWS_AS(
        signature_from_json(nlohmann::json{{"yaw", {1.0, 2.0}}, {"translation", {{0, 0, 0}}}, {"sample_rate", 30}},
                            "mem"),
        DataError);
}

TEST_CASE("databases from the fixture") {
    fixtures::TempDir dir("io");
    const auto files = fixtures::write_pipeline_fixture(dir.path());

    const auto motions = read_motion_db(files.motion_db);
    REQUIRE(motions.size() == 6);
    CHECK(motions[0].id == "twirl_fast");
    CHECK(fs::path(motions[0].pose_path).is_absolute());
    CHECK(fs::exists(motions[0].pose_path));
    CHECK(motions[0].ground_normal.has_value());

    const auto bgs = read_background_db(files.background_db);
    REQUIRE(bgs.size() == 7);
    CHECK(bgs[0].ground_y.has_value());
    CHECK_FALSE(bgs[1].ground_y.has_value());

    const auto pose = read_pose(files.pose);
    CHECK(pose.frames.size() == 12);
    CHECK(pose_from_json(pose_to_json(pose), "mem") == pose);
}

TEST_CASE("database errors") {
    using nlohmann::json;
    CHECK_THROWS_AS(motion_db_from_json(json::object(), "db"), DataError);
    CHECK_THROWS_AS(motion_db_from_json(json::array({json{{"id", "a"}}}), "db"), DataError);
    const json sig{{"yaw", {0.0, 1.0}}, {"translation", {{0, 0, 0}, {0, 0, 0}}}, {"sample_rate", 30}};
    json entry = sig;
    entry["id"] = "a";
    entry["pose_path"] = "a.json";
    entry["ground_normal"] = {0.0, 2.0, 0.0};
    CHECK_THROWS_AS(motion_db_from_json(json::array({entry}), "db"), DataError);
    entry["ground_normal"] = {0.0, 1.0, 0.0};
    CHECK(motion_db_from_json(json::array({entry}), "db", "/data").front().pose_path == "/data/a.json");

    CHECK_THROWS_AS(background_db_from_json(json::array({json{{"id", "b"}, {"image_path", "b.png"}}}), "db"),
                    DataError);
    CHECK_THROWS_AS(background_db_from_json(
                        json::array({json{{"id", "b"}, {"image_path", "b.png"}, {"normal", {1.0, 1.0, 0.0}}}}), "db"),
                    DataError);
}

TEST_CASE("pose file errors") {
    using nlohmann::json;
    CHECK_THROWS_AS(pose_from_json(json::array(), "p"), DataError);
    CHECK_THROWS_AS(pose_from_json(json{{"keypoint_count", 2}, {"frame_size", {10, 10}}, {"foot_indices", {0}},
                                        {"frames", {{{1, 2}, {3, 4, 1}}}}},
                                   "p"),
                    DataError);
    CHECK_THROWS_AS(pose_from_json(json{{"keypoint_count", 2}, {"frame_size", {10, 10}}, {"foot_indices", {5}},
                                        {"frames", {{{1, 2, 1}, {3, 4, 1}}}}},
                                   "p"),
                    DataError);
}

TEST_CASE("plan and ranking JSON") {
    const auto doc = plan_to_json(fusion_weights(plan_segments(10, 6, 4)));
    CHECK(doc["total_content_frames"] == 10);
    CHECK(doc["reference_slots"] == 2);
    CHECK(doc["segments"].size() == 3);
    CHECK(doc["segments"][1]["start"] == 2);
    CHECK(doc["weights"].size() == 10);
    const auto ranked = ranked_to_json({{"a", 0.5}, {"b", 1.5}});
    CHECK(ranked[1]["id"] == "b");
    CHECK(ranked[1]["rank"] == 2);
}

TEST_CASE("write_text_file creates parent directories") {
    fixtures::TempDir dir("write");
    const auto target = dir.path() / "a" / "b" / "c.txt";
    write_text_file(target, "hello\n");
    CHECK(read_text_file(target) == "hello\n");
}
