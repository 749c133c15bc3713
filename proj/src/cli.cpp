// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#include "fitcheck/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fitcheck/attention.hpp"
#include "fitcheck/config.hpp"
#include "fitcheck/error.hpp"
#include "fitcheck/fusion.hpp"
#include "fitcheck/imu.hpp"
#include "fitcheck/io.hpp"
#include "fitcheck/mra_reference.hpp"
#include "fitcheck/pose.hpp"
#include "fitcheck/retrieval.hpp"
#include "fitcheck/sampling.hpp"
#include "fitcheck/stats.hpp"

namespace fitcheck::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct GlobalOptions {
    std::string config_path;
    std::string format = "table";
    std::uint64_t seed = 42;
    unsigned threads = 1;
    std::map<std::string, std::string> overrides;
};

struct Context {
    PipelineConfig config;
    GlobalOptions global;
    std::ostream& out;
    std::ostream& err;
    std::istream& in;

    bool json_output() const { return global.format == "json"; }
};

void print_ranked_table(std::ostream& out, const std::vector<RankedResult>& results) {
    out << std::left << std::setw(6) << "rank" << std::setw(24) << "id" << "score\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        out << std::left << std::setw(6) << (i + 1) << std::setw(24) << results[i].id << std::setprecision(10)
            << results[i].score << "\n";
    }
}

// "x,y,z", a JSON file holding [x, y, z], or a JSON object with a
// "normal"/"ground_normal" member.
Vec3 parse_normal_argument(const std::string& arg) {
    if (!fs::exists(arg)) {
        std::vector<double> parts;
        std::stringstream ss(arg);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                parts.push_back(std::stod(item, &used));
                if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw DataError(arg, 0, "expected 'x,y,z' or a path to a JSON file");
            }
        }
        if (parts.size() != 3) throw DataError(arg, 0, "expected 'x,y,z' or a path to a JSON file");
        Vec3 n{parts[0], parts[1], parts[2]};
        if (!is_unit(n)) throw DataError(arg, 0, "normal is not unit length");
        return n;
    }
    const json doc = read_json_file(arg);
    json v = doc;
    if (doc.is_object()) {
        if (doc.contains("normal")) {
            v = doc["normal"];
        } else if (doc.contains("ground_normal")) {
            v = doc["ground_normal"];
        } else {
            throw DataError(arg, 0, "no 'normal' or 'ground_normal' member");
        }
    }
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number()) {
        throw DataError(arg, 0, "expected a 3-vector");
    }
    Vec3 n{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
    if (!is_unit(n)) throw DataError(arg, 0, "normal is not unit length");
    return n;
}

std::string relative_to(const fs::path& target, const fs::path& base_dir) {
    const fs::path t = fs::weakly_canonical(fs::absolute(target));
    const fs::path b = fs::weakly_canonical(fs::absolute(base_dir));
    return t.lexically_relative(b).generic_string();
}

// Picks a 1-based rank, either from the flag or by prompting.
std::size_t choose_rank(Context& ctx, const std::optional<std::size_t>& pick,
                        const std::vector<RankedResult>& results, const char* what) {
    std::size_t rank = 0;
    if (pick) {
        rank = *pick;
    } else {
        ctx.err << "Top " << results.size() << " " << what << ":\n";
        print_ranked_table(ctx.err, results);
        ctx.err << "Select " << what << " [1-" << results.size() << "]: " << std::flush;
        std::string line;
        if (!std::getline(ctx.in, line)) {
            throw CLI::ValidationError("no selection given for " + std::string(what));
        }
        try {
            rank = static_cast<std::size_t>(std::stoul(line));
        } catch (const std::exception&) {
            throw CLI::ValidationError("selection '" + line + "' is not a number");
        }
    }
    if (rank < 1 || rank > results.size()) {
        throw CLI::ValidationError(std::string(what) + " pick " + std::to_string(rank) + " outside 1.." +
                                   std::to_string(results.size()));
    }
    return rank;
}

template <typename Entry>
const Entry& find_entry(const std::vector<Entry>& db, const std::string& id) {
    auto it = std::find_if(db.begin(), db.end(), [&](const Entry& e) { return e.id == id; });
    return *it;
}

// ---------------------------------------------------------------- commands

struct ImuSignatureArgs {
    std::string in;
    std::string out;
    double cutoff = kDefaultCutoffHz;
};

int cmd_imu_signature(Context& ctx, const ImuSignatureArgs& a) {
    const ImuRecording rec = read_imu_log(a.in);
    MotionSignature sig;
    try {
        sig = extract_signature(rec, a.cutoff);
    } catch (const std::invalid_argument& e) {
        throw DataError(a.in, 0, e.what());
    }
    write_text_file(a.out, signature_to_json(sig).dump(2) + "\n");
    const Vec3 net = sig.translation_seq.back();
    if (ctx.json_output()) {
        ctx.out << json{{"samples", sig.size()},
                        {"sample_rate", sig.sample_rate},
                        {"yaw_start", sig.yaw_seq.front()},
                        {"yaw_end", sig.yaw_seq.back()},
                        {"net_translation", net},
                        {"out", a.out}}
                       .dump(2)
                << "\n";
    } else {
        ctx.out << "samples      " << sig.size() << "\n"
                << "sample rate  " << sig.sample_rate << " Hz\n"
                << "yaw          " << sig.yaw_seq.front() << " -> " << sig.yaw_seq.back() << " deg\n"
                << "translation  (" << net[0] << ", " << net[1] << ", " << net[2] << ") m\n"
                << "written      " << a.out << "\n";
    }
    return kSuccess;
}

struct RetrieveMotionArgs {
    std::string db;
    std::string query;
    std::size_t k = 5;
    std::optional<std::size_t> band;
};

int cmd_retrieve_motion(Context& ctx, const RetrieveMotionArgs& a) {
    const auto db = read_motion_db(a.db);
    const auto query = signature_from_json(read_json_file(a.query), a.query);
    RetrievalOptions opts;
    opts.threads = ctx.global.threads;
    opts.dtw.band = a.band;
    const auto results = retrieve_motions(db, query, a.k, ctx.config.alpha_motion, opts);
    if (ctx.json_output()) {
        ctx.out << json{{"query", a.query}, {"alpha", ctx.config.alpha_motion}, {"k", a.k},
                        {"results", ranked_to_json(results)}}
                       .dump(2)
                << "\n";
    } else {
        print_ranked_table(ctx.out, results);
    }
    return kSuccess;
}

struct RetrieveBackgroundArgs {
    std::string db;
    std::string normal;
    std::size_t k = 5;
};

int cmd_retrieve_background(Context& ctx, const RetrieveBackgroundArgs& a) {
    const auto db = read_background_db(a.db);
    const Vec3 normal = parse_normal_argument(a.normal);
    const auto results = retrieve_backgrounds(db, normal, a.k);
    if (ctx.json_output()) {
        ctx.out << json{{"normal", normal}, {"k", a.k}, {"results", ranked_to_json(results)}}.dump(2) << "\n";
    } else {
        print_ranked_table(ctx.out, results);
    }
    return kSuccess;
}

struct GroundPoseArgs {
    std::string pose;
    std::string out;
    double ground_y = 0.0;
    double center_x = 0.0;
    double height_frac = 0.6;
    double conf_threshold = kDefaultConfThreshold;
};

int cmd_ground_pose(Context& ctx, const GroundPoseArgs& a) {
    const PoseSequence poses = read_pose(a.pose);
    GroundedPose g;
    try {
        g = ground_pose_sequence(poses, {a.ground_y, a.height_frac, a.center_x}, a.conf_threshold);
    } catch (const std::invalid_argument& e) {
        throw DataError(a.pose, 0, e.what());
    }
    if (!a.out.empty()) {
        write_text_file(a.out, pose_to_json(g.poses).dump() + "\n");
    }
    if (ctx.json_output()) {
        json doc{{"scale", g.scale}, {"translation", g.translation}, {"frames", g.poses.frames.size()}};
        if (!a.out.empty()) doc["out"] = a.out;
        ctx.out << doc.dump(2) << "\n";
    } else {
        ctx.out << "scale        " << g.scale << "\n"
                << "translation  (" << g.translation[0] << ", " << g.translation[1] << ") px\n"
                << "frames       " << g.poses.frames.size() << "\n";
        if (!a.out.empty()) ctx.out << "written      " << a.out << "\n";
    }
    return kSuccess;
}

struct PlanFusionArgs {
    std::size_t frames = 0;
    std::optional<std::size_t> t;
    std::optional<std::size_t> overlap;
    std::string out;
};

int cmd_plan_fusion(Context& ctx, const PlanFusionArgs& a) {
    const std::size_t t = a.t.value_or(static_cast<std::size_t>(ctx.config.content_frames_T));
    const std::size_t o = a.overlap.value_or(static_cast<std::size_t>(ctx.config.overlap_frames));
    FusionPlan plan;
    try {
        plan = fusion_weights(plan_segments(a.frames, t, o));
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError(e.what());
    }
    const json doc = plan_to_json(plan);
    if (!a.out.empty()) write_text_file(a.out, doc.dump(2) + "\n");
    if (ctx.json_output()) {
        ctx.out << doc.dump(2) << "\n";
    } else {
        ctx.out << "N=" << plan.total_content_frames << " T=" << plan.segment_content_len
                << " overlap=" << plan.overlap << " segments=" << plan.segments.size() << "\n";
        for (std::size_t s = 0; s < plan.segments.size(); ++s) {
            ctx.out << "  segment " << s << ": [" << plan.segments[s].start << ", "
                    << plan.segments[s].start + t << ")\n";
        }
        for (std::size_t f = 0; f < plan.weights.size(); ++f) {
            ctx.out << "  frame " << std::setw(4) << f << ":";
            for (const auto& fw : plan.weights[f]) {
                ctx.out << " s" << fw.segment << "=" << std::fixed << std::setprecision(4) << fw.weight;
            }
            ctx.out << std::defaultfloat << "\n";
        }
    }
    return kSuccess;
}

struct MraDemoArgs {
    std::size_t frames = 8;
    std::size_t height = 4;
    std::size_t width = 4;
    std::size_t channels = 8;
};

std::uint64_t fnv1a(std::span<const double> values) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (double v : values) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

json checksum(const FeatureMap& m) {
    double sum = 0.0, sq = 0.0;
    for (double v : m.data()) {
        sum += v;
        sq += v * v;
    }
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a(m.data());
    return json{{"shape", {m.frames(), m.height(), m.width(), m.channels()}},
                {"sum", sum},
                {"l2", std::sqrt(sq)},
                {"fnv1a", hex.str()}};
}

int cmd_mra_demo(Context& ctx, const MraDemoArgs& a) {
    if (a.frames < 3) throw CLI::ValidationError("--frames must be at least 3 (two references + content)");
    if (a.height == 0 || a.width == 0 || a.channels == 0) {
        throw CLI::ValidationError("--height, --width and --channels must be positive");
    }
    SeededRng rng(ctx.global.seed);
    SeededRng input_rng = rng.split(0);
    SeededRng weight_rng = rng.split(1);
    auto draw = [](SeededRng& r) { return 2.0 * r.uniform01() - 1.0; };

    FeatureMap x(a.frames, a.height, a.width, a.channels);
    for (double& v : x.data()) v = draw(input_rng);
    const auto c = static_cast<Eigen::Index>(a.channels);
    Matrix wq(c, c), wk(c, c), wv(c, c);
    for (Matrix* m : {&wq, &wk, &wv})
        for (Eigen::Index i = 0; i < m->size(); ++i) m->data()[i] = draw(weight_rng);
    const auto w = AttentionWeights::with_default_scale(wq, wk, wv);

    const FeatureMap y = multi_reference_attention(x, w);
    const FeatureMap oracle = reference::multi_reference_attention(x, w);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < y.data().size(); ++i) {
        max_diff = std::max(max_diff, std::abs(y.data()[i] - oracle.data()[i]));
    }
    constexpr double tol = 1e-9;
    const bool ok = max_diff <= tol;
    if (ctx.json_output()) {
        ctx.out << json{{"seed", ctx.global.seed},
                        {"input", checksum(x)},
                        {"output", checksum(y)},
                        {"oracle_max_abs_diff", max_diff},
                        {"tolerance", tol},
                        {"oracle_match", ok}}
                       .dump(2)
                << "\n";
    } else {
        const auto in_sum = checksum(x);
        const auto out_sum = checksum(y);
        ctx.out << "input   shape " << in_sum["shape"].dump() << " sum " << in_sum["sum"].get<double>() << " fnv1a "
                << in_sum["fnv1a"].get<std::string>() << "\n"
                << "output  shape " << out_sum["shape"].dump() << " sum " << out_sum["sum"].get<double>()
                << " fnv1a " << out_sum["fnv1a"].get<std::string>() << "\n"
                << "oracle  max |diff| " << max_diff << (ok ? "  PASS" : "  FAIL") << "\n";
    }
    return ok ? kSuccess : kDataError;
}

struct SampleReportArgs {
    std::size_t draws = 100000;
};

int cmd_sample_report(Context& ctx, const SampleReportArgs& a) {
    if (a.draws == 0) throw CLI::ValidationError("--draws must be positive");
    const PipelineConfig& cfg = ctx.config;
    const SeededRng root(ctx.global.seed);

    // A 48-frame full turn supplies both front- and back-facing windows.
    VideoMeta meta;
    for (int i = 0; i < 48; ++i) meta.labels.push_back(classify_orientation(7.5 * i));
    const auto t = static_cast<std::size_t>(cfg.content_frames_T);

    SeededRng window_rng = root.split(0);
    SeededRng dropout_rng = root.split(1);
    SeededRng augment_rng = root.split(2);
    SeededRng gt_rng = root.split(3);

    std::array<std::size_t, 3> modes{};
    std::array<std::size_t, 3> dropped{};
    std::size_t augmented = 0;
    std::size_t front_gt = 0;
    for (std::size_t i = 0; i < a.draws; ++i) {
        ++modes[static_cast<std::size_t>(sample_training_window(meta, t, window_rng, cfg.window_policy_probs).mode)];
        const auto cond = apply_condition_dropout({}, dropout_rng, cfg.dropout_prob);
        dropped[0] += cond.has_vae ? 0 : 1;
        dropped[1] += cond.has_image ? 0 : 1;
        dropped[2] += cond.has_pose ? 0 : 1;
        augmented += gate_augmentation(augment_rng, cfg.augment_prob) ? 1 : 0;
        front_gt += choose_finetune_gt(gt_rng, cfg.finetune_front_gt_prob) == FinetuneGt::FrontGT ? 1 : 0;
    }

    const double n = static_cast<double>(a.draws);
    json rows = json::array();
    auto binary = [&](const std::string& name, std::size_t hits, double target) {
        const std::array<std::size_t, 2> counts{hits, a.draws - hits};
        const std::array<double, 2> probs{target, 1.0 - target};
        const auto chi = chi_square_test(counts, probs);
        rows.push_back({{"policy", name},
                        {"observed", static_cast<double>(hits) / n},
                        {"target", target},
                        {"chi_square_p", chi.p_value}});
    };
    const auto mode_chi = chi_square_test(modes, cfg.window_policy_probs);
    for (std::size_t m = 0; m < 3; ++m) {
        rows.push_back({{"policy", std::string("window.") + to_string(static_cast<WindowMode>(m))},
                        {"observed", static_cast<double>(modes[m]) / n},
                        {"target", cfg.window_policy_probs[m]},
                        {"chi_square_p", mode_chi.p_value}});
    }
    binary("dropout.vae", dropped[0], cfg.dropout_prob);
    binary("dropout.image", dropped[1], cfg.dropout_prob);
    binary("dropout.pose", dropped[2], cfg.dropout_prob);
    binary("augmentation", augmented, cfg.augment_prob);
    binary("finetune.front_gt", front_gt, cfg.finetune_front_gt_prob);

    if (ctx.json_output()) {
        ctx.out << json{{"seed", ctx.global.seed}, {"draws", a.draws}, {"policies", rows}}.dump(2) << "\n";
    } else {
        ctx.out << "seed " << ctx.global.seed << ", " << a.draws << " draws\n";
        ctx.out << std::left << std::setw(22) << "policy" << std::setw(12) << "observed" << std::setw(10) << "target"
                << "chi2 p\n";
        for (const auto& r : rows) {
            ctx.out << std::left << std::setw(22) << r["policy"].get<std::string>() << std::fixed
                    << std::setprecision(4) << std::setw(12) << r["observed"].get<double>() << std::setw(10)
                    << r["target"].get<double>() << r["chi_square_p"].get<double>() << std::defaultfloat << "\n";
        }
    }
    return kSuccess;
}

struct PipelineArgs {
    std::string imu;
    std::string motion_db;
    std::string background_db;
    std::string out_dir = "fitcheck_out";
    std::size_t k = 5;
    std::optional<std::size_t> pick;
    std::optional<std::size_t> pick_bg;
    std::string normal;
    std::optional<double> ground_y;
    std::optional<double> center_x;
    double height_frac = 0.6;
    double conf_threshold = kDefaultConfThreshold;
    double cutoff = kDefaultCutoffHz;
};

int cmd_pipeline(Context& ctx, const PipelineArgs& a) {
    const fs::path out_dir(a.out_dir);
    fs::create_directories(out_dir);
    const PipelineConfig& cfg = ctx.config;

    // IMU log -> signature
    const ImuRecording rec = read_imu_log(a.imu);
    MotionSignature sig;
    try {
        sig = extract_signature(rec, a.cutoff);
    } catch (const std::invalid_argument& e) {
        throw DataError(a.imu, 0, e.what());
    }
    const fs::path sig_path = out_dir / "signature.json";
    write_text_file(sig_path, signature_to_json(sig).dump(2) + "\n");

    // Top-k motions and the user's pick
    const auto motions = read_motion_db(a.motion_db);
    RetrievalOptions opts;
    opts.threads = ctx.global.threads;
    const auto motion_ranked = retrieve_motions(motions, sig, a.k, cfg.alpha_motion, opts);
    const std::size_t motion_rank = choose_rank(ctx, a.pick, motion_ranked, "motion");
    const MotionEntry& motion = find_entry(motions, motion_ranked[motion_rank - 1].id);

    // Top-k backgrounds against the motion's original ground plane
    Vec3 reference_normal{};
    if (!a.normal.empty()) {
        reference_normal = parse_normal_argument(a.normal);
    } else if (motion.ground_normal) {
        reference_normal = *motion.ground_normal;
    } else {
        throw DataError(a.motion_db, 0,
                        "motion '" + motion.id + "' has no ground_normal; pass --normal to supply one");
    }
    const auto backgrounds = read_background_db(a.background_db);
    const auto bg_ranked = retrieve_backgrounds(backgrounds, reference_normal, a.k);
    const std::size_t bg_rank = choose_rank(ctx, a.pick_bg, bg_ranked, "background");
    const BackgroundEntry& background = find_entry(backgrounds, bg_ranked[bg_rank - 1].id);

    // Ground the retrieved pose sequence in the chosen background
    const PoseSequence poses = read_pose(motion.pose_path);
    const double frame_w = poses.frame_size[0];
    const double frame_h = poses.frame_size[1];
    GroundSpec spec;
    spec.ground_y = a.ground_y.value_or(background.ground_y.value_or(0.9 * frame_h));
    spec.center_x = a.center_x.value_or(background.center_x.value_or(0.5 * frame_w));
    spec.target_height_frac = a.height_frac;
    GroundedPose grounded;
    try {
        grounded = ground_pose_sequence(poses, spec, a.conf_threshold);
    } catch (const std::invalid_argument& e) {
        throw DataError(motion.pose_path, 0, e.what());
    }
    const fs::path pose_out = out_dir / "grounded_pose.json";
    write_text_file(pose_out, pose_to_json(grounded.poses).dump() + "\n");

    // Segment layout for the frame count of the grounded sequence
    const std::size_t n = grounded.poses.frames.size();
    FusionPlan plan;
    try {
        plan = fusion_weights(plan_segments(n, static_cast<std::size_t>(cfg.content_frames_T),
                                            static_cast<std::size_t>(cfg.overlap_frames)));
    } catch (const std::invalid_argument& e) {
        throw DataError(motion.pose_path, 0, std::string("cannot plan fusion: ") + e.what());
    }
    const fs::path plan_path = out_dir / "fusion_plan.json";
    write_text_file(plan_path, plan_to_json(plan).dump(2) + "\n");

    const json manifest{
        {"seed", ctx.global.seed},
        {"config", json::parse(serialize(cfg))},
        {"imu_log", relative_to(a.imu, out_dir)},
        {"signature", relative_to(sig_path, out_dir)},
        {"motion",
         {{"candidates", ranked_to_json(motion_ranked)},
          {"picked_rank", motion_rank},
          {"id", motion.id},
          {"score", motion_ranked[motion_rank - 1].score},
          {"pose_path", relative_to(motion.pose_path, out_dir)}}},
        {"background",
         {{"reference_normal", reference_normal},
          {"candidates", ranked_to_json(bg_ranked)},
          {"picked_rank", bg_rank},
          {"id", background.id},
          {"score", bg_ranked[bg_rank - 1].score},
          {"image_path", relative_to(background.image_path, out_dir)}}},
        {"grounding",
         {{"ground_y", spec.ground_y},
          {"center_x", spec.center_x},
          {"target_height_frac", spec.target_height_frac},
          {"scale", grounded.scale},
          {"translation", grounded.translation},
          {"pose", relative_to(pose_out, out_dir)}}},
        {"fusion",
         {{"frames", n},
          {"T", plan.segment_content_len},
          {"overlap", plan.overlap},
          {"segments", plan.segments.size()},
          {"guidance_scale", cfg.guidance_scale},
          {"denoise_steps", cfg.denoise_steps},
          {"plan", relative_to(plan_path, out_dir)}}},
    };
    const fs::path manifest_path = out_dir / "manifest.json";
    write_text_file(manifest_path, manifest.dump(2) + "\n");

    if (ctx.json_output()) {
        ctx.out << manifest.dump(2) << "\n";
    } else {
        ctx.out << "motion      #" << motion_rank << " " << motion.id << " (D=" << motion_ranked[motion_rank - 1].score
                << ")\n"
                << "background  #" << bg_rank << " " << background.id << " (" << bg_ranked[bg_rank - 1].score
                << " deg)\n"
                << "grounding   scale " << grounded.scale << ", translation (" << grounded.translation[0] << ", "
                << grounded.translation[1] << ")\n"
                << "fusion      " << plan.segments.size() << " segments over " << n << " frames\n"
                << "manifest    " << manifest_path.string() << "\n";
    }
    return kSuccess;
}

std::optional<std::uint64_t> seed_from_env() {
    const char* env = std::getenv("FITCHECK_SEED");
    if (env == nullptr || *env == '\0') return std::nullopt;
    try {
        std::size_t used = 0;
        const auto v = std::stoull(env, &used);
        if (env[used] != '\0') throw std::invalid_argument(env);
        return v;
    } catch (const std::exception&) {
        throw CLI::ValidationError("FITCHECK_SEED must be an unsigned integer");
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
    CLI::App app{"fitcheck: motion/background retrieval, pose grounding and fusion planning"};
    app.name("fitcheck");
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--config", global.config_path, "Configuration file (flat JSON object)");
    app.add_option("--format", global.format, "Output format")->check(CLI::IsMember({"table", "json"}));
    app.add_option("--seed", global.seed, "Random seed (FITCHECK_SEED overrides)");
    app.add_option("--threads", global.threads, "Worker threads for retrieval (0 = all cores)");
    for (const auto& field : config_field_names()) {
        app.add_option_function<std::string>(
            "--" + field, [&global, field](const std::string& v) { global.overrides[field] = v; },
            "Override config field " + field);
    }

    ImuSignatureArgs imu_args;
    auto* imu = app.add_subcommand("imu-signature", "Convert an IMU log into a motion signature");
    imu->add_option("--in", imu_args.in, "IMU JSON-lines log")->required();
    imu->add_option("--out", imu_args.out, "Signature JSON output")->required();
    imu->add_option("--cutoff", imu_args.cutoff, "Low-pass cutoff in Hz");

    RetrieveMotionArgs rm_args;
    auto* rm = app.add_subcommand("retrieve-motion", "Rank database motions against a signature");
    rm->add_option("--db", rm_args.db, "Motion database JSON")->required();
    rm->add_option("--query", rm_args.query, "Query signature JSON")->required();
    rm->add_option("-k,--top-k", rm_args.k, "Number of results")->check(CLI::PositiveNumber);
    rm->add_option("--band", rm_args.band, "Sakoe-Chiba band half-width (default: none)");

    RetrieveBackgroundArgs rb_args;
    auto* rb = app.add_subcommand("retrieve-background", "Rank backgrounds by ground-plane normal angle");
    rb->add_option("--db", rb_args.db, "Background database JSON")->required();
    rb->add_option("--normal", rb_args.normal, "Reference normal: 'x,y,z' or a JSON file")->required();
    rb->add_option("-k,--top-k", rb_args.k, "Number of results")->check(CLI::PositiveNumber);

    GroundPoseArgs gp_args;
    auto* gp = app.add_subcommand("ground-pose", "Scale and translate a pose sequence onto a ground line");
    gp->add_option("--pose", gp_args.pose, "Pose sequence JSON")->required();
    gp->add_option("--ground-y", gp_args.ground_y, "Ground line y in pixels")->required();
    gp->add_option("--center-x", gp_args.center_x, "Subject centre x in pixels")->required();
    gp->add_option("--height-frac", gp_args.height_frac, "Subject height as a fraction of frame height");
    gp->add_option("--conf-threshold", gp_args.conf_threshold, "Minimum keypoint confidence");
    gp->add_option("--out", gp_args.out, "Grounded pose JSON output");

    PlanFusionArgs pf_args;
    auto* pf = app.add_subcommand("plan-fusion", "Plan overlapping segments and blend weights");
    pf->add_option("--frames", pf_args.frames, "Total content frames N")->required();
    pf->add_option("--T", pf_args.t, "Content frames per segment");
    pf->add_option("--overlap", pf_args.overlap, "Overlapping content frames");
    pf->add_option("--out", pf_args.out, "Plan JSON output");

    MraDemoArgs mra_args;
    auto* mra = app.add_subcommand("mra-demo", "Run multi-reference attention on seeded data against the oracle");
    mra->add_option("--frames", mra_args.frames, "Frames including the two references");
    mra->add_option("--height", mra_args.height);
    mra->add_option("--width", mra_args.width);
    mra->add_option("--channels", mra_args.channels);

    SampleReportArgs sr_args;
    auto* sr = app.add_subcommand("sample-report", "Empirical frequencies of the training sampling policies");
    sr->add_option("--draws", sr_args.draws, "Draws per policy");

    PipelineArgs pl_args;
    auto* pl = app.add_subcommand("pipeline", "IMU log -> motion -> background -> grounded pose -> fusion plan");
    pl->add_option("--imu", pl_args.imu, "IMU JSON-lines log")->required();
    pl->add_option("--motion-db", pl_args.motion_db, "Motion database JSON")->required();
    pl->add_option("--background-db", pl_args.background_db, "Background database JSON")->required();
    pl->add_option("--out-dir", pl_args.out_dir, "Directory for artifacts and manifest.json");
    pl->add_option("-k,--top-k", pl_args.k, "Candidates shown per retrieval")->check(CLI::PositiveNumber);
    pl->add_option("--pick", pl_args.pick, "1-based motion rank (prompt if omitted)");
    pl->add_option("--pick-bg", pl_args.pick_bg, "1-based background rank (prompt if omitted)");
    pl->add_option("--normal", pl_args.normal, "Reference ground normal overriding the motion's");
    pl->add_option("--ground-y", pl_args.ground_y, "Ground line y (default: background entry, else 0.9 H)");
    pl->add_option("--center-x", pl_args.center_x, "Subject centre x (default: background entry, else W / 2)");
    pl->add_option("--height-frac", pl_args.height_frac);
    pl->add_option("--conf-threshold", pl_args.conf_threshold);
    pl->add_option("--cutoff", pl_args.cutoff, "IMU low-pass cutoff in Hz");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "fitcheck: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        if (auto env = seed_from_env()) global.seed = *env;

        PipelineConfig config =
            global.config_path.empty() ? PipelineConfig{} : load_config_file(global.config_path);
        for (const auto& field : config_field_names()) {
            if (auto it = global.overrides.find(field); it != global.overrides.end()) {
                apply_override(config, field, it->second);
            }
        }

        Context ctx{config, global, out, err, in};
        if (imu->parsed()) return cmd_imu_signature(ctx, imu_args);
        if (rm->parsed()) return cmd_retrieve_motion(ctx, rm_args);
        if (rb->parsed()) return cmd_retrieve_background(ctx, rb_args);
        if (gp->parsed()) return cmd_ground_pose(ctx, gp_args);
        if (pf->parsed()) return cmd_plan_fusion(ctx, pf_args);
        if (mra->parsed()) return cmd_mra_demo(ctx, mra_args);
        if (sr->parsed()) return cmd_sample_report(ctx, sr_args);
        if (pl->parsed()) return cmd_pipeline(ctx, pl_args);
        err << "fitcheck: no subcommand\n";
        return kUsageError;
    } catch (const CLI::ValidationError& e) {
        err << "fitcheck: " << e.what() << "\n";
        return kUsageError;
    } catch (const DataError& e) {
        err << "fitcheck: " << e.what() << "\n";
        return kDataError;
    } catch (const std::invalid_argument& e) {
        // Config invariant violations and module preconditions on file data.
        err << "fitcheck: " << e.what() << "\n";
        return kDataError;
    } catch (const std::exception& e) {
        err << "fitcheck: " << e.what() << "\n";
        return kDataError;
    }
}

}  // namespace fitcheck::cli
