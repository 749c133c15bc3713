// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#include "fitcheck/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace fitcheck {

bool ranks_before(const RankedResult& a, const RankedResult& b) {
    if (a.score != b.score) return a.score < b.score;
    return a.id < b.id;
}

std::vector<RankedResult> top_k(std::vector<RankedResult> scored, std::size_t k) {
    const std::size_t keep = std::min(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end(),
                      ranks_before);
    scored.resize(keep);
    return scored;
}

namespace {

template <typename Entry>
void check_database(std::span<const Entry> db, std::size_t k) {
    if (db.empty()) {
        throw std::invalid_argument("retrieval database is empty");
    }
    if (k == 0) {
        throw std::invalid_argument("k must be at least 1");
    }
    std::unordered_set<std::string> seen;
    for (const auto& e : db) {
        if (!seen.insert(e.id).second) {
            throw std::invalid_argument("duplicate database id '" + e.id + "'");
        }
    }
}

}  // namespace

std::vector<RankedResult> retrieve_motions(std::span<const MotionEntry> db, const MotionSignature& query,
                                           std::size_t k, double alpha, const RetrievalOptions& opts) {
    check_database(db, k);
    query.validate();
    for (const auto& e : db) e.signature.validate();

    std::vector<RankedResult> scored(db.size());
    auto score_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            scored[i] = {db[i].id, combined_motion_distance(query, db[i].signature, alpha, opts.dtw)};
        }
    };

    unsigned threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, db.size()));
    if (threads <= 1) {
        score_range(0, db.size());
    } else {
        // Each candidate writes only its own slot, so scores are identical
        // for any thread count.
        std::vector<std::jthread> workers;
        const std::size_t chunk = (db.size() + threads - 1) / threads;
        for (std::size_t begin = 0; begin < db.size(); begin += chunk) {
            workers.emplace_back(score_range, begin, std::min(db.size(), begin + chunk));
        }
    }
    return top_k(std::move(scored), k);
}

bool is_unit(const Vec3& n, double tol) { return std::abs(norm(n) - 1.0) <= tol; }

double normal_angle(const Vec3& n1, const Vec3& n2) {
    if (!is_unit(n1) || !is_unit(n2)) {
        throw std::invalid_argument("normal_angle: inputs must be unit vectors");
    }
    const double c = std::clamp(dot(n1, n2), -1.0, 1.0);
    return std::acos(c) * 180.0 / std::numbers::pi;
}

std::vector<RankedResult> retrieve_backgrounds(std::span<const BackgroundEntry> db, const Vec3& reference_normal,
                                               std::size_t k) {
    check_database(db, k);
    std::vector<RankedResult> scored;
    scored.reserve(db.size());
    for (const auto& e : db) {
        scored.push_back({e.id, normal_angle(reference_normal, e.ground_normal)});
    }
    return top_k(std::move(scored), k);
}

Orientation classify_orientation(double yaw) {
    if (!(yaw >= 0.0 && yaw < 360.0)) {
        throw std::invalid_argument("classify_orientation: yaw outside [0, 360)");
    }
    if (yaw >= 330.0 || yaw <= 30.0) return Orientation::Front;
    if (yaw >= 150.0 && yaw <= 210.0) return Orientation::Back;
    return Orientation::Other;
}

const char* to_string(Orientation o) {
    switch (o) {
        case Orientation::Front: return "front";
        case Orientation::Back: return "back";
        case Orientation::Other: return "other";
    }
    return "other";
}

}  // namespace fitcheck
