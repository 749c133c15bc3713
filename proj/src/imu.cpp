// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#include "fitcheck/imu.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fitcheck {

ImuRecording::ImuRecording(std::vector<ImuSample> samples) : samples_(std::move(samples)) {
    if (samples_.size() < 2) {
        throw std::invalid_argument("IMU recording needs at least 2 samples");
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto& s = samples_[i];
        if (!std::isfinite(s.t) || !std::isfinite(s.yaw) || !std::isfinite(s.accel[0]) ||
            !std::isfinite(s.accel[1]) || !std::isfinite(s.accel[2])) {
            throw std::invalid_argument("IMU sample " + std::to_string(i) + " is not finite");
        }
        if (s.yaw < 0.0 || s.yaw >= 360.0) {
            throw std::invalid_argument("IMU sample " + std::to_string(i) + ": yaw outside [0, 360)");
        }
        if (i > 0 && !(s.t > samples_[i - 1].t)) {
            throw std::invalid_argument("IMU timestamps must be strictly increasing (sample " +
                                        std::to_string(i) + ")");
        }
    }
}

double ImuRecording::sample_rate() const {
    return static_cast<double>(samples_.size() - 1) / (samples_.back().t - samples_.front().t);
}

std::vector<double> ImuRecording::timestamps() const {
    std::vector<double> out;
    out.reserve(samples_.size());
    for (const auto& s : samples_) out.push_back(s.t);
    return out;
}

std::vector<Vec3> ImuRecording::accelerations() const {
    std::vector<Vec3> out;
    out.reserve(samples_.size());
    for (const auto& s : samples_) out.push_back(s.accel);
    return out;
}

std::vector<double> ImuRecording::yaws() const {
    std::vector<double> out;
    out.reserve(samples_.size());
    for (const auto& s : samples_) out.push_back(s.yaw);
    return out;
}

void MotionSignature::validate() const {
    if (yaw_seq.empty()) {
        throw std::invalid_argument("motion signature is empty");
    }
    if (yaw_seq.size() != translation_seq.size()) {
        throw std::invalid_argument("motion signature yaw and translation lengths differ");
    }
}

Biquad Biquad::butterworth_lowpass(double sample_rate, double cutoff) {
    if (!(sample_rate > 0.0) || !(cutoff > 0.0)) {
        throw std::invalid_argument("sample rate and cutoff must be positive");
    }
    if (!(cutoff < sample_rate / 2.0)) {
        throw std::invalid_argument("cutoff " + std::to_string(cutoff) + " Hz is not below Nyquist (" +
                                    std::to_string(sample_rate / 2.0) + " Hz)");
    }
    const double k = std::tan(std::numbers::pi * cutoff / sample_rate);
    const double k2 = k * k;
    const double norm = 1.0 / (1.0 + std::numbers::sqrt2 * k + k2);
    Biquad q{};
    q.b0 = k2 * norm;
    q.b1 = 2.0 * q.b0;
    q.b2 = q.b0;
    q.a1 = 2.0 * (k2 - 1.0) * norm;
    q.a2 = (1.0 - std::numbers::sqrt2 * k + k2) * norm;
    return q;
}

namespace {

// Direct form II transposed, state primed so a constant input equal to
// x[0] is a fixed point (unit DC gain).
void run_biquad(const Biquad& q, std::vector<double>& x) {
    if (x.empty()) return;
    double z1 = (1.0 - q.b0) * x[0];
    double z2 = (q.b2 - q.a2) * x[0];
    for (double& v : x) {
        const double in = v;
        const double out = q.b0 * in + z1;
        z1 = q.b1 * in - q.a1 * out + z2;
        z2 = q.b2 * in - q.a2 * out;
        v = out;
    }
}

std::vector<double> filtfilt(const Biquad& q, const std::vector<double>& x, std::size_t pad) {
    const std::size_t n = x.size();
    std::vector<double> ext;
    ext.reserve(n + 2 * pad);
    for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (std::size_t i = 1; i <= pad; ++i) ext.push_back(2.0 * x[n - 1] - x[n - 1 - i]);

    run_biquad(q, ext);
    std::reverse(ext.begin(), ext.end());
    run_biquad(q, ext);
    std::reverse(ext.begin(), ext.end());
    return {ext.begin() + static_cast<std::ptrdiff_t>(pad),
            ext.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

}  // namespace

std::vector<Vec3> lowpass_filter(std::span<const Vec3> series, double sample_rate, double cutoff) {
    if (series.empty()) {
        throw std::invalid_argument("lowpass_filter: empty series");
    }
    const Biquad q = Biquad::butterworth_lowpass(sample_rate, cutoff);
    // Roughly four filter time constants of padding on each side.
    const auto wanted = static_cast<std::size_t>(std::ceil(4.0 * sample_rate / cutoff));
    const std::size_t pad = std::min(wanted, series.size() - 1);

    std::vector<Vec3> out(series.size());
    std::vector<double> channel(series.size());
    for (std::size_t axis = 0; axis < 3; ++axis) {
        for (std::size_t i = 0; i < series.size(); ++i) channel[i] = series[i][axis];
        const auto filtered = filtfilt(q, channel, pad);
        for (std::size_t i = 0; i < series.size(); ++i) out[i][axis] = filtered[i];
    }
    return out;
}

std::vector<Vec3> integrate(std::span<const Vec3> series, std::span<const double> timestamps) {
    if (series.size() != timestamps.size()) {
        throw std::invalid_argument("integrate: series and timestamps differ in length");
    }
    if (series.empty()) {
        throw std::invalid_argument("integrate: empty series");
    }
    std::vector<Vec3> out(series.size());
    out[0] = {0.0, 0.0, 0.0};
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double dt = timestamps[i] - timestamps[i - 1];
        if (!(dt > 0.0)) {
            throw std::invalid_argument("integrate: timestamps not strictly increasing at index " +
                                        std::to_string(i));
        }
        out[i] = out[i - 1] + (0.5 * dt) * (series[i] + series[i - 1]);
    }
    return out;
}

std::vector<Vec3> debias(std::span<const Vec3> series) {
    Vec3 mean{0.0, 0.0, 0.0};
    for (const auto& v : series) mean = mean + v;
    mean = (1.0 / static_cast<double>(series.size())) * mean;
    std::vector<Vec3> out;
    out.reserve(series.size());
    for (const auto& v : series) out.push_back(v - mean);
    return out;
}

std::vector<Vec3> accel_to_translation(const ImuRecording& rec, double cutoff) {
    const auto t = rec.timestamps();
    const auto accel = rec.accelerations();
    const auto filtered = lowpass_filter(accel, rec.sample_rate(), cutoff);
    const auto velocity = integrate(debias(filtered), t);
    return integrate(velocity, t);
}

std::vector<double> unwrap_degrees(std::span<const double> yaw) {
    std::vector<double> out;
    out.reserve(yaw.size());
    for (std::size_t i = 0; i < yaw.size(); ++i) {
        if (i == 0) {
            out.push_back(yaw[0]);
            continue;
        }
        double step = std::fmod(yaw[i] - yaw[i - 1], 360.0);
        if (step > 180.0) step -= 360.0;
        if (step <= -180.0) step += 360.0;
        out.push_back(out.back() + step);
    }
    return out;
}

MotionSignature extract_signature(const ImuRecording& rec, double cutoff) {
    MotionSignature sig;
    sig.yaw_seq = unwrap_degrees(rec.yaws());
    sig.translation_seq = accel_to_translation(rec, cutoff);
    sig.sample_rate = rec.sample_rate();
    return sig;
}

}  // namespace fitcheck
