// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "fitcheck/vec3.hpp"

namespace fitcheck {

struct ImuSample {
    double t = 0.0;   // seconds
    Vec3 accel{};     // m/s^2, device frame, gravity removed
    double yaw = 0.0; // degrees in [0, 360)
};

/// A handheld phone recording. Timestamps are strictly increasing and
/// there are at least two samples; the constructor enforces both.
class ImuRecording {
public:
    explicit ImuRecording(std::vector<ImuSample> samples);

    const std::vector<ImuSample>& samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }

    /// Mean sampling rate in Hz over the whole recording.
    double sample_rate() const;

    std::vector<double> timestamps() const;
    std::vector<Vec3> accelerations() const;
    std::vector<double> yaws() const;

private:
    std::vector<ImuSample> samples_;
};

/// Retrieval query: unwrapped yaw (degrees) and translation (metres) per
/// sample. Both sequences share one length.
struct MotionSignature {
    std::vector<double> yaw_seq;
    std::vector<Vec3> translation_seq;
    double sample_rate = 0.0;

    std::size_t size() const noexcept { return yaw_seq.size(); }
    void validate() const;
};

inline constexpr double kDefaultCutoffHz = 5.0;

/// Second-order Butterworth low-pass section (bilinear transform with
/// prewarping), normalised so a0 = 1.
struct Biquad {
    double b0, b1, b2, a1, a2;

    static Biquad butterworth_lowpass(double sample_rate, double cutoff);
};

/// Zero-phase low-pass: the Butterworth biquad runs forward then backward
/// over an odd-reflected extension of the series, with the filter state
/// started at steady state for the first extended sample. Throws
/// std::invalid_argument if the series is empty or cutoff is not below
/// Nyquist.
std::vector<Vec3> lowpass_filter(std::span<const Vec3> series, double sample_rate, double cutoff);

/// Cumulative trapezoidal integral starting at the origin.
std::vector<Vec3> integrate(std::span<const Vec3> series, std::span<const double> timestamps);

/// Mean-removed acceleration, i.e. the constant-bias drift correction.
std::vector<Vec3> debias(std::span<const Vec3> series);

/// lowpass -> debias -> integrate -> integrate.
std::vector<Vec3> accel_to_translation(const ImuRecording& rec, double cutoff = kDefaultCutoffHz);

/// Makes a wrapped angle sequence continuous: each output step equals the
/// input step mapped into (-180, 180].
std::vector<double> unwrap_degrees(std::span<const double> yaw);

MotionSignature extract_signature(const ImuRecording& rec, double cutoff = kDefaultCutoffHz);

}  // namespace fitcheck
