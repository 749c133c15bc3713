#pragma once

// Synthetic phone captures with known ground truth.

#include <cstdint>
#include <vector>

#include "fitcheck/imu.hpp"

namespace capture_sim {

struct ScriptedCapture {
    fitcheck::ImuRecording recording;
    std::vector<double> true_yaw;             // unwrapped degrees
    std::vector<fitcheck::Vec3> true_translation;
};

/// A full turn (starting at start_yaw) while walking `walk_m` metres along
/// x with a lateral sway, both starting and ending at rest. Acceleration
/// carries Gaussian noise of `accel_noise` m/s^2.
ScriptedCapture spin_and_walk(double duration_s, double rate_hz, double start_yaw, double walk_m,
                              double accel_noise, std::uint64_t seed);

/// Recording with the given acceleration at every sample and fixed yaw.
fitcheck::ImuRecording constant_accel(const fitcheck::Vec3& a, double yaw, std::size_t n, double rate_hz);

}  // namespace capture_sim
