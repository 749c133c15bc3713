#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fitcheck/imu.hpp"
#include "support/capture_sim.hpp"
#include "support/oracles.hpp"

using namespace fitcheck;

namespace {

std::vector<double> uniform_times(std::size_t n, double rate) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) / rate;
    return t;
}

}  // namespace

TEST_CASE("ImuRecording enforces its invariants") {
    CHECK_THROWS_AS(ImuRecording({{0.0, {0, 0, 0}, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(ImuRecording({{0.0, {0, 0, 0}, 0.0}, {0.0, {0, 0, 0}, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(ImuRecording({{0.0, {0, 0, 0}, 0.0}, {0.1, {0, 0, 0}, 360.0}}), std::invalid_argument);
    CHECK_NOTHROW(ImuRecording({{0.0, {0, 0, 0}, 0.0}, {0.1, {0, 0, 0}, 359.9}}));
}

TEST_CASE("Butterworth coefficients have unit DC gain and a zero at Nyquist") {
    const Biquad q = Biquad::butterworth_lowpass(100.0, 5.0);
    CHECK((q.b0 + q.b1 + q.b2) / (1.0 + q.a1 + q.a2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(q.b0 - q.b1 + q.b2) < 1e-15);
}

TEST_CASE("lowpass_filter passes DC unchanged") {
    std::vector<Vec3> series(100, Vec3{1.0, 0.0, 0.0});
    const auto out = lowpass_filter(series, 100.0, 5.0);
    REQUIRE(out.size() == 100);
    for (std::size_t i = 50; i < out.size(); ++i) {
        CHECK(std::abs(out[i][0] - 1.0) < 1e-6);
        CHECK(std::abs(out[i][1]) < 1e-6);
    }
}

TEST_CASE("lowpass_filter removes 50 Hz content at 100 Hz sampling") {
    // Analytic response of the chosen filter at Nyquist is zero; applied
    // forward and backward the attenuation is |H|^2.
    const double gain = oracle::butterworth_magnitude(50.0, 100.0, 5.0);
    CHECK(gain * gain < 0.05);

    std::vector<Vec3> series;
    for (int i = 0; i < 100; ++i) series.push_back({i % 2 == 0 ? 1.0 : -1.0, 0.0, 0.0});
    const auto out = lowpass_filter(series, 100.0, 5.0);
    // Edge samples carry the reflection-padding transient; check the interior.
    for (std::size_t i = 20; i < 80; ++i) CHECK(std::abs(out[i][0]) < 0.05);
}

TEST_CASE("lowpass_filter attenuation follows the analytic response mid-band") {
    // 10 Hz tone through a 5 Hz cutoff, forward-backward: amplitude |H(10)|^2.
    const double rate = 200.0, f = 10.0;
    std::vector<Vec3> series;
    for (int i = 0; i < 2000; ++i) series.push_back({std::sin(2.0 * std::numbers::pi * f * i / rate), 0.0, 0.0});
    const auto out = lowpass_filter(series, rate, 5.0);
    double peak = 0.0;
    for (std::size_t i = 800; i < 1200; ++i) peak = std::max(peak, std::abs(out[i][0]));
    const double expected = std::pow(oracle::butterworth_magnitude(f, rate, 5.0), 2);
    CHECK(peak == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("lowpass_filter preconditions") {
    std::vector<Vec3> empty;
    CHECK_THROWS_AS(lowpass_filter(empty, 100.0, 5.0), std::invalid_argument);
    std::vector<Vec3> one{{1.0, 2.0, 3.0}};
    CHECK_THROWS_AS(lowpass_filter(one, 100.0, 50.0), std::invalid_argument);
    const Vec3 single = lowpass_filter(one, 100.0, 5.0)[0];
    CHECK(norm(single - Vec3{1.0, 2.0, 3.0}) < 1e-12);
}

TEST_CASE("integrate uses the trapezoidal rule") {
    std::vector<Vec3> zeros(5, Vec3{0, 0, 0});
    for (const auto& v : integrate(zeros, uniform_times(5, 10.0))) CHECK(v == Vec3{0, 0, 0});

    std::vector<Vec3> ones(3, Vec3{1, 0, 0});
    std::vector<double> t{0.0, 0.5, 1.0};
    const auto out = integrate(ones, t);
    CHECK(out[0] == Vec3{0, 0, 0});
    CHECK(out[1] == Vec3{0.5, 0, 0});
    CHECK(out[2] == Vec3{1.0, 0, 0});

    std::vector<double> bad{0.0, 0.5, 0.5};
    CHECK_THROWS_AS(integrate(ones, bad), std::invalid_argument);
    CHECK_THROWS_AS(integrate(ones, std::vector<double>{0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("integrate of sin matches 1 - cos") {
    const std::size_t n = 1001;
    const auto t = uniform_times(n, 1000.0);
    std::vector<Vec3> s;
    for (double ti : t) s.push_back({std::sin(ti), 0.0, 0.0});
    const auto out = integrate(s, t);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(out[i][0] - (1.0 - std::cos(t[i]))) < 1e-4);
}

TEST_CASE("integrate is linear") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial;
        std::vector<double> t(n);
        double acc = 0.0;
        for (auto& ti : t) ti = (acc += 0.001 + std::abs(u(gen)) * 0.01);
        std::vector<Vec3> x(n), y(n), mix(n);
        const double a = u(gen), b = u(gen);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = {u(gen), u(gen), u(gen)};
            y[i] = {u(gen), u(gen), u(gen)};
            mix[i] = a * x[i] + b * y[i];
        }
        const auto ix = integrate(x, t), iy = integrate(y, t), im = integrate(mix, t);
        for (std::size_t i = 0; i < n; ++i)
            for (int k = 0; k < 3; ++k) CHECK(std::abs(im[i][k] - (a * ix[i][k] + b * iy[i][k])) < 1e-9);
    }
}

TEST_CASE("accel_to_translation") {
    SUBCASE("zero acceleration stays at the origin") {
        const auto rec = capture_sim::constant_accel({0, 0, 0}, 10.0, 200, 100.0);
        for (const auto& p : accel_to_translation(rec)) CHECK(p == Vec3{0, 0, 0});
    }
    SUBCASE("constant bias is removed entirely") {
        const auto rec = capture_sim::constant_accel({2, -1, 0.5}, 10.0, 200, 100.0);
        for (const auto& p : accel_to_translation(rec)) CHECK(norm(p) < 1e-9);
    }
    SUBCASE("sin(t) at 1 kHz matches the closed-form double integral of the debiased signal") {
        const double two_pi = 2.0 * std::numbers::pi;
        std::vector<ImuSample> samples;
        for (std::size_t i = 0;; ++i) {
            const double t = static_cast<double>(i) / 1000.0;
            if (t > two_pi) break;
            samples.push_back({t, {std::sin(t), 0.0, 0.0}, 0.0});
        }
        double mean = 0.0;
        for (const auto& s : samples) mean += s.accel[0];
        mean /= static_cast<double>(samples.size());
        const auto out = accel_to_translation(ImuRecording(samples));
        double worst = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const double t = samples[i].t;
            const double expected = t - std::sin(t) - 0.5 * mean * t * t;
            worst = std::max(worst, std::abs(out[i][0] - expected));
        }
        CHECK(worst < 1e-3);
    }
}

TEST_CASE("unwrap_degrees") {
    const std::vector<double> yaw{350, 355, 2, 8};
    CHECK(unwrap_degrees(yaw) == std::vector<double>{350, 355, 362, 368});
    const std::vector<double> back{10, 350, 180, 1};
    const auto u = unwrap_degrees(back);
    CHECK(u == std::vector<double>{10, -10, -180, -359});

    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> deg(0.0, 360.0);
    std::vector<double> w(300);
    for (auto& v : w) v = deg(gen);
    const auto uw = unwrap_degrees(w);
    for (std::size_t i = 1; i < w.size(); ++i) {
        double step = std::fmod(w[i] - w[i - 1] + 540.0, 360.0) - 180.0;
        if (step == -180.0) step = 180.0;
        CHECK(std::abs((uw[i] - uw[i - 1]) - step) < 1e-9);
        CHECK(uw[i] - uw[i - 1] > -180.0);
        CHECK(uw[i] - uw[i - 1] <= 180.0);
    }
}

TEST_CASE("extract_signature") {
    SUBCASE("stationary recording") {
        const auto rec = capture_sim::constant_accel({0, 0, 0}, 42.0, 50, 50.0);
        const auto sig = extract_signature(rec);
        CHECK(sig.size() == 50);
        for (double y : sig.yaw_seq) CHECK(y == 42.0);
        for (const auto& p : sig.translation_seq) CHECK(norm(p) < 1e-12);
        CHECK(sig.sample_rate == doctest::Approx(50.0));
    }
    SUBCASE("scripted spin and walk is recovered") {
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            const auto cap = capture_sim::spin_and_walk(4.0, 100.0, 350.0, 1.0, 0.05, seed);
            const auto sig = extract_signature(cap.recording);
            REQUIRE(sig.size() == cap.true_yaw.size());
            for (std::size_t i = 0; i < sig.size(); ++i) {
                CHECK(std::abs(sig.yaw_seq[i] - cap.true_yaw[i]) < 5.0);
                CHECK(norm(sig.translation_seq[i] - cap.true_translation[i]) < 0.1);
            }
        }
    }
    SUBCASE("outputs are finite") {
        const auto cap = capture_sim::spin_and_walk(2.0, 60.0, 0.0, 0.5, 0.3, 9);
        const auto sig = extract_signature(cap.recording);
        for (std::size_t i = 0; i < sig.size(); ++i) {
            CHECK(std::isfinite(sig.yaw_seq[i]));
            CHECK(std::isfinite(norm(sig.translation_seq[i])));
        }
    }
    SUBCASE("cutoff at or above Nyquist is rejected") {
        const auto rec = capture_sim::constant_accel({0, 0, 0}, 0.0, 20, 8.0);
        CHECK_THROWS_AS(extract_signature(rec), std::invalid_argument);
    }
}
