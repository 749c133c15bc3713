// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#include "fitcheck/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace fitcheck {

ChiSquareResult chi_square_test(std::span<const std::size_t> counts, std::span<const double> probs) {
    if (counts.size() != probs.size() || counts.empty()) {
        throw std::invalid_argument("chi_square_test: counts and probabilities must match");
    }
    std::size_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) {
        throw std::invalid_argument("chi_square_test: no observations");
    }

    ChiSquareResult r;
    std::size_t live = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double expected = probs[i] * static_cast<double>(total);
        if (expected == 0.0) {
            if (counts[i] != 0) {
                r.statistic = std::numeric_limits<double>::infinity();
                r.p_value = 0.0;
                return r;
            }
            continue;
        }
        ++live;
        const double d = static_cast<double>(counts[i]) - expected;
        r.statistic += d * d / expected;
    }
    r.dof = live > 0 ? live - 1 : 0;
    if (r.dof == 0) {
        r.p_value = 1.0;
        return r;
    }
    const boost::math::chi_squared dist(static_cast<double>(r.dof));
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    return r;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("pearson_correlation: need two equally long samples");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace fitcheck
