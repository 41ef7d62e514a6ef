// Copyright 2026 The hiddenphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Independent reference values for the tests. Nothing here calls into the
// library's probability code.

#include <cmath>
#include <cstddef>
#include <numbers>

namespace hp::testing {

/// (1/2pi) integral_0^{2pi} cos^{2a}(x/2) sin^{2b}(x/2) dx
///   = (2a)! (2b)! / (4^{a+b} a! b! (a+b)!)
/// i.e. the flat-prior probability of one particular sequence with a plus
/// and b minus outcomes, all measured along the same angle.
inline double same_angle_sequence_probability(std::size_t a, std::size_t b) {
    const auto lf = [](double n) { return std::lgamma(n + 1.0); };
    const double da = static_cast<double>(a);
    const double db = static_cast<double>(b);
    return std::exp(lf(2 * da) + lf(2 * db) - (da + db) * std::log(4.0) - lf(da) - lf(db) -
                    lf(da + db));
}

/// Probability that n same-angle measurements on a flat prior give k plus.
inline double same_angle_count_probability(std::size_t n, std::size_t k) {
    const double dn = static_cast<double>(n);
    const double dk = static_cast<double>(k);
    const double log_binom = std::lgamma(dn + 1) - std::lgamma(dk + 1) - std::lgamma(dn - dk + 1);
    return std::exp(log_binom) * same_angle_sequence_probability(k, n - k);
}

/// Standard deviation of n_plus for n same-angle measurements on a flat
/// prior: pairwise P(++) = 3/8 gives Var = n/4 + n(n-1)/8.
inline double same_angle_count_sd(std::size_t n) {
    const double dn = static_cast<double>(n);
    return std::sqrt(dn / 4.0 + dn * (dn - 1.0) / 8.0);
}

/// Hidden-phase integral by brute-force midpoint quadrature on `nodes`
/// shifted points, with each factor written as (1 + eta cos(lambda - phi))/2.
template <typename Phis, typename Etas>
double brute_force_joint(const Phis &phis, const Etas &etas, std::size_t nodes = 20000) {
    double sum = 0.0;
    for (std::size_t k = 0; k < nodes; ++k) {
        const double lambda = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) /
                              static_cast<double>(nodes);
        double p = 1.0;
        for (std::size_t j = 0; j < phis.size(); ++j) {
            p *= 0.5 * (1.0 + etas[j] * std::cos(lambda - phis[j]));
        }
        sum += p;
    }
    return sum / static_cast<double>(nodes);
}

/// Binomial standard error of a frequency estimate.
inline double binomial_sigma(double p, std::size_t n) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

} // namespace hp::testing
