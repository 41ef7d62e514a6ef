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

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"

#include "hiddenphase/angles.hpp"
#include "hiddenphase/error.hpp"
#include "hiddenphase/phase_dist.hpp"
#include "test_oracles.hpp"

namespace hp {
namespace {

Outcome random_outcome(std::mt19937_64 &gen) {
    return std::bernoulli_distribution(0.5)(gen) ? Outcome::Plus : Outcome::Minus;
}

TEST(PhaseGrid, RejectsInvalidSizes) {
    for (std::size_t k : {0u, 2u, 14u, 15u, 17u, 4097u}) {
        EXPECT_THROW(PhaseGrid{k}, ConfigError) << k;
    }
    EXPECT_NO_THROW(PhaseGrid{16});
    EXPECT_NO_THROW(PhaseGrid{18});
}

TEST(PhaseGrid, UniformNodes) {
    PhaseGrid g(64);
    EXPECT_EQ(g.node(0), 0.0);
    for (std::size_t k = 1; k < g.size(); ++k) {
        EXPECT_NEAR(g.node(k) - g.node(k - 1), g.spacing(), 1e-15);
    }
}

TEST(PhaseGrid, QuadratureOfOneIsExactlyTwoPi) {
    for (std::size_t k : {16u, 18u, 4096u, 4098u}) {
        EXPECT_EQ(PhaseGrid(k).integrate([](double) { return 1.0; }), kTwoPi) << k;
    }
}

TEST(PhaseGrid, QuadratureExactForLowDegreeTrigPolynomials) {
    PhaseGrid g(32);
    // integral of cos^{2m}(x/2) over a period = 2pi (2m)!/(4^m m!^2)
    for (std::size_t m = 1; m < 16; ++m) {
        const double exact = kTwoPi * testing::same_angle_sequence_probability(m, 0);
        const double q =
            g.integrate([m](double x) { return std::pow(std::cos(0.5 * x), 2.0 * m); });
        EXPECT_NEAR(q, exact, 1e-13) << m;
    }
}

TEST(PhaseDistribution, UniformDensity) {
    const auto d = PhaseDistribution::uniform(16);
    ASSERT_EQ(d.weights().size(), 16u);
    for (double w : d.weights()) {
        EXPECT_EQ(w, 1.0 / kTwoPi);
    }
    EXPECT_NEAR(d.total_mass(), 1.0, 1e-15);
    EXPECT_THROW(PhaseDistribution::uniform(10), ConfigError);
}

TEST(PhaseDistribution, UniformPredictsFairOutcomes) {
    const auto d = PhaseDistribution::uniform();
    for (double phi : {0.0, 0.3, 1.7, kPi, 5.9, -2.0}) {
        EXPECT_NEAR(d.prob_plus(phi), 0.5, 1e-12) << phi;
    }
    const auto stats = d.circular_stats();
    EXPECT_LT(stats.concentration, 1e-9);
    EXPECT_FALSE(stats.mean_direction.has_value());
}

TEST(PhaseDistribution, OnePlusUpdate) {
    // (1 + cos lambda) / 2pi: peak 1/pi at 0, P(+ along 0) = 3/4, R = 1/2.
    const auto d = PhaseDistribution::uniform().updated(0.0, Outcome::Plus);
    const auto &g = d.grid();
    for (std::size_t k = 0; k < g.size(); k += 37) {
        EXPECT_NEAR(d.weights()[k], (1.0 + std::cos(g.node(k))) / kTwoPi, 1e-12);
    }
    EXPECT_NEAR(d.weights()[0], 1.0 / kPi, 1e-12);
    EXPECT_NEAR(d.prob_plus(0.0), 0.75, 1e-12);
    const auto stats = d.circular_stats();
    ASSERT_TRUE(stats.mean_direction.has_value());
    EXPECT_NEAR(*stats.mean_direction, 0.0, 1e-12);
    EXPECT_NEAR(stats.concentration, 0.5, 1e-12);
}

TEST(PhaseDistribution, DeltaBehaviour) {
    const auto d = PhaseDistribution::delta(0.0);
    const auto u = d.updated(0.0, Outcome::Plus);
    ASSERT_TRUE(u.is_delta());
    EXPECT_EQ(*u.delta_angle(), 0.0);
    EXPECT_EQ(PhaseDistribution::delta(1.1).prob_plus(1.1), 1.0);
    EXPECT_NEAR(PhaseDistribution::delta(1.1 + kPi).prob_plus(1.1), 0.0, 1e-15);
    const auto stats = PhaseDistribution::delta(1.2).circular_stats();
    EXPECT_NEAR(*stats.mean_direction, 1.2, 1e-15);
    EXPECT_EQ(stats.concentration, 1.0);
    EXPECT_NEAR(*PhaseDistribution::delta(-0.64).delta_angle(), kTwoPi - 0.64, 1e-15);
}

TEST(PhaseDistribution, ImpossibleOutcomeOnDelta) {
    const auto d = PhaseDistribution::delta(0.0);
    EXPECT_THROW(d.updated(kPi, Outcome::Plus), ImpossibleOutcomeError);
    EXPECT_THROW(d.updated(0.0, Outcome::Minus), ImpossibleOutcomeError);
    EXPECT_NO_THROW(d.updated(kPi, Outcome::Minus));
}

TEST(PhaseDistribution, DegenerateUpdate) {
    const PhaseGrid g(16);
    std::vector<double> density(16, 0.0);
    density[8] = 1.0; // all mass at lambda = pi
    const auto d = PhaseDistribution::from_density(g, density);
    EXPECT_NEAR(d.total_mass(), 1.0, 1e-15);
    EXPECT_THROW(d.updated(0.0, Outcome::Plus), DegenerateUpdateError);
    EXPECT_NO_THROW(d.updated(0.0, Outcome::Minus));
}

TEST(PhaseDistribution, FromDensityValidates) {
    const PhaseGrid g(16);
    EXPECT_THROW(PhaseDistribution::from_density(g, std::vector<double>(8, 1.0)), ConfigError);
    EXPECT_THROW(PhaseDistribution::from_density(g, std::vector<double>(16, 0.0)), ConfigError);
    std::vector<double> bad(16, 1.0);
    bad[3] = -1.0;
    EXPECT_THROW(PhaseDistribution::from_density(g, bad), ConfigError);
    bad[3] = std::nan("");
    EXPECT_THROW(PhaseDistribution::from_density(g, bad), ConfigError);
}

TEST(PhaseDistribution, NormalizationPreservedWhileQuadratureIsExact) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    auto d = PhaseDistribution::uniform(4096);
    for (int i = 0; i < 300; ++i) {
        const double phi = angle(gen);
        // Sample realistic outcomes so the posterior keeps mass on the grid.
        const Outcome eta = angle(gen) / kTwoPi < d.prob_plus(phi) ? Outcome::Plus : Outcome::Minus;
        d = std::move(d).updated(phi, eta);
        ASSERT_NEAR(d.total_mass(), 1.0, 1e-12) << i;
        for (double w : d.weights()) {
            ASSERT_TRUE(w >= 0.0 && std::isfinite(w));
        }
    }
}

TEST(PhaseDistribution, NormalizationBeyondExactRegime) {
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    auto d = PhaseDistribution::uniform(64);
    for (int i = 0; i < 200; ++i) {
        const double phi = angle(gen);
        const Outcome eta = angle(gen) / kTwoPi < d.prob_plus(phi) ? Outcome::Plus : Outcome::Minus;
        d = std::move(d).updated(phi, eta);
    }
    EXPECT_NEAR(d.total_mass(), 1.0, 1e-9);
}

TEST(PhaseDistribution, ProbabilitiesSumToOneExactly) {
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    auto d = PhaseDistribution::uniform(256);
    for (int i = 0; i < 50; ++i) {
        const double phi = angle(gen);
        EXPECT_EQ(d.prob_plus(phi) + d.prob_minus(phi), 1.0);
        d = d.updated(angle(gen), random_outcome(gen));
    }
}

TEST(PhaseDistribution, UpdatesCommute) {
    std::mt19937_64 gen(14);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    for (int trial = 0; trial < 100; ++trial) {
        auto base = PhaseDistribution::uniform(512);
        for (int i = 0; i < 5; ++i) {
            base = base.updated(angle(gen), random_outcome(gen));
        }
        const double phi1 = angle(gen), phi2 = angle(gen);
        const Outcome e1 = random_outcome(gen), e2 = random_outcome(gen);
        const auto ab = base.updated(phi1, e1).updated(phi2, e2);
        const auto ba = base.updated(phi2, e2).updated(phi1, e1);
        for (std::size_t k = 0; k < ab.weights().size(); ++k) {
            const double x = ab.weights()[k], y = ba.weights()[k];
            if (x == 0.0 || y == 0.0) {
                ASSERT_NEAR(x, y, 1e-300);
            } else {
                ASSERT_LE(std::abs(x - y) / std::abs(y), 1e-12) << trial << ' ' << k;
            }
        }
    }
}

TEST(PhaseDistribution, SampleOutcomeStatistics) {
    const auto d = PhaseDistribution::uniform();
    Rng rng(2024);
    std::size_t plus = 0;
    constexpr std::size_t n = 1000000;
    for (std::size_t i = 0; i < n; ++i) {
        plus += d.sample_outcome(0.4, rng) == Outcome::Plus;
    }
    const double sigma = testing::binomial_sigma(0.5, n); // 0.0005
    EXPECT_NEAR(static_cast<double>(plus) / n, 0.5, 3 * sigma);
}

TEST(PhaseDistribution, SampleOutcomeCertainAndDeterministic) {
    const auto d = PhaseDistribution::delta(2.0);
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        ASSERT_EQ(d.sample_outcome(2.0, rng), Outcome::Plus);
    }
    const auto u = PhaseDistribution::uniform(64).updated(1.0, Outcome::Minus);
    Rng a(99), b(99);
    for (int i = 0; i < 200; ++i) {
        ASSERT_EQ(u.sample_outcome(0.1 * i, a), u.sample_outcome(0.1 * i, b));
    }
}

TEST(PhaseDistribution, SampleOutcomeConsumesOneDraw) {
    const auto d = PhaseDistribution::uniform(64);
    Rng a(5), b(5);
    d.sample_outcome(0.0, a);
    b.uniform();
    EXPECT_EQ(a.uniform(), b.uniform());
}

} // namespace
} // namespace hp
