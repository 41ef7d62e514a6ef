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

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hiddenphase/angles.hpp"
#include "hiddenphase/rng.hpp"

namespace hp {

inline constexpr std::size_t kDefaultGridSize = 4096;

/// Result of one transverse spin measurement (eta = +1 or -1).
enum class Outcome : int { Minus = -1, Plus = 1 };

constexpr double sign(Outcome eta) { return eta == Outcome::Plus ? 1.0 : -1.0; }
constexpr char symbol(Outcome eta) { return eta == Outcome::Plus ? '+' : '-'; }

/// K uniformly spaced nodes 2 pi k / K on [0, 2 pi), K even and >= 16.
/// Copies share one immutable cosine/sine table.
class PhaseGrid {
  public:
    explicit PhaseGrid(std::size_t size = kDefaultGridSize);

    std::size_t size() const { return tables_->cos.size(); }
    double node(std::size_t k) const;
    double spacing() const;
    std::span<const double> cos_table() const { return tables_->cos; }
    std::span<const double> sin_table() const { return tables_->sin; }

    /// Periodic trapezoidal rule: integral over [0, 2 pi) of f, from node
    /// values. Exact for trigonometric polynomials of degree < K.
    template <typename F> double integrate(F &&f) const {
        double sum = 0.0;
        for (std::size_t k = 0; k < size(); ++k) {
            sum += f(node(k));
        }
        return sum / static_cast<double>(size()) * kTwoPi;
    }

    friend bool operator==(const PhaseGrid &a, const PhaseGrid &b) {
        return a.size() == b.size();
    }

  private:
    struct Tables {
        std::vector<double> cos;
        std::vector<double> sin;
    };
    std::shared_ptr<const Tables> tables_;
};

struct CircularStats {
    /// arg of the first trigonometric moment in (-pi, pi]; empty when the
    /// concentration is below 1e-9.
    std::optional<double> mean_direction;
    /// |first trigonometric moment| in [0, 1].
    double concentration = 0.0;
};

/// Probability density g(lambda) over the relative phase, either sampled on
/// a PhaseGrid or an exact point mass. Values are immutable: updates return
/// a new distribution. Weights are densities (1/radian) normalized so that
/// (2 pi / K) sum w = 1.
class PhaseDistribution {
  public:
    static PhaseDistribution uniform(std::size_t grid_size = kDefaultGridSize);
    static PhaseDistribution delta(double lambda0, std::size_t grid_size = kDefaultGridSize);
    /// Normalizes the given non-negative node values.
    static PhaseDistribution from_density(const PhaseGrid &grid, std::vector<double> density);

    const PhaseGrid &grid() const { return grid_; }
    bool is_delta() const { return delta_.has_value(); }
    /// Point-mass angle in [0, 2 pi), if this is a delta.
    std::optional<double> delta_angle() const { return delta_; }
    /// Density at the grid nodes; empty for a delta.
    std::span<const double> weights() const { return weights_; }

    /// integral g(lambda) exp(i lambda) d lambda.
    std::complex<double> first_moment() const { return moment_; }
    /// (2 pi / K) sum w, or 1 for a delta.
    double total_mass() const;

    /// integral g(lambda) cos(lambda - phi) d lambda.
    double mean_cos(double phi) const;
    /// Probability of +1 along phi, clamped to [0, 1].
    double prob_plus(double phi) const;
    double prob_minus(double phi) const { return 1.0 - prob_plus(phi); }
    double prob(double phi, Outcome eta) const {
        return eta == Outcome::Plus ? prob_plus(phi) : prob_minus(phi);
    }

    CircularStats circular_stats() const;

    /// Posterior after observing eta along phi: density times
    /// [1 + eta cos(lambda - phi)] / 2, renormalized.
    /// Throws DegenerateUpdateError if nothing survives on the grid and
    /// ImpossibleOutcomeError for a zero-likelihood outcome of a delta.
    PhaseDistribution updated(double phi, Outcome eta) const &;
    PhaseDistribution updated(double phi, Outcome eta) &&;

    /// Draws exactly one uniform variate; +1 iff u < prob_plus(phi).
    Outcome sample_outcome(double phi, Rng &rng) const;

  private:
    PhaseDistribution(PhaseGrid grid, std::vector<double> weights, std::optional<double> delta);
    void apply_update(double phi, Outcome eta);
    void renormalize(double raw_sum);

    PhaseGrid grid_;
    std::vector<double> weights_;
    std::optional<double> delta_;
    std::complex<double> moment_{0.0, 0.0};
};

/// Free-function spellings of the member operations.
inline PhaseDistribution update(const PhaseDistribution &d, double phi, Outcome eta) {
    return d.updated(phi, eta);
}
inline double prob_plus(const PhaseDistribution &d, double phi) { return d.prob_plus(phi); }
inline CircularStats circular_stats(const PhaseDistribution &d) { return d.circular_stats(); }

} // namespace hp
