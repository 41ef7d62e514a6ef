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

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "hiddenphase/phase_dist.hpp"
#include "hiddenphase/rng.hpp"

namespace hp {

/// Two condensates with definite populations in the two spin modes.
struct DoubleFock {
    std::int64_t n_alpha = 0;
    std::int64_t n_beta = 0;
    friend bool operator==(const DoubleFock &, const DoubleFock &) = default;
};

/// All particles in one transverse single-particle state at angle lambda0.
struct PhaseState {
    double lambda0 = 0.0;
    std::int64_t n_total = 0;
    friend bool operator==(const PhaseState &, const PhaseState &) = default;
};

/// "All or nothing" superposition of both modes fully occupied.
struct Ghz {
    std::int64_t n_total = 0;
    friend bool operator==(const Ghz &, const Ghz &) = default;
};

using InitialState = std::variant<DoubleFock, PhaseState, Ghz>;

/// Throws ConfigError unless every particle count is >= 1.
void validate(const InitialState &state);

/// True for a DoubleFock with unequal populations. Such states get the same
/// flat prior; the apparatus-recoil analysis assumes equal populations.
bool population_warning(const InitialState &state);

std::int64_t particle_count(const InitialState &state);

/// DoubleFock -> uniform, PhaseState -> delta(lambda0).
/// Ghz throws UnsupportedStateError; use ghz_trajectory instead.
PhaseDistribution prior_distribution(const InitialState &state,
                                     std::size_t grid_size = kDefaultGridSize);

inline constexpr double kDefaultBudgetRatio = 10.0;

/// Measurement budget of one trajectory, shared by both parties.
class BudgetGuard {
  public:
    explicit BudgetGuard(std::size_t p_max) : p_max_(p_max) {}

    /// p_max = floor(N / ratio) for the state's particle number N
    /// (keeps P << N). Ghz states allow p_max = N.
    static BudgetGuard for_state(const InitialState &state, double ratio = kDefaultBudgetRatio);

    /// Throws BudgetError if fewer than `n` measurements remain.
    void consume(std::size_t n = 1);

    std::size_t p_max() const { return p_max_; }
    std::size_t consumed() const { return consumed_; }
    std::size_t remaining() const { return p_max_ - consumed_; }

  private:
    std::size_t p_max_;
    std::size_t consumed_ = 0;
};

/// p z-axis outcomes on a GHZ state: the first is +-1 with probability 1/2
/// (one uniform draw), every later one repeats it. p = 0 draws nothing.
/// Throws BudgetError if p > n_total.
std::vector<Outcome> ghz_trajectory(const Ghz &state, std::size_t p, Rng &rng);

/// Probability of a z-outcome sequence on a GHZ state: 1/2 for a non-empty
/// constant sequence, 0 for a mixed one, 1 for the empty sequence.
double ghz_sequence_probability(std::span<const Outcome> outcomes);

} // namespace hp
