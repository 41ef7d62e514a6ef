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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hiddenphase/measurement.hpp"
#include "hiddenphase/phase_dist.hpp"
#include "hiddenphase/states.hpp"

// Exact probabilities of outcome sequences, independent of the sampler.
//
//   joint_probability   the hidden-phase integral: mean over lambda of the
//                       product of cos^2((lambda - phi)/2) for + and
//                       sin^2((lambda - phi)/2) for -; no integral for a
//                       phase state.
//   chain_probability   product of one-step predictive probabilities along
//                       the running posterior.
//   fewbody_*           exact many-boson amplitudes for destructive
//                       single-spin detection, valid at any N.

namespace hp {

/// Periodic trapezoidal rule on `grid_size` nodes; exact while the number
/// of records is below grid_size. Ghz throws UnsupportedStateError.
double joint_probability(const InitialState &state, std::span<const MeasurementRecord> records,
                         std::size_t grid_size = kDefaultGridSize);

double chain_probability(const InitialState &state, std::span<const MeasurementRecord> records,
                         std::size_t grid_size = kDefaultGridSize);

struct SequenceProbability {
    std::vector<Outcome> outcomes;
    double probability = 0.0;

    /// Outcomes as a string of '+' and '-'.
    std::string label() const;
};

inline constexpr std::size_t kMaxEnumerationLength = 20;

/// All 2^P outcome sequences with their joint probability, in lexicographic
/// order with + before -. P > 20 throws ResourceError.
std::vector<SequenceProbability> enumerate_outcomes(const InitialState &state,
                                                    std::span<const MeasurementSpec> plan,
                                                    std::size_t grid_size = kDefaultGridSize);

/// Records with the given specs and outcomes, indexed from 0.
std::vector<MeasurementRecord> make_records(std::span<const MeasurementSpec> plan,
                                            std::span<const Outcome> outcomes);

/// Two-mode boson state sum_n c_n |n, N - n>, stored densely by the
/// population n of mode 1.
class FewBodyState {
  public:
    FewBodyState(std::int64_t n_alpha, std::int64_t n_beta);

    /// Applies (e^{-i phi/2} a1 + eta e^{i phi/2} a2) / sqrt(2) and divides
    /// by sqrt(particles before), so that the squared norm after P steps is
    /// the sequence probability directly.
    void detect(double phi, Outcome eta);

    double squared_norm() const;
    std::int64_t particles() const { return particles_; }
    std::span<const std::complex<double>> amplitudes() const { return amplitudes_; }

  private:
    std::vector<std::complex<double>> amplitudes_;
    std::int64_t particles_;
};

inline constexpr std::int64_t kMaxFewBodyParticles = 100000;

/// Exact probability of the outcome sequence starting from |n_alpha, n_beta>.
/// Throws BudgetError if there are more records than particles and
/// ResourceError above kMaxFewBodyParticles.
double fewbody_joint_probability(std::int64_t n_alpha, std::int64_t n_beta,
                                 std::span<const MeasurementRecord> records);

std::vector<SequenceProbability> fewbody_enumerate(std::int64_t n_alpha, std::int64_t n_beta,
                                                   std::span<const MeasurementSpec> plan);

} // namespace hp
