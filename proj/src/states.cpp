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

#include "hiddenphase/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hiddenphase/error.hpp"

namespace hp {

namespace {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};

void require_positive(std::int64_t n, const char *field) {
    if (n < 1) {
        throw ConfigError(std::string(field) + " must be >= 1, got " + std::to_string(n));
    }
}

} // namespace

void validate(const InitialState &state) {
    std::visit(overloaded{
                   [](const DoubleFock &s) {
                       require_positive(s.n_alpha, "state.n_alpha");
                       require_positive(s.n_beta, "state.n_beta");
                   },
                   [](const PhaseState &s) {
                       require_positive(s.n_total, "state.n_total");
                       if (!std::isfinite(s.lambda0)) {
                           throw ConfigError("state.lambda0 must be finite");
                       }
                   },
                   [](const Ghz &s) { require_positive(s.n_total, "state.n_total"); },
               },
               state);
}

bool population_warning(const InitialState &state) {
    const auto *fock = std::get_if<DoubleFock>(&state);
    return fock != nullptr && fock->n_alpha != fock->n_beta;
}

std::int64_t particle_count(const InitialState &state) {
    return std::visit(overloaded{
                          [](const DoubleFock &s) { return s.n_alpha + s.n_beta; },
                          [](const PhaseState &s) { return s.n_total; },
                          [](const Ghz &s) { return s.n_total; },
                      },
                      state);
}

PhaseDistribution prior_distribution(const InitialState &state, std::size_t grid_size) {
    validate(state);
    return std::visit(
        overloaded{
            [&](const DoubleFock &) { return PhaseDistribution::uniform(grid_size); },
            [&](const PhaseState &s) { return PhaseDistribution::delta(s.lambda0, grid_size); },
            [](const Ghz &) -> PhaseDistribution {
                throw UnsupportedStateError(
                    "a GHZ state has no phase-distribution representation; use ghz_trajectory");
            },
        },
        state);
}

BudgetGuard BudgetGuard::for_state(const InitialState &state, double ratio) {
    validate(state);
    if (!(ratio >= 1.0)) {
        throw ConfigError("budget.ratio must be >= 1");
    }
    const auto n = static_cast<double>(particle_count(state));
    if (std::holds_alternative<Ghz>(state)) {
        return BudgetGuard(static_cast<std::size_t>(n));
    }
    return BudgetGuard(static_cast<std::size_t>(std::floor(n / ratio)));
}

void BudgetGuard::consume(std::size_t n) {
    if (n > remaining()) {
        throw BudgetError("measurement budget exhausted: " + std::to_string(consumed_) + " of " +
                          std::to_string(p_max_) + " used, " + std::to_string(n) + " requested");
    }
    consumed_ += n;
}

std::vector<Outcome> ghz_trajectory(const Ghz &state, std::size_t p, Rng &rng) {
    validate(state);
    if (p > static_cast<std::size_t>(state.n_total)) {
        throw BudgetError("GHZ trajectory of " + std::to_string(p) + " measurements exceeds " +
                          std::to_string(state.n_total) + " particles");
    }
    if (p == 0) {
        return {};
    }
    const Outcome first = rng.uniform() < 0.5 ? Outcome::Plus : Outcome::Minus;
    return std::vector<Outcome>(p, first);
}

double ghz_sequence_probability(std::span<const Outcome> outcomes) {
    if (outcomes.empty()) {
        return 1.0;
    }
    const bool constant = std::all_of(outcomes.begin(), outcomes.end(),
                                      [&](Outcome o) { return o == outcomes.front(); });
    return constant ? 0.5 : 0.0;
}

} // namespace hp
