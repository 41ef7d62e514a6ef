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

#include "hiddenphase/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "hiddenphase/angles.hpp"
#include "hiddenphase/error.hpp"

namespace hp {

namespace {

/// cos^2(x/2) for +, sin^2(x/2) for -.
double half_angle_factor(double x, Outcome eta) {
    const double c = std::cos(0.5 * x);
    const double s = std::sin(0.5 * x);
    return eta == Outcome::Plus ? c * c : s * s;
}

void reject_ghz(const InitialState &state) {
    if (std::holds_alternative<Ghz>(state)) {
        throw UnsupportedStateError(
            "GHZ sequences are not hidden-phase products; use ghz_sequence_probability");
    }
}

} // namespace

std::string SequenceProbability::label() const {
    std::string s;
    s.reserve(outcomes.size());
    for (Outcome o : outcomes) {
        s.push_back(symbol(o));
    }
    return s;
}

std::vector<MeasurementRecord> make_records(std::span<const MeasurementSpec> plan,
                                            std::span<const Outcome> outcomes) {
    std::vector<MeasurementRecord> out;
    out.reserve(plan.size());
    for (std::size_t i = 0; i < plan.size() && i < outcomes.size(); ++i) {
        out.push_back({MeasurementSpec::at(plan[i].party, plan[i].phi), outcomes[i], i});
    }
    return out;
}

double joint_probability(const InitialState &state, std::span<const MeasurementRecord> records,
                         std::size_t grid_size) {
    validate(state);
    reject_ghz(state);
    if (const auto *ps = std::get_if<PhaseState>(&state)) {
        double p = 1.0;
        for (const auto &r : records) {
            p *= half_angle_factor(ps->lambda0 - r.spec.phi, r.eta);
        }
        return p;
    }
    const PhaseGrid grid(grid_size);
    double sum = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double lambda = grid.node(k);
        double p = 1.0;
        for (const auto &r : records) {
            p *= half_angle_factor(lambda - r.spec.phi, r.eta);
        }
        sum += p;
    }
    return std::clamp(sum / static_cast<double>(grid.size()), 0.0, 1.0);
}

double chain_probability(const InitialState &state, std::span<const MeasurementRecord> records,
                         std::size_t grid_size) {
    reject_ghz(state);
    PhaseDistribution d = prior_distribution(state, grid_size);
    double p = 1.0;
    for (const auto &r : records) {
        const double step = d.prob(r.spec.phi, r.eta);
        p *= step;
        if (step == 0.0) {
            return 0.0;
        }
        d = std::move(d).updated(r.spec.phi, r.eta);
    }
    return p;
}

std::vector<SequenceProbability> enumerate_outcomes(const InitialState &state,
                                                    std::span<const MeasurementSpec> plan,
                                                    std::size_t grid_size) {
    validate(state);
    reject_ghz(state);
    if (plan.size() > kMaxEnumerationLength) {
        throw ResourceError("enumeration of " + std::to_string(plan.size()) +
                            " measurements exceeds the cap of " +
                            std::to_string(kMaxEnumerationLength));
    }
    const std::size_t depth = plan.size();
    std::vector<SequenceProbability> out;
    out.reserve(std::size_t{1} << depth);
    std::vector<Outcome> current(depth);

    // Depth-first over outcomes, carrying the integrand prefix product at
    // every node (or at lambda0 for a phase state).
    std::vector<double> nodes;
    if (const auto *ps = std::get_if<PhaseState>(&state)) {
        nodes = {ps->lambda0};
    } else {
        const PhaseGrid grid(grid_size);
        nodes.resize(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) {
            nodes[k] = grid.node(k);
        }
    }
    std::vector<std::vector<double>> prefix(depth + 1, std::vector<double>(nodes.size(), 1.0));

    std::function<void(std::size_t)> descend = [&](std::size_t level) {
        if (level == depth) {
            double sum = 0.0;
            for (double v : prefix[level]) {
                sum += v;
            }
            out.push_back({current, sum / static_cast<double>(nodes.size())});
            return;
        }
        for (Outcome eta : {Outcome::Plus, Outcome::Minus}) {
            current[level] = eta;
            const double phi = plan[level].phi;
            for (std::size_t k = 0; k < nodes.size(); ++k) {
                prefix[level + 1][k] = prefix[level][k] * half_angle_factor(nodes[k] - phi, eta);
            }
            descend(level + 1);
        }
    };
    descend(0);
    return out;
}

FewBodyState::FewBodyState(std::int64_t n_alpha, std::int64_t n_beta)
    : amplitudes_(static_cast<std::size_t>(n_alpha) + 1, {0.0, 0.0}),
      particles_(n_alpha + n_beta) {
    if (n_alpha < 0 || n_beta < 0 || particles_ < 1) {
        throw ConfigError("few-body state needs non-negative populations and N >= 1");
    }
    amplitudes_.back() = {1.0, 0.0};
}

void FewBodyState::detect(double phi, Outcome eta) {
    if (particles_ < 1) {
        throw BudgetError("no particles left to detect");
    }
    const std::complex<double> c1 = std::polar(1.0, -0.5 * phi);
    const std::complex<double> c2 = sign(eta) * std::polar(1.0, 0.5 * phi);
    const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(particles_));
    std::vector<std::complex<double>> next(amplitudes_.size(), {0.0, 0.0});
    for (std::size_t n1 = 0; n1 < amplitudes_.size(); ++n1) {
        const std::complex<double> a = amplitudes_[n1];
        if (a == 0.0) {
            continue;
        }
        const auto n2 = particles_ - static_cast<std::int64_t>(n1);
        if (n1 > 0) {
            next[n1 - 1] += c1 * std::sqrt(static_cast<double>(n1)) * scale * a;
        }
        if (n2 > 0) {
            next[n1] += c2 * std::sqrt(static_cast<double>(n2)) * scale * a;
        }
    }
    amplitudes_ = std::move(next);
    --particles_;
}

double FewBodyState::squared_norm() const {
    double s = 0.0;
    for (const auto &a : amplitudes_) {
        s += std::norm(a);
    }
    return s;
}

namespace {

void check_fewbody(std::int64_t n_alpha, std::int64_t n_beta, std::size_t p) {
    if (n_alpha < 0 || n_beta < 0 || n_alpha + n_beta < 1) {
        throw ConfigError("few-body populations must be non-negative with N >= 1");
    }
    if (n_alpha + n_beta > kMaxFewBodyParticles) {
        throw ResourceError("few-body oracle is limited to " +
                            std::to_string(kMaxFewBodyParticles) + " particles");
    }
    if (p > static_cast<std::size_t>(n_alpha + n_beta)) {
        throw BudgetError(std::to_string(p) + " detections exceed " +
                          std::to_string(n_alpha + n_beta) + " particles");
    }
}

} // namespace

double fewbody_joint_probability(std::int64_t n_alpha, std::int64_t n_beta,
                                 std::span<const MeasurementRecord> records) {
    check_fewbody(n_alpha, n_beta, records.size());
    FewBodyState state(n_alpha, n_beta);
    for (const auto &r : records) {
        state.detect(r.spec.phi, r.eta);
    }
    return state.squared_norm();
}

std::vector<SequenceProbability> fewbody_enumerate(std::int64_t n_alpha, std::int64_t n_beta,
                                                   std::span<const MeasurementSpec> plan) {
    check_fewbody(n_alpha, n_beta, plan.size());
    if (plan.size() > kMaxEnumerationLength) {
        throw ResourceError("enumeration of " + std::to_string(plan.size()) +
                            " measurements exceeds the cap of " +
                            std::to_string(kMaxEnumerationLength));
    }
    std::vector<SequenceProbability> out;
    std::vector<Outcome> current(plan.size());
    std::function<void(std::size_t, const FewBodyState &)> descend =
        [&](std::size_t level, const FewBodyState &s) {
            if (level == plan.size()) {
                out.push_back({current, s.squared_norm()});
                return;
            }
            for (Outcome eta : {Outcome::Plus, Outcome::Minus}) {
                current[level] = eta;
                FewBodyState next = s;
                next.detect(plan[level].phi, eta);
                descend(level + 1, next);
            }
        };
    descend(0, FewBodyState(n_alpha, n_beta));
    return out;
}

} // namespace hp
