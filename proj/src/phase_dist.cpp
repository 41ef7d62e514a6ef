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

#include "hiddenphase/phase_dist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hiddenphase/angles.hpp"
#include "hiddenphase/error.hpp"
#include "hiddenphase/kernels.hpp"

namespace hp {

namespace {

constexpr double kUndefinedDirection = 1e-9;

} // namespace

PhaseGrid::PhaseGrid(std::size_t size) {
    if (size < 16 || size % 2 != 0) {
        throw ConfigError("grid size must be even and >= 16, got " + std::to_string(size));
    }
    auto tables = std::make_shared<Tables>();
    tables->cos.resize(size);
    tables->sin.resize(size);
    for (std::size_t k = 0; k < size; ++k) {
        const double x = kTwoPi * static_cast<double>(k) / static_cast<double>(size);
        tables->cos[k] = std::cos(x);
        tables->sin[k] = std::sin(x);
    }
    tables_ = std::move(tables);
}

double PhaseGrid::node(std::size_t k) const {
    return kTwoPi * static_cast<double>(k) / static_cast<double>(size());
}

double PhaseGrid::spacing() const { return kTwoPi / static_cast<double>(size()); }

PhaseDistribution::PhaseDistribution(PhaseGrid grid, std::vector<double> weights,
                                     std::optional<double> delta)
    : grid_(std::move(grid)), weights_(std::move(weights)), delta_(delta) {}

PhaseDistribution PhaseDistribution::uniform(std::size_t grid_size) {
    PhaseGrid grid(grid_size);
    std::vector<double> w(grid.size(), 1.0 / kTwoPi);
    PhaseDistribution d(std::move(grid), std::move(w), std::nullopt);
    const auto m = kernels::omp::moments(d.weights_, d.grid_.cos_table(), d.grid_.sin_table());
    const double h = kTwoPi / static_cast<double>(d.grid_.size());
    d.moment_ = {h * m.cos_sum, h * m.sin_sum};
    return d;
}

PhaseDistribution PhaseDistribution::delta(double lambda0, std::size_t grid_size) {
    const double angle = reduce_angle(lambda0);
    PhaseDistribution d(PhaseGrid(grid_size), {}, angle);
    d.moment_ = std::polar(1.0, angle);
    return d;
}

PhaseDistribution PhaseDistribution::from_density(const PhaseGrid &grid,
                                                  std::vector<double> density) {
    if (density.size() != grid.size()) {
        throw ConfigError("density has " + std::to_string(density.size()) +
                          " values for a grid of " + std::to_string(grid.size()));
    }
    double sum = 0.0;
    for (double x : density) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw ConfigError("density values must be finite and non-negative");
        }
        sum += x;
    }
    if (!(sum > 0.0)) {
        throw ConfigError("density must have positive mass");
    }
    PhaseDistribution d(grid, std::move(density), std::nullopt);
    d.renormalize(sum);
    return d;
}

void PhaseDistribution::renormalize(double raw_sum) {
    const double factor = static_cast<double>(grid_.size()) / (kTwoPi * raw_sum);
    const auto m =
        kernels::omp::scale_and_moments(weights_, grid_.cos_table(), grid_.sin_table(), factor);
    const double h = kTwoPi / static_cast<double>(grid_.size());
    moment_ = {h * m.cos_sum, h * m.sin_sum};
}

double PhaseDistribution::total_mass() const {
    if (delta_) {
        return 1.0;
    }
    double sum = 0.0;
    for (double x : weights_) {
        sum += x;
    }
    return sum / static_cast<double>(weights_.size()) * kTwoPi;
}

double PhaseDistribution::mean_cos(double phi) const {
    if (delta_) {
        return std::cos(*delta_ - reduce_angle(phi));
    }
    return std::cos(phi) * moment_.real() + std::sin(phi) * moment_.imag();
}

double PhaseDistribution::prob_plus(double phi) const {
    return std::clamp(0.5 * (1.0 + mean_cos(phi)), 0.0, 1.0);
}

CircularStats PhaseDistribution::circular_stats() const {
    if (delta_) {
        return {wrap_angle(*delta_), 1.0};
    }
    const double r = std::min(1.0, std::abs(moment_));
    if (r < kUndefinedDirection) {
        return {std::nullopt, r};
    }
    return {std::arg(moment_), r};
}

void PhaseDistribution::apply_update(double phi, Outcome eta) {
    phi = reduce_angle(phi);
    if (delta_) {
        const double likelihood = 0.5 * (1.0 + sign(eta) * std::cos(*delta_ - phi));
        if (likelihood == 0.0) {
            throw ImpossibleOutcomeError(std::string("outcome ") + symbol(eta) +
                                         " has zero likelihood for a phase state at " +
                                         std::to_string(*delta_) + " measured along " +
                                         std::to_string(phi));
        }
        return;
    }
    const double sum = kernels::omp::reweight(weights_, grid_.cos_table(), grid_.sin_table(),
                                              std::cos(phi), std::sin(phi), sign(eta));
    if (!(sum > 0.0)) {
        throw DegenerateUpdateError(std::string("posterior vanishes on the grid after outcome ") +
                                    symbol(eta) + " along " + std::to_string(phi));
    }
    renormalize(sum);
}

PhaseDistribution PhaseDistribution::updated(double phi, Outcome eta) const & {
    PhaseDistribution next(*this);
    next.apply_update(phi, eta);
    return next;
}

PhaseDistribution PhaseDistribution::updated(double phi, Outcome eta) && {
    apply_update(phi, eta);
    return std::move(*this);
}

Outcome PhaseDistribution::sample_outcome(double phi, Rng &rng) const {
    const double u = rng.uniform();
    return u < prob_plus(phi) ? Outcome::Plus : Outcome::Minus;
}

} // namespace hp
