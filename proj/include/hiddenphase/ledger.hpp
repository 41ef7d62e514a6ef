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

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "hiddenphase/measurement.hpp"
#include "hiddenphase/phase_dist.hpp"

// Angular-momentum bookkeeping, hbar = 1. A single spin outcome carries
// +-1/2 along the measured axis.

namespace hp {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    double norm() const { return std::hypot(x, y); }
    Vec2 &operator+=(const Vec2 &o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    friend bool operator==(const Vec2 &, const Vec2 &) = default;
};

struct LedgerEntry {
    std::size_t index = 0;
    double phi = 0.0;
    Outcome eta = Outcome::Plus;
    /// Mean spin along phi before the measurement, (1/2) integral g cos(lambda - phi).
    double pre_expectation = 0.0;
    /// Transfer to the apparatus: -(eta/2 - pre_expectation).
    double recoil = 0.0;

    friend bool operator==(const LedgerEntry &, const LedgerEntry &) = default;
};

/// Recoil history of one party's apparatus. For a grid distribution the
/// pre-measurement expectation is taken over the running posterior, i.e.
/// conditional on everything measured so far.
class ApparatusLedger {
  public:
    explicit ApparatusLedger(Party party = Party::Alice) : party_(party) {}

    /// Appends the entry for outcome eta along phi; `before` is the
    /// distribution immediately before this measurement.
    const LedgerEntry &record(const PhaseDistribution &before, double phi, Outcome eta,
                              std::size_t index);

    Party party() const { return party_; }
    const std::vector<LedgerEntry> &entries() const { return entries_; }
    /// Sum of recoil * (cos phi, sin phi) over entries.
    const Vec2 &cumulative() const { return cumulative_; }

  private:
    Party party_;
    std::vector<LedgerEntry> entries_;
    Vec2 cumulative_;
};

struct RecoilStats {
    double mean = 0.0;
    double delta = 0.0; ///< root-mean-square deviation of the summed recoil
};

/// Phase state at lambda0 measured P times along phi:
/// mean 0, Delta = (1/2) sqrt(P) |sin(lambda0 - phi)|.
RecoilStats expected_recoil_stats(double lambda0, double phi, std::size_t p);

struct RegionPolarization {
    Party party = Party::Alice;
    Vec2 vector; ///< sum (eta/2)(cos phi, sin phi) over the party's records
    std::size_t count = 0;
};

RegionPolarization region_polarization(std::span<const MeasurementRecord> records, Party party);

} // namespace hp
