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

#include "hiddenphase/ledger.hpp"

#include "hiddenphase/angles.hpp"

namespace hp {

const LedgerEntry &ApparatusLedger::record(const PhaseDistribution &before, double phi,
                                           Outcome eta, std::size_t index) {
    phi = reduce_angle(phi);
    LedgerEntry e;
    e.index = index;
    e.phi = phi;
    e.eta = eta;
    e.pre_expectation = 0.5 * before.mean_cos(phi);
    e.recoil = -(0.5 * sign(eta) - e.pre_expectation);
    cumulative_ += Vec2{e.recoil * std::cos(phi), e.recoil * std::sin(phi)};
    entries_.push_back(e);
    return entries_.back();
}

RecoilStats expected_recoil_stats(double lambda0, double phi, std::size_t p) {
    return {0.0, 0.5 * std::sqrt(static_cast<double>(p)) * std::abs(std::sin(lambda0 - phi))};
}

RegionPolarization region_polarization(std::span<const MeasurementRecord> records, Party party) {
    RegionPolarization out;
    out.party = party;
    for (const auto &r : records) {
        if (r.spec.party != party) {
            continue;
        }
        const double half = 0.5 * sign(r.eta);
        out.vector += Vec2{half * std::cos(r.spec.phi), half * std::sin(r.spec.phi)};
        ++out.count;
    }
    return out;
}

} // namespace hp
