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
#include <string_view>

#include "hiddenphase/angles.hpp"
#include "hiddenphase/phase_dist.hpp"

namespace hp {

enum class Party { Alice, Bob };

constexpr std::string_view to_string(Party p) { return p == Party::Alice ? "alice" : "bob"; }

/// A transverse spin measurement: who measures, and along which polar angle.
struct MeasurementSpec {
    Party party = Party::Alice;
    double phi = 0.0; ///< radians, in [0, 2 pi)

    /// Builds a spec with phi reduced to [0, 2 pi).
    static MeasurementSpec at(Party party, double phi) { return {party, reduce_angle(phi)}; }

    friend bool operator==(const MeasurementSpec &, const MeasurementSpec &) = default;
};

struct MeasurementRecord {
    MeasurementSpec spec;
    Outcome eta = Outcome::Plus;
    std::size_t index = 0; ///< global order across both parties, from 0

    friend bool operator==(const MeasurementRecord &, const MeasurementRecord &) = default;
};

} // namespace hp
