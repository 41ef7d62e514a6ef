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

#include "hiddenphase/angles.hpp"

#include <cmath>

namespace hp {

double reduce_angle(double radians) {
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // r + 2pi can round up to exactly 2pi for tiny negative inputs.
    if (r >= kTwoPi) {
        r = 0.0;
    }
    return r;
}

double wrap_angle(double radians) {
    const double r = reduce_angle(radians);
    return r > kPi ? r - kTwoPi : r;
}

double circular_distance(double a, double b) {
    return std::abs(wrap_angle(a - b));
}

} // namespace hp
