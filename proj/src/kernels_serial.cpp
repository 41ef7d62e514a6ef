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

#include "hiddenphase/kernels.hpp"

#include <algorithm>

namespace hp::kernels::serial {

double reweight(std::span<double> w, std::span<const double> cos_table,
                std::span<const double> sin_table, double cphi, double sphi,
                double eta) {
    double sum = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        const double c = cphi * cos_table[k] + sphi * sin_table[k];
        w[k] *= std::max(0.0, 1.0 + eta * c) * 0.5;
        sum += w[k];
    }
    return sum;
}

Moments scale_and_moments(std::span<double> w, std::span<const double> cos_table,
                          std::span<const double> sin_table, double factor) {
    for (double &x : w) {
        x *= factor;
    }
    return moments(w, cos_table, sin_table);
}

Moments moments(std::span<const double> w, std::span<const double> cos_table,
                std::span<const double> sin_table) {
    Moments m;
    for (std::size_t k = 0; k < w.size(); ++k) {
        m.mass += w[k];
        m.cos_sum += w[k] * cos_table[k];
        m.sin_sum += w[k] * sin_table[k];
    }
    return m;
}

} // namespace hp::kernels::serial
