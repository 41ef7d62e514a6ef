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
#include <span>

// Grid kernels behind PhaseDistribution. Every kernel works on a density
// sampled at K uniform nodes together with the node cosine/sine tables.
//
// Two implementations share one signature:
//   serial::  plain loops; the reference the parallel code is tested against.
//   omp::     OpenMP loops. Reductions are done over fixed-size blocks whose
//             partial sums are combined in block order, so the result does
//             not depend on the number of threads.

namespace hp::kernels {

/// Raw node sums: sum w, sum w cos(node), sum w sin(node).
struct Moments {
    double mass = 0.0;
    double cos_sum = 0.0;
    double sin_sum = 0.0;
};

/// Reduction block length of the omp kernels.
inline constexpr std::size_t kBlock = 512;

/// Grids smaller than this run the omp kernels on the calling thread.
inline constexpr std::size_t kParallelThreshold = 1 << 15;

namespace serial {

/// w[k] *= max(0, 1 + eta (cphi cos[k] + sphi sin[k])) / 2; returns sum w.
double reweight(std::span<double> w, std::span<const double> cos_table,
                std::span<const double> sin_table, double cphi, double sphi,
                double eta);

/// w[k] *= factor, then returns the moments of the scaled weights.
Moments scale_and_moments(std::span<double> w, std::span<const double> cos_table,
                          std::span<const double> sin_table, double factor);

Moments moments(std::span<const double> w, std::span<const double> cos_table,
                std::span<const double> sin_table);

} // namespace serial

namespace omp {

double reweight(std::span<double> w, std::span<const double> cos_table,
                std::span<const double> sin_table, double cphi, double sphi,
                double eta);

Moments scale_and_moments(std::span<double> w, std::span<const double> cos_table,
                          std::span<const double> sin_table, double factor);

Moments moments(std::span<const double> w, std::span<const double> cos_table,
                std::span<const double> sin_table);

} // namespace omp

} // namespace hp::kernels
