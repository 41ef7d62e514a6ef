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
#include <vector>

namespace hp::kernels::omp {

namespace {

std::size_t block_count(std::size_t n) { return (n + kBlock - 1) / kBlock; }

// Sums partials in block order; this is what makes the result independent
// of how blocks were distributed over threads.
template <typename T, typename Add> T fold(const std::vector<T> &partials, Add add) {
    T acc{};
    for (const T &p : partials) {
        acc = add(acc, p);
    }
    return acc;
}

Moments add_moments(const Moments &a, const Moments &b) {
    return {a.mass + b.mass, a.cos_sum + b.cos_sum, a.sin_sum + b.sin_sum};
}

} // namespace

double reweight(std::span<double> w, std::span<const double> cos_table,
                std::span<const double> sin_table, double cphi, double sphi,
                double eta) {
    const std::size_t n = w.size();
    const std::size_t blocks = block_count(n);
    std::vector<double> partials(blocks, 0.0);
    double *data = w.data();
    const double *ct = cos_table.data();
    const double *st = sin_table.data();

#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        double sum = 0.0;
        for (std::size_t k = lo; k < hi; ++k) {
            const double c = cphi * ct[k] + sphi * st[k];
            data[k] *= std::max(0.0, 1.0 + eta * c) * 0.5;
            sum += data[k];
        }
        partials[b] = sum;
    }
    return fold(partials, [](double a, double b) { return a + b; });
}

Moments moments(std::span<const double> w, std::span<const double> cos_table,
                std::span<const double> sin_table) {
    const std::size_t n = w.size();
    const std::size_t blocks = block_count(n);
    std::vector<Moments> partials(blocks);
    const double *data = w.data();
    const double *ct = cos_table.data();
    const double *st = sin_table.data();

#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        Moments m;
        for (std::size_t k = lo; k < hi; ++k) {
            m.mass += data[k];
            m.cos_sum += data[k] * ct[k];
            m.sin_sum += data[k] * st[k];
        }
        partials[b] = m;
    }
    return fold(partials, add_moments);
}

Moments scale_and_moments(std::span<double> w, std::span<const double> cos_table,
                          std::span<const double> sin_table, double factor) {
    const std::size_t n = w.size();
    const std::size_t blocks = block_count(n);
    std::vector<Moments> partials(blocks);
    double *data = w.data();
    const double *ct = cos_table.data();
    const double *st = sin_table.data();

#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        Moments m;
        for (std::size_t k = lo; k < hi; ++k) {
            data[k] *= factor;
            m.mass += data[k];
            m.cos_sum += data[k] * ct[k];
            m.sin_sum += data[k] * st[k];
        }
        partials[b] = m;
    }
    return fold(partials, add_moments);
}

} // namespace hp::kernels::omp
