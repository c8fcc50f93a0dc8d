// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RIS_SIM_POWER_ALLOCATION_HPP
#define RIS_SIM_POWER_ALLOCATION_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "types.hpp"

namespace ris {

struct WaterfillResult {
    std::vector<double> powers;
    double threshold = 0.0; // lambda; the water level is 1 / lambda
    std::vector<bool> active;
    int iterations = 0;

    double water_level() const { return 1.0 / threshold; }
};

struct SlotAssignment {
    std::optional<std::size_t> user;
    double power = 0.0;
};

/// One entry per slot; at most one user is served in each slot.
using SlotAllocation = std::vector<SlotAssignment>;

/// Water-filling over M slots under the averaged budget
/// (1/M) sum_m [1/lambda - 1/alpha_m]^+ = P_TX.
///
/// Bisection on the water level w = 1/lambda over [0, M P_TX + max 1/alpha]
/// locates the active set; the level is then recomputed in closed form from
/// that set, which removes the bisection residual.
inline WaterfillResult waterfill(std::span<const double> alphas, double p_tx, double tol = 1e-10,
                                 int max_iterations = 200)
{
    require(!alphas.empty(), "waterfill: no slots");
    require(std::isfinite(p_tx) && p_tx > 0.0, "waterfill: P_TX must be finite and > 0");
    require(all_finite(alphas), "waterfill: non-finite gain");
    for (double a : alphas)
        if (!(a > 0.0))
            throw std::invalid_argument("waterfill: nonpositive gain");

    const std::size_t slots = alphas.size();
    const double m = static_cast<double>(slots);
    std::vector<double> inverse(slots);
    std::transform(alphas.begin(), alphas.end(), inverse.begin(), [](double a) { return 1.0 / a; });

    auto budget = [&](double level) {
        double sum = 0.0;
        for (double inv : inverse)
            sum += std::max(level - inv, 0.0);
        return sum / m;
    };

    double lo = 0.0;
    double hi = m * p_tx + *std::max_element(inverse.begin(), inverse.end());
    int it = 0;
    for (; it < max_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double excess = budget(mid) - p_tx;
        if (std::abs(excess) <= tol * std::max(1.0, p_tx))
            break;
        (excess > 0.0 ? hi : lo) = mid;
    }
    double level = 0.5 * (lo + hi);

    // Closed-form level over the active set; iterate in case the set shifts.
    for (int pass = 0; pass < 4; ++pass) {
        double inv_sum = 0.0;
        std::size_t count = 0;
        for (double inv : inverse) {
            if (inv < level) {
                inv_sum += inv;
                ++count;
            }
        }
        if (count == 0)
            break;
        const double exact = (m * p_tx + inv_sum) / static_cast<double>(count);
        if (exact == level)
            break;
        level = exact;
    }

    WaterfillResult r;
    r.threshold = 1.0 / level;
    r.iterations = it;
    r.powers.resize(slots);
    r.active.resize(slots);
    for (std::size_t i = 0; i < slots; ++i) {
        r.powers[i] = std::max(level - inverse[i], 0.0);
        r.active[i] = r.powers[i] > 0.0;
    }
    return r;
}

/// P_k |c_k|^2 / (|c_k|^2 sum_{u != k} P_u + 1)
inline double sinr(std::span<const double> powers, Complex c_k, std::size_t k)
{
    require(k < powers.size(), "sinr: user index out of range");
    const double gain = std::norm(c_k);
    double interference = 0.0;
    for (std::size_t u = 0; u < powers.size(); ++u) {
        require(std::isfinite(powers[u]) && powers[u] >= 0.0, "sinr: powers must be finite and >= 0");
        if (u != k)
            interference += powers[u];
    }
    return powers[k] * gain / (gain * interference + 1.0);
}

/// (1/M) sum_m log2(1 + SINR_m), in bits/s/Hz.
inline double time_averaged_rate(std::span<const double> sinrs)
{
    require(!sinrs.empty(), "time_averaged_rate: no slots");
    double sum = 0.0;
    for (double s : sinrs) {
        require(s >= 0.0, "time_averaged_rate: negative SINR");
        sum += std::log2(1.0 + s);
    }
    return sum / static_cast<double>(sinrs.size());
}

} // namespace ris

#endif
