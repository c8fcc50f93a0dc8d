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

#ifndef RIS_SIM_RNG_HPP
#define RIS_SIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "types.hpp"

namespace ris {

/// splitmix64 finalizer, used to hash run indices and stream tags into seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of the independent stream owned by one Monte Carlo run.
constexpr std::uint64_t run_seed(std::uint64_t base_seed, std::uint64_t run_index)
{
    return base_seed ^ splitmix64(run_index);
}

/// Seed of a named sub-stream inside a run (geometry, g, user k, schedule ...).
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0)
{
    return splitmix64(seed ^ splitmix64(tag * 0x100000001b3ULL + index));
}

/// Random source with distributions written out explicitly, so a fixed seed
/// reproduces the same bits on every standard library.
template <class Engine = std::mt19937_64>
class BasicRng {
public:
    using engine_type = Engine;
    static constexpr std::string_view kIdentifier = "mt19937_64";

    explicit BasicRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return static_cast<std::uint64_t>(engine_()); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, 2^bits).
    std::uint64_t uniform_bits(int bits)
    {
        if (bits <= 0)
            return 0;
        return next() >> (64 - bits);
    }

    /// Standard normal via Box-Muller; the second variate is cached.
    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        spare_ = radius * std::sin(2.0 * kPi * u2);
        has_spare_ = true;
        return radius * std::cos(2.0 * kPi * u2);
    }

    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    Complex complex_normal(double variance)
    {
        const double sd = std::sqrt(variance / 2.0);
        const double re = normal();
        const double im = normal();
        return {sd * re, sd * im};
    }

    /// Unit-mean exponential.
    double exponential()
    {
        double u = 0.0;
        do {
            u = uniform();
        } while (u <= 0.0);
        return -std::log(u);
    }

private:
    Engine engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

using Rng = BasicRng<>;

} // namespace ris

#endif
