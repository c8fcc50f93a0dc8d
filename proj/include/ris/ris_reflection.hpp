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

#ifndef RIS_SIM_RIS_REFLECTION_HPP
#define RIS_SIM_RIS_REFLECTION_HPP

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "rng.hpp"
#include "types.hpp"

namespace ris {

using PhaseIndex = std::uint16_t;

/// The 2^b equally spaced phases 2 pi l / 2^b of a b-bit meta-atom.
class PhaseAlphabet {
public:
    explicit PhaseAlphabet(int bits = 2) : bits_(bits)
    {
        require(bits >= 0 && bits <= 16, "PhaseAlphabet: bits must be in [0, 16]");
        const std::size_t n = std::size_t{1} << bits;
        coefficients_.reserve(n);
        for (std::size_t l = 0; l < n; ++l)
            coefficients_.push_back(std::polar(1.0, phase_of(l, n)));
        // Exact values on the axes keep the b = 1, 2 alphabets {+-1, +-j} exact.
        for (std::size_t l = 0; l < n; ++l) {
            if ((4 * l) % n == 0) {
                static constexpr Complex axes[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
                coefficients_[l] = axes[(4 * l) / n];
            }
        }
    }

    int bits() const { return bits_; }
    std::size_t size() const { return coefficients_.size(); }
    double phase(std::size_t index) const { return phase_of(index, size()); }
    const Complex& coefficient(std::size_t index) const { return coefficients_[index]; }
    bool contains(std::size_t index) const { return index < size(); }

private:
    static double phase_of(std::size_t l, std::size_t n) { return 2.0 * kPi * static_cast<double>(l) / n; }

    int bits_;
    std::vector<Complex> coefficients_;
};

/// Q x M matrix of phase indices; column m is the reflection vector of slot m.
class ReflectionSchedule {
public:
    ReflectionSchedule(std::size_t atoms, std::size_t slots)
        : atoms_(atoms), slots_(slots), indices_(atoms * slots, 0)
    {
        require(slots >= 1, "ReflectionSchedule: M must be >= 1");
    }

    std::size_t atoms() const { return atoms_; }
    std::size_t slots() const { return slots_; }

    PhaseIndex& at(std::size_t q, std::size_t m) { return indices_[m * atoms_ + q]; }
    PhaseIndex at(std::size_t q, std::size_t m) const { return indices_[m * atoms_ + q]; }

    std::span<const PhaseIndex> column(std::size_t m) const { return {indices_.data() + m * atoms_, atoms_}; }
    std::span<PhaseIndex> column(std::size_t m) { return {indices_.data() + m * atoms_, atoms_}; }

    bool operator==(const ReflectionSchedule&) const = default;

private:
    std::size_t atoms_;
    std::size_t slots_;
    std::vector<PhaseIndex> indices_;
};

/// c = h + g^H conj(Gamma) f = h + sum_q conj(g_q) conj(gamma_q) f_q.
inline Complex overall_gain(Complex h, std::span<const Complex> g, std::span<const Complex> f,
                            std::span<const PhaseIndex> gamma, const PhaseAlphabet& alphabet)
{
    require(g.size() == f.size() && g.size() == gamma.size(), "overall_gain: dimension mismatch");
    Complex reflected{};
    for (std::size_t q = 0; q < g.size(); ++q)
        reflected += std::conj(g[q] * alphabet.coefficient(gamma[q])) * f[q];
    return h + reflected;
}

/// i.i.d. uniform phase indices over space and time.
inline ReflectionSchedule random_schedule(std::size_t atoms, std::size_t slots, const PhaseAlphabet& alphabet, Rng& rng)
{
    ReflectionSchedule s(atoms, slots);
    for (std::size_t m = 0; m < slots; ++m)
        for (std::size_t q = 0; q < atoms; ++q)
            s.at(q, m) = static_cast<PhaseIndex>(rng.uniform_bits(alphabet.bits()));
    return s;
}

/// Slowly time-varying RIS: the same reflection vector in every slot.
inline ReflectionSchedule constant_schedule(std::span<const PhaseIndex> gamma, std::size_t slots)
{
    ReflectionSchedule s(gamma.size(), slots);
    for (std::size_t m = 0; m < slots; ++m)
        for (std::size_t q = 0; q < gamma.size(); ++q)
            s.at(q, m) = gamma[q];
    return s;
}

/// Debug dump, one row per meta-atom.
inline void write_schedule_csv(std::ostream& os, const ReflectionSchedule& s)
{
    for (std::size_t q = 0; q < s.atoms(); ++q) {
        for (std::size_t m = 0; m < s.slots(); ++m) {
            if (m)
                os << ',';
            os << s.at(q, m);
        }
        os << '\n';
    }
}

} // namespace ris

#endif
