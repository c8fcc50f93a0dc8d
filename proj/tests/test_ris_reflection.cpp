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


#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "ris/ris_reflection.hpp"

using namespace ris;

TEST(PhaseAlphabet, SizesAndUnitModulus)
{
    for (int b = 0; b <= 6; ++b) {
        const PhaseAlphabet a(b);
        ASSERT_EQ(a.size(), std::size_t{1} << b);
        for (std::size_t l = 0; l < a.size(); ++l) {
            const double phase = 2 * std::numbers::pi * l / a.size();
            EXPECT_NEAR(std::abs(a.coefficient(l) - Complex(std::cos(phase), std::sin(phase))), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(a.coefficient(l)), 1.0, 1e-15);
        }
    }
}

TEST(PhaseAlphabet, TwoBitsIsPlusMinusOneAndJ)
{
    const PhaseAlphabet a(2);
    EXPECT_EQ(a.coefficient(0), Complex(1, 0));
    EXPECT_EQ(a.coefficient(1), Complex(0, 1));
    EXPECT_EQ(a.coefficient(2), Complex(-1, 0));
    EXPECT_EQ(a.coefficient(3), Complex(0, -1));
}

TEST(OverallGain, IdentityReflection)
{
    const PhaseAlphabet a(1);
    const std::array<Complex, 1> g{Complex(1, 0)}, f{Complex(1, 0)};
    const std::array<PhaseIndex, 1> gamma{0};
    EXPECT_EQ(overall_gain(0.0, g, f, gamma, a), Complex(1, 0));
}

TEST(OverallGain, DestructiveCancellation)
{
    const PhaseAlphabet a(1);
    const std::array<Complex, 1> g{Complex(1, 0)}, f{Complex(1, 0)};
    const std::array<PhaseIndex, 1> gamma{1};
    EXPECT_EQ(overall_gain(1.0, g, f, gamma, a), Complex(0, 0));
}

TEST(OverallGain, ConjugationConventionTwoAtoms)
{
    const PhaseAlphabet a(2);
    const std::array<Complex, 2> g{Complex(1, 0), Complex(0, 1)}, f{Complex(1, 0), Complex(1, 0)};
    const std::array<PhaseIndex, 2> gamma{1, 0};
    const Complex c = overall_gain(Complex(0, 0.5), g, f, gamma, a);
    EXPECT_NEAR(std::abs(c - Complex(0, -1.5)), 0.0, 1e-15);
}

TEST(OverallGain, MatchesNaiveSumAndIsLinear)
{
    Rng rng(3);
    const PhaseAlphabet a(3);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t q = 1 + rng.uniform_bits(4);
        CVector g(q), f1(q), f2(q), fsum(q);
        std::vector<PhaseIndex> gamma(q);
        for (std::size_t i = 0; i < q; ++i) {
            g[i] = rng.complex_normal(1);
            f1[i] = rng.complex_normal(1);
            f2[i] = rng.complex_normal(1);
            fsum[i] = f1[i] + f2[i];
            gamma[i] = static_cast<PhaseIndex>(rng.uniform_bits(3));
        }
        const Complex h1 = rng.complex_normal(1), h2 = rng.complex_normal(1);
        Complex naive = h1;
        for (std::size_t i = 0; i < q; ++i)
            naive += std::conj(g[i]) * std::exp(Complex(0, -a.phase(gamma[i]))) * f1[i];
        const Complex c1 = overall_gain(h1, g, f1, gamma, a);
        EXPECT_NEAR(std::abs(c1 - naive), 0.0, 1e-12 * (1 + std::abs(naive)));
        const Complex c2 = overall_gain(h2, g, f2, gamma, a);
        const Complex c12 = overall_gain(h1 + h2, g, fsum, gamma, a);
        EXPECT_NEAR(std::abs(c12 - (c1 + c2)), 0.0, 1e-12 * (1 + std::abs(c12)));
    }
}

TEST(OverallGain, GlobalRotationCompensatedByTheSchedule)
{
    // Rotating g by an alphabet phase and shifting every index by the same
    // step leaves |c| unchanged.
    Rng rng(4);
    const PhaseAlphabet a(2);
    const std::size_t q = 6;
    CVector g(q), f(q), g_rot(q);
    std::vector<PhaseIndex> gamma(q), gamma_shift(q);
    for (std::size_t i = 0; i < q; ++i) {
        g[i] = rng.complex_normal(1);
        f[i] = rng.complex_normal(1);
        g_rot[i] = g[i] * a.coefficient(1);
        gamma[i] = static_cast<PhaseIndex>(rng.uniform_bits(2));
        gamma_shift[i] = static_cast<PhaseIndex>((gamma[i] + 3) % 4);
    }
    const Complex h = rng.complex_normal(1);
    EXPECT_NEAR(std::abs(overall_gain(h, g, f, gamma, a)), std::abs(overall_gain(h, g_rot, f, gamma_shift, a)), 1e-12);
}

TEST(RandomSchedule, SingletonAlphabetGivesZeros)
{
    Rng rng(1);
    const auto s = random_schedule(4, 5, PhaseAlphabet(0), rng);
    for (std::size_t m = 0; m < 5; ++m)
        for (std::size_t q = 0; q < 4; ++q)
            EXPECT_EQ(s.at(q, m), 0);
}

TEST(RandomSchedule, UniformAndIndependentInTime)
{
    Rng rng(2);
    const PhaseAlphabet a(2);
    const std::size_t q = 1000, m = 1000;
    const auto s = random_schedule(q, m, a, rng);
    std::array<double, 4> counts{};
    double sxy = 0.0, sx = 0.0, sx2 = 0.0;
    std::size_t pairs = 0;
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < q; ++i) {
            ASSERT_LT(s.at(i, j), 4);
            counts[s.at(i, j)] += 1;
            if (j + 1 < m) {
                const double x = s.at(i, j), y = s.at(i, j + 1);
                sxy += x * y;
                sx += x;
                sx2 += x * x;
                ++pairs;
            }
        }
    }
    for (double c : counts)
        EXPECT_NEAR(c / (q * m), 0.25, 0.25 * 0.005);
    const double n = static_cast<double>(pairs);
    const double mean = sx / n, var = sx2 / n - mean * mean;
    const double corr = (sxy / n - mean * mean) / var;
    EXPECT_LT(std::abs(corr), 3.0 / std::sqrt(n));
}

TEST(ConstantSchedule, ReplicatesColumns)
{
    const std::array<PhaseIndex, 2> gamma{0, 1};
    const auto s = constant_schedule(gamma, 3);
    ASSERT_EQ(s.atoms(), 2u);
    ASSERT_EQ(s.slots(), 3u);
    for (std::size_t m = 0; m < 3; ++m) {
        EXPECT_EQ(s.at(0, m), 0);
        EXPECT_EQ(s.at(1, m), 1);
    }
    const auto single = constant_schedule(gamma, 1);
    EXPECT_EQ(single.slots(), 1u);
    EXPECT_TRUE(std::equal(gamma.begin(), gamma.end(), single.column(0).begin()));
}

TEST(ConstantSchedule, GainIsTheSameInEverySlot)
{
    Rng rng(5);
    const PhaseAlphabet a(2);
    CVector g(3), f(3);
    for (std::size_t i = 0; i < 3; ++i) {
        g[i] = rng.complex_normal(1);
        f[i] = rng.complex_normal(1);
    }
    const std::array<PhaseIndex, 3> gamma{2, 1, 3};
    const auto s = constant_schedule(gamma, 4);
    const Complex c0 = overall_gain(0.3, g, f, s.column(0), a);
    for (std::size_t m = 1; m < 4; ++m)
        EXPECT_EQ(overall_gain(0.3, g, f, s.column(m), a), c0);
}

TEST(ScheduleCsv, OneRowPerAtom)
{
    const std::array<PhaseIndex, 2> gamma{3, 1};
    std::ostringstream os;
    write_schedule_csv(os, constant_schedule(gamma, 2));
    EXPECT_EQ(os.str(), "3,3\n1,1\n");
}
