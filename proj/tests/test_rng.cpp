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

#include <cmath>
#include <set>

#include "ris/rng.hpp"

using ris::Rng;

TEST(Rng, FixedSeedReproducesTheSameSequence)
{
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i)
        ASSERT_EQ(a.next(), b.next());
    Rng c(42), d(42);
    for (int i = 0; i < 1000; ++i)
        ASSERT_EQ(c.normal(), d.normal());
}

TEST(Rng, RunSeedsAreDistinctAndXorTheBase)
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t r = 0; r < 1000; ++r)
        seen.insert(ris::run_seed(7, r));
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_EQ(ris::run_seed(7, 3) ^ ris::run_seed(5, 3), 7u ^ 5u);
}

TEST(Rng, SplitMixMatchesReferenceOutput)
{
    // First output of the reference splitmix64 generator with state 0.
    EXPECT_EQ(ris::splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(Rng, SubstreamsDifferByTagAndIndex)
{
    EXPECT_NE(ris::stream_seed(1, 1, 0), ris::stream_seed(1, 2, 0));
    EXPECT_NE(ris::stream_seed(1, 3, 0), ris::stream_seed(1, 3, 1));
    EXPECT_EQ(ris::stream_seed(9, 3, 4), ris::stream_seed(9, 3, 4));
}

TEST(Rng, UniformIsInUnitInterval)
{
    Rng rng(1);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Rng, ComplexNormalHasRequestedVariance)
{
    Rng rng(2);
    const int n = 100000;
    double re2 = 0.0, im2 = 0.0, cross = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto z = rng.complex_normal(2.0);
        re2 += z.real() * z.real();
        im2 += z.imag() * z.imag();
        cross += z.real() * z.imag();
    }
    EXPECT_NEAR(re2 / n, 1.0, 0.02);
    EXPECT_NEAR(im2 / n, 1.0, 0.02);
    EXPECT_NEAR(cross / n, 0.0, 0.02);
}

TEST(Rng, UniformBitsStaysInRange)
{
    Rng rng(3);
    EXPECT_EQ(rng.uniform_bits(0), 0u);
    for (int i = 0; i < 1000; ++i)
        ASSERT_LT(rng.uniform_bits(3), 8u);
}
