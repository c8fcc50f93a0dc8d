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

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "ris/harness.hpp"
#include "ris/schedulers.hpp"

using namespace ris;

namespace {

ChannelRealization random_channel(Rng& rng, std::size_t users, std::size_t atoms, double direct_var = 1.0,
                                  double ris_var = 1.0)
{
    ChannelRealization c;
    c.h.resize(users);
    c.g.resize(atoms);
    c.f = ComplexMatrix(atoms, users);
    for (auto& v : c.h)
        v = rng.complex_normal(direct_var);
    for (auto& v : c.g)
        v = rng.complex_normal(1.0);
    for (std::size_t k = 0; k < users; ++k)
        for (std::size_t q = 0; q < atoms; ++q)
            c.f(q, k) = rng.complex_normal(ris_var);
    return c;
}

SchemeSettings settings(std::size_t slots, double p_tx = 10.0, int bits = 2)
{
    SchemeSettings s;
    s.p_tx = p_tx;
    s.alphabet = PhaseAlphabet(bits);
    s.slots = slots;
    s.xi_full = 0.9;
    s.xi_partial = 0.8;
    s.xi_no_ris = 0.95;
    return s;
}

OverheadParams overhead(long n_up, long n_down, long n_par, long slots, long p)
{
    OverheadParams o;
    o.n_up_full = n_up;
    o.n_down_full = n_down;
    o.n_par = n_par;
    o.slots = slots;
    o.symbols_per_slot = p;
    o.coherence_symbols = slots * p;
    return o;
}

} // namespace

TEST(Overhead, NoPilotsIsOne)
{
    EXPECT_EQ(overhead_full(overhead(0, 0, 0, 100, 80)), 1.0);
    EXPECT_EQ(overhead_partial(overhead(0, 0, 0, 100, 80)), 1.0);
}

TEST(Overhead, FullCsitTableScenario)
{
    EXPECT_NEAR(overhead_full(overhead(16 * 101, 1, 2, 2500, 80)), 1.0 - 4116.0 / 200000.0, 1e-15);
    EXPECT_NEAR(overhead_full(overhead(16 * 101, 1, 2, 2500, 80)), 0.97942, 1e-12);
}

TEST(Overhead, PartialCsit)
{
    EXPECT_DOUBLE_EQ(overhead_partial(overhead(0, 1, 2, 100, 80)), 0.975);
}

TEST(Overhead, FrameExhaustedIsRejected)
{
    // M = L_c (one symbol per slot) with one downlink pilot per slot.
    try {
        overhead_full(overhead(0, 1, 0, 500, 1));
        FAIL();
    } catch (const std::domain_error& e) {
        EXPECT_NE(std::string(e.what()).find("overhead exceeds frame"), std::string::npos);
    }
    EXPECT_THROW(overhead_partial(overhead(0, 0, 80, 100, 80)), std::domain_error);
    auto bad = overhead(0, 0, 0, 100, 80);
    bad.coherence_symbols = 7999;
    EXPECT_THROW(overhead_full(bad), std::invalid_argument);
}

TEST(Fairness, Examples)
{
    EXPECT_DOUBLE_EQ(fairness_index(std::vector<double>{3, 3, 3}), 1.0);
    EXPECT_DOUBLE_EQ(fairness_index(std::vector<double>{0, 5, 0, 0}), 0.25);
    EXPECT_DOUBLE_EQ(fairness_index(std::vector<double>{1, 2, 3}), 36.0 / 42.0);
    try {
        fairness_index(std::vector<double>{0, 0});
        FAIL();
    } catch (const std::domain_error& e) {
        EXPECT_NE(std::string(e.what()).find("undefined fairness"), std::string::npos);
    }
}

TEST(Fairness, BoundedByOneOverKAndOne)
{
    Rng rng(1);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t k = 1 + rng.uniform_bits(5);
        std::vector<double> r(k);
        for (double& x : r)
            x = rng.uniform() < 0.3 ? 0.0 : rng.exponential();
        r[rng.uniform_bits(5) % k] += 0.1;
        const double f = fairness_index(r);
        ASSERT_GE(f, 1.0 / k - 1e-15);
        ASSERT_LE(f, 1.0 + 1e-15);
    }
}

TEST(Ewma, HalfWeightAtSlotOne)
{
    EwmaState s{{3.0, 1.0}, 1, 1e-3};
    s = ewma_update(s, std::vector<double>{5.0, 0.0});
    EXPECT_DOUBLE_EQ(s.avg_rates[0], 4.0);
    EXPECT_DOUBLE_EQ(s.avg_rates[1], 0.5);
    EXPECT_EQ(s.slot, 2u);
}

TEST(Ewma, RunningMeanOfTwoFourSix)
{
    EwmaState s{{0.0}, 0, 1e-3};
    const double rates[] = {2, 4, 6};
    const double expect[] = {2, 3, 4};
    for (int i = 0; i < 3; ++i) {
        s = ewma_update(s, std::vector<double>{rates[i]});
        EXPECT_DOUBLE_EQ(s.avg_rates[0], expect[i]);
    }
}

TEST(Ewma, ZerosDecayToTheFloor)
{
    EwmaState s{{0.0}, 0, 1e-3};
    s = ewma_update(s, std::vector<double>{1.0});
    for (int i = 0; i < 5000; ++i) {
        s = ewma_update(s, std::vector<double>{0.0});
        ASSERT_GE(s.avg_rates[0], 1e-3);
    }
    EXPECT_DOUBLE_EQ(s.avg_rates[0], 1e-3);
}

TEST(Ewma, EqualsArithmeticMeanBeforeFlooring)
{
    Rng rng(2);
    EwmaState s{{0.0}, 0, 1e-300};
    double sum = 0.0;
    for (int m = 0; m < 500; ++m) {
        const double r = 1.0 + rng.exponential();
        sum += r;
        s = ewma_update(s, std::vector<double>{r});
        ASSERT_NEAR(s.avg_rates[0], sum / (m + 1), 1e-12 * sum / (m + 1));
    }
}

TEST(PfsSelect, EqualAveragesReduceToGainArgmax)
{
    EXPECT_EQ(pfs_select(std::vector<double>{1.5, 1.5, 1.5}, std::vector<double>{2.0, 9.0, 4.0}), 1u);
}

TEST(PfsSelect, StarvedUserIsFavored)
{
    EXPECT_EQ(pfs_select(std::vector<double>{2.0, 1.0}, std::vector<double>{4.0, 4.0}), 1u);
    EXPECT_DOUBLE_EQ(pfs_score(2.0, 4.0), 0.5 * std::log(4.0));
}

TEST(PfsSelect, ConstructedTieGoesToTheLowestIndex)
{
    const double e = std::numbers::e;
    EXPECT_DOUBLE_EQ(pfs_score(2.0, e * e), 1.0);
    EXPECT_DOUBLE_EQ(pfs_score(1.0, e), 1.0);
    EXPECT_EQ(pfs_select(std::vector<double>{2.0, 1.0}, std::vector<double>{e * e, e}), 0u);
}

TEST(PfsSelect, ZeroGainIsExcluded)
{
    EXPECT_EQ(pfs_score(1.0, 0.0), -std::numeric_limits<double>::infinity());
    EXPECT_EQ(pfs_select(std::vector<double>{1.0, 1.0}, std::vector<double>{0.0, 0.5}), 1u);
    EXPECT_EQ(pfs_select(std::vector<double>{1.0, 1.0}, std::vector<double>{0.0, 0.0}), 0u);
}

TEST(StvOpt, SingleUserWithoutRis)
{
    ChannelRealization c;
    c.h = {Complex(0.6, 0.8)};
    c.f = ComplexMatrix(0, 1);
    const auto s = settings(5, 3.0);
    const auto r = run_stv_opt(c, s);
    EXPECT_DOUBLE_EQ(r.net_sum_capacity, 0.9 * std::log2(1.0 + 3.0));
    EXPECT_EQ(r.fairness, 1.0);
}

TEST(StvOpt, FairnessIsOneOverK)
{
    Rng rng(3);
    for (std::size_t k : {2u, 3u, 8u, 16u}) {
        const auto r = run_stv_opt(random_channel(rng, k, 6), settings(10));
        EXPECT_EQ(r.fairness, 1.0 / static_cast<double>(k));
        EXPECT_EQ(std::count_if(r.per_user_rate.begin(), r.per_user_rate.end(), [](double x) { return x > 0; }), 1);
    }
}

TEST(StvOpt, TwoUsersOneAtomMatchesEnumeration)
{
    const PhaseAlphabet a(1);
    ChannelRealization c;
    c.h = {Complex(0.3, 0.1), Complex(-0.2, 0.5)};
    c.g = {Complex(0.7, -0.4)};
    c.f = ComplexMatrix(1, 2);
    c.f(0, 0) = Complex(0.2, 0.9);
    c.f(0, 1) = Complex(-1.1, 0.3);
    const auto s = settings(4, 2.0, 1);
    double best = 0.0;
    for (std::size_t k = 0; k < 2; ++k)
        for (PhaseIndex l = 0; l < 2; ++l) {
            const std::array<PhaseIndex, 1> th{l};
            const std::array<Complex, 1> f{c.f(0, k)};
            best = std::max(best, std::norm(overall_gain(c.h[k], c.g, f, th, a)));
        }
    EXPECT_NEAR(run_stv_opt(c, s).net_sum_capacity, 0.9 * std::log2(1.0 + 2.0 * best), 1e-12);
}

TEST(StvOpt, AtMostOneUserPerSlot)
{
    Rng rng(4);
    const auto c = random_channel(rng, 4, 5);
    const auto s = settings(20);
    const auto schedule = random_schedule(5, 20, s.alphabet, rng);
    for (const auto& r : {run_stv_opt(c, s), run_rtv_rand(c, schedule, s), run_pfs_full(c, s),
                          run_pfs_rand(c, schedule, s), run_no_ris(c, s)}) {
        ASSERT_EQ(r.slots.size(), 20u);
        for (const auto& slot : r.slots) {
            if (!slot.user) {
                EXPECT_EQ(slot.power, 0.0);
            } else {
                EXPECT_LT(*slot.user, 4u);
            }
        }
        double sum = 0.0;
        for (double x : r.per_user_rate)
            sum += x;
        EXPECT_NEAR(r.net_sum_capacity, sum, 1e-12 * sum);
    }
}

TEST(RtvRand, SingleUserWinsEverySlot)
{
    Rng rng(5);
    const auto c = random_channel(rng, 1, 4);
    const auto s = settings(30);
    const auto r = run_rtv_rand(c, random_schedule(4, 30, s.alphabet, rng), s);
    EXPECT_EQ(r.winner_histogram()[0], 30u);
}

TEST(RtvRand, IdenticalUsersTieToTheFirst)
{
    Rng rng(6);
    auto c = random_channel(rng, 3, 4);
    for (std::size_t k = 1; k < 3; ++k) {
        c.h[k] = c.h[0];
        for (std::size_t q = 0; q < 4; ++q)
            c.f(q, k) = c.f(q, 0);
    }
    const std::array<PhaseIndex, 4> gamma{1, 0, 3, 2};
    const auto r = run_rtv_rand(c, constant_schedule(gamma, 8), settings(8));
    EXPECT_EQ(r.winner_histogram()[0], 8u);
    EXPECT_DOUBLE_EQ(r.fairness, 1.0 / 3.0);
}

TEST(RtvRand, NeverAboveStvOptWithMatchedOverhead)
{
    Rng rng(7);
    auto s = settings(20);
    s.xi_partial = s.xi_full;
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = random_channel(rng, 3, 4);
        const auto sched = random_schedule(4, 20, s.alphabet, rng);
        // stv_opt uses a local optimum per user; compare against its global
        // optimum, which bounds every slot of any schedule.
        double best = 0.0;
        for (std::size_t k = 0; k < 3; ++k)
            best = std::max(best, exhaustive_oracle(quadratic_form_terms(c.h[k], c.g, c.user_ris(k)), s.alphabet).objective);
        EXPECT_LE(run_rtv_rand(c, sched, s).net_sum_capacity, s.xi_full * std::log2(1 + s.p_tx * best) + 1e-12);
    }
}

TEST(PfsFull, SingleUserMatchesStvOpt)
{
    Rng rng(8);
    const auto c = random_channel(rng, 1, 6);
    const auto s = settings(25);
    EXPECT_NEAR(run_pfs_full(c, s).net_sum_capacity, run_stv_opt(c, s).net_sum_capacity, 1e-9);
}

TEST(PfsFull, SymmetricUsersAlternateAfterSlotZero)
{
    Rng rng(9);
    auto c = random_channel(rng, 2, 3);
    c.h[1] = c.h[0];
    for (std::size_t q = 0; q < 3; ++q)
        c.f(q, 1) = c.f(q, 0);
    for (std::size_t m : {4u, 40u, 400u}) {
        const auto r = run_pfs_full(c, settings(m));
        for (std::size_t i = 0; i < m; ++i)
            ASSERT_EQ(*r.slots[i].user, i % 2) << "slot " << i;
        if (m == 400) {
            EXPECT_GT(r.fairness, 0.999999);
        }
    }
}

TEST(PfsRand, SingleUserMatchesRtvRand)
{
    Rng rng(10);
    const auto c = random_channel(rng, 1, 5);
    const auto s = settings(30);
    const auto sched = random_schedule(5, 30, s.alphabet, rng);
    EXPECT_DOUBLE_EQ(run_pfs_rand(c, sched, s).net_sum_capacity, run_rtv_rand(c, sched, s).net_sum_capacity);
}

TEST(PfsRand, StatisticallyIdenticalUsersShareSlots)
{
    Rng rng(11);
    const std::size_t k = 4, m = 2000;
    const auto c = random_channel(rng, k, 16, 0.01);
    const auto s = settings(m, 100.0);
    const auto r = run_pfs_rand(c, random_schedule(16, m, s.alphabet, rng), s);
    const double expect = static_cast<double>(m) / k;
    const double sigma = std::sqrt(m * (1.0 / k) * (1 - 1.0 / k));
    for (auto wins : r.winner_histogram())
        EXPECT_NEAR(static_cast<double>(wins), expect, 3 * sigma);
}

TEST(PfsRand, FairerThanRtvRandOnHeterogeneousDraws)
{
    SystemConfig c;
    c.users = 8;
    c.ris_x = c.ris_y = 4;
    c.cluster.homogeneous = false;
    c.cluster.radius = 100.0;
    const auto s = scheme_settings(c);
    std::vector<double> pfs, rtv;
    for (std::size_t run = 0; run < 200; ++run) {
        const auto d = draw_block(c, run);
        pfs.push_back(run_pfs_rand(d.channel, d.schedule, s).fairness);
        rtv.push_back(run_rtv_rand(d.channel, d.schedule, s).fairness);
    }
    std::nth_element(pfs.begin(), pfs.begin() + 100, pfs.end());
    std::nth_element(rtv.begin(), rtv.begin() + 100, rtv.end());
    EXPECT_GE(pfs[100], rtv[100]);
}

TEST(PfsFull, HomogeneousFairnessMedian)
{
    SystemConfig c;
    c.users = 8;
    const auto s = scheme_settings(c);
    std::vector<double> f;
    for (std::size_t run = 0; run < 31; ++run)
        f.push_back(run_pfs_full(draw_block(c, run).channel, s).fairness);
    std::nth_element(f.begin(), f.begin() + 15, f.end());
    EXPECT_GE(f[15], 0.95);
}

TEST(NoRis, SingleUserFormulaAndQIndependence)
{
    Rng rng(12);
    const auto a = random_channel(rng, 1, 3);
    auto b = a;
    b.g.resize(9);
    b.f = ComplexMatrix(9, 1);
    const auto s = settings(7, 4.0);
    EXPECT_DOUBLE_EQ(run_no_ris(a, s).net_sum_capacity, 0.95 * std::log2(1 + 4.0 * std::norm(a.h[0])));
    EXPECT_EQ(run_no_ris(a, s).net_sum_capacity, run_no_ris(b, s).net_sum_capacity);
}

TEST(NoRis, NeverAboveStvOptWithMatchedOverhead)
{
    Rng rng(13);
    auto s = settings(10);
    s.xi_no_ris = s.xi_full;
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = random_channel(rng, 4, 6);
        EXPECT_LE(run_no_ris(c, s).net_sum_capacity, run_stv_opt(c, s).net_sum_capacity + 1e-12);
    }
}
