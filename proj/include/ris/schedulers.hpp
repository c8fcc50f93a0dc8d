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

// Downlink schedulers over one coherence block. Every scheme serves at most
// one user per slot, so the interference term of the SINR is always zero and
// a served user's slot rate is log2(1 + P |c|^2).
//
//   stv_opt   full CSIT, per-block optimized RIS, best user for the whole block
//   rtv_rand  partial CSIT, random RIS per slot, best user per slot, equal power
//   pfs_full  full CSIT, per-slot optimized RIS, proportional fair selection,
//             water-filling over the PFS-weighted gains
//   pfs_rand  partial CSIT, random RIS per slot, proportional fair selection
//   no_ris    direct links only, best user for the whole block

#ifndef RIS_SIM_SCHEDULERS_HPP
#define RIS_SIM_SCHEDULERS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "channel_model.hpp"
#include "phase_optimizer.hpp"
#include "power_allocation.hpp"
#include "ris_reflection.hpp"
#include "types.hpp"

namespace ris {

struct SchemeResult {
    std::vector<double> per_user_rate; // time-averaged, already scaled by the pilot overhead
    double net_sum_capacity = 0.0;
    double fairness = 0.0;
    SlotAllocation slots;

    std::vector<std::size_t> winner_histogram() const
    {
        std::vector<std::size_t> hist(per_user_rate.size(), 0);
        for (const auto& s : slots)
            if (s.user)
                ++hist[*s.user];
        return hist;
    }
};

struct EwmaState {
    std::vector<double> avg_rates;
    std::size_t slot = 0; // index of the next slot to be folded in
    double floor_epsilon = 1e-3;
};

struct OverheadParams {
    long n_up_full = 0;
    long n_down_full = 0;
    long n_par = 0;
    long coherence_symbols = 1; // L_c
    long slots = 1;             // M
    long symbols_per_slot = 1;  // P
};

/// Everything a scheme needs besides the channel draw.
struct SchemeSettings {
    double p_tx = 1.0;
    PhaseAlphabet alphabet{2};
    std::size_t slots = 1;
    double xi_full = 1.0;
    double xi_partial = 1.0;
    double xi_no_ris = 1.0;
    OptimizerOptions optimizer;
    double floor_epsilon = 1e-3;
    double waterfill_tolerance = 1e-10;
};

inline void check_overhead_params(const OverheadParams& p)
{
    require(p.n_up_full >= 0 && p.n_down_full >= 0 && p.n_par >= 0, "overhead: pilot counts must be >= 0");
    require(p.slots >= 1 && p.symbols_per_slot >= 1, "overhead: M and P must be >= 1");
    require(p.coherence_symbols == p.slots * p.symbols_per_slot, "overhead: L_c must equal M * P");
}

/// xi_full = 1 - (N_up + M N_down) / L_c
inline double overhead_full(const OverheadParams& p)
{
    check_overhead_params(p);
    const double xi = 1.0 - static_cast<double>(p.n_up_full + p.slots * p.n_down_full) /
                                static_cast<double>(p.coherence_symbols);
    if (!(xi > 0.0))
        throw std::domain_error("overhead exceeds frame: N_up_full + M N_down_full >= L_c");
    return xi;
}

/// xi_par = 1 - N_par / P
inline double overhead_partial(const OverheadParams& p)
{
    check_overhead_params(p);
    const double xi = 1.0 - static_cast<double>(p.n_par) / static_cast<double>(p.symbols_per_slot);
    if (!(xi > 0.0))
        throw std::domain_error("overhead exceeds frame: N_par >= P");
    return xi;
}

/// Jain's index (sum r)^2 / (K sum r^2).
inline double fairness_index(std::span<const double> rates)
{
    require(!rates.empty(), "fairness_index: no users");
    double peak = 0.0;
    for (double r : rates) {
        require(r >= 0.0, "fairness_index: negative rate");
        peak = std::max(peak, r);
    }
    if (peak == 0.0)
        throw std::domain_error("undefined fairness: all rates are zero");
    // scaled by the peak so a single nonzero rate gives exactly 1/K
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double r : rates) {
        const double x = r / peak;
        sum += x;
        sum_sq += x * x;
    }
    return sum * sum / (static_cast<double>(rates.size()) * sum_sq);
}

/// Running-average rate update with weight 1/(m+1); slot 0 initializes the
/// average with the slot's rates. Averages are floored at floor_epsilon.
inline EwmaState ewma_update(EwmaState state, std::span<const double> rates)
{
    require(rates.size() == state.avg_rates.size(), "ewma_update: dimension mismatch");
    const double w = 1.0 / static_cast<double>(state.slot + 1);
    for (std::size_t k = 0; k < rates.size(); ++k) {
        const double next = state.slot == 0 ? rates[k] : (1.0 - w) * state.avg_rates[k] + w * rates[k];
        state.avg_rates[k] = std::max(next, state.floor_epsilon);
    }
    ++state.slot;
    return state;
}

/// Log-domain PFS score ln(x) / avg_rate, argmax-equivalent to x^(1/avg_rate).
inline double pfs_score(double avg_rate, double gain)
{
    if (!(gain > 0.0))
        return -std::numeric_limits<double>::infinity();
    return std::log(gain) / avg_rate;
}

/// argmax_k ln(gain_k) / avg_k, lowest index on ties. Users with zero gain are
/// excluded unless every user has zero gain.
inline std::size_t pfs_select(std::span<const double> avg_rates, std::span<const double> gains_sq)
{
    require(!gains_sq.empty() && avg_rates.size() == gains_sq.size(), "pfs_select: dimension mismatch");
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < gains_sq.size(); ++k) {
        require(avg_rates[k] > 0.0, "pfs_select: average rates must be > 0");
        const double s = pfs_score(avg_rates[k], gains_sq[k]);
        if (s > best_score) {
            best = k;
            best_score = s;
        }
    }
    return best;
}

namespace detail {

inline std::size_t argmax(std::span<const double> v)
{
    return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

inline SchemeResult finish(std::vector<double> time_avg_rates, double xi, SlotAllocation slots)
{
    SchemeResult r;
    r.per_user_rate = std::move(time_avg_rates);
    for (double& v : r.per_user_rate)
        v *= xi;
    r.net_sum_capacity = 0.0;
    for (double v : r.per_user_rate)
        r.net_sum_capacity += v;
    r.fairness = fairness_index(r.per_user_rate);
    r.slots = std::move(slots);
    return r;
}

} // namespace detail

/// Per-user optimized reflection and the gain |c_k|^2 it achieves.
struct UserOptimum {
    std::vector<PhaseIndex> theta;
    double gain = 0.0;
};

inline std::vector<UserOptimum> optimize_users(const ChannelRealization& chan, const SchemeSettings& s)
{
    std::vector<UserOptimum> out(chan.users());
    for (std::size_t k = 0; k < chan.users(); ++k) {
        if (chan.atoms() == 0) {
            out[k].gain = std::norm(chan.h[k]);
            continue;
        }
        const auto terms = quadratic_form_terms(chan.h[k], chan.g, chan.user_ris(k));
        auto it = optimize_phases(terms, s.alphabet, s.optimizer);
        out[k].gain = it.objective;
        out[k].theta = std::move(it.theta);
    }
    return out;
}

/// |c_k^(m)|^2 for every slot, stored slot-major (m * K + k).
inline std::vector<double> slot_gains(const ChannelRealization& chan, const ReflectionSchedule& schedule,
                                      const PhaseAlphabet& alphabet)
{
    require(schedule.atoms() == chan.atoms(), "slot_gains: schedule does not match Q");
    const std::size_t users = chan.users();
    std::vector<double> gains(schedule.slots() * users);
    for (std::size_t m = 0; m < schedule.slots(); ++m)
        for (std::size_t k = 0; k < users; ++k)
            gains[m * users + k] = std::norm(overall_gain(chan.h[k], chan.g, chan.user_ris(k), schedule.column(m), alphabet));
    return gains;
}

/// Slowly time-varying optimized RIS with full CSIT.
inline SchemeResult run_stv_opt(const ChannelRealization& chan, const SchemeSettings& s)
{
    require(chan.users() >= 1 && s.slots >= 1, "run_stv_opt: need K >= 1 and M >= 1");
    const auto optima = optimize_users(chan, s);
    std::vector<double> gains(optima.size());
    for (std::size_t k = 0; k < optima.size(); ++k)
        gains[k] = optima[k].gain;
    const std::size_t winner = detail::argmax(gains);

    std::vector<double> rates(chan.users(), 0.0);
    rates[winner] = std::log2(1.0 + s.p_tx * gains[winner]);
    SlotAllocation slots(s.slots, SlotAssignment{winner, s.p_tx});
    return detail::finish(std::move(rates), s.xi_full, std::move(slots));
}

/// Randomized rapidly time-varying RIS with partial CSIT.
inline SchemeResult run_rtv_rand(const ChannelRealization& chan, const ReflectionSchedule& schedule,
                                 const SchemeSettings& s)
{
    const std::size_t users = chan.users();
    const std::size_t slots = schedule.slots();
    const auto gains = slot_gains(chan, schedule, s.alphabet);

    std::vector<double> rates(users, 0.0);
    SlotAllocation alloc(slots);
    for (std::size_t m = 0; m < slots; ++m) {
        const std::span<const double> g(gains.data() + m * users, users);
        const std::size_t w = detail::argmax(g);
        rates[w] += std::log2(1.0 + s.p_tx * g[w]);
        alloc[m] = {w, s.p_tx};
    }
    for (double& r : rates)
        r /= static_cast<double>(slots);
    return detail::finish(std::move(rates), s.xi_partial, std::move(alloc));
}

/// Per-slot optimized RIS with proportional fair selection and full CSIT.
///
/// The inner phase problem of each user is unchanged by the PFS exponent
/// (x -> x^(2/R) is monotone), and channels are constant over the block, so
/// each user's optimum is computed once and reused in every slot; the slot's
/// reflection is the winner's optimum. Power is water-filled over the PFS
/// weighted gains alpha_pfs in two passes: pass 1 runs the schedule and the
/// averages under equal power P_TX, pass 2 water-fills and recomputes rates.
/// Selection scores use the slot SNR P_TX |c_k|^2.
inline SchemeResult run_pfs_full(const ChannelRealization& chan, const SchemeSettings& s)
{
    const std::size_t users = chan.users();
    const std::size_t slots = s.slots;
    require(users >= 1 && slots >= 1, "run_pfs_full: need K >= 1 and M >= 1");
    const auto optima = optimize_users(chan, s);
    std::vector<double> snr(users);
    for (std::size_t k = 0; k < users; ++k)
        snr[k] = s.p_tx * optima[k].gain;

    constexpr double kAlphaMin = 1e-12;
    constexpr double kAlphaMax = 1e12;
    EwmaState ewma{std::vector<double>(users, 0.0), 0, s.floor_epsilon};
    std::vector<std::size_t> winners(slots);
    std::vector<double> alpha_pfs(slots);
    std::vector<double> slot_rates(users);
    for (std::size_t m = 0; m < slots; ++m) {
        const std::size_t w = m == 0 ? detail::argmax(snr) : pfs_select(ewma.avg_rates, snr);
        // slot 0 has no prior average: its exponent uses the average after slot 0
        double score = m == 0 ? 0.0 : pfs_score(ewma.avg_rates[w], snr[w]);
        winners[m] = w;
        std::fill(slot_rates.begin(), slot_rates.end(), 0.0);
        slot_rates[w] = std::log2(1.0 + snr[w]);
        ewma = ewma_update(std::move(ewma), slot_rates);
        if (m == 0)
            score = pfs_score(ewma.avg_rates[w], snr[w]);
        alpha_pfs[m] = std::clamp(std::exp(score), kAlphaMin, kAlphaMax);
    }

    const auto wf = waterfill(alpha_pfs, s.p_tx, s.waterfill_tolerance);
    std::vector<double> rates(users, 0.0);
    SlotAllocation alloc(slots);
    for (std::size_t m = 0; m < slots; ++m) {
        const std::size_t w = winners[m];
        rates[w] += std::log2(1.0 + wf.powers[m] * optima[w].gain);
        if (wf.powers[m] > 0.0)
            alloc[m] = {w, wf.powers[m]};
    }
    for (double& r : rates)
        r /= static_cast<double>(slots);
    return detail::finish(std::move(rates), s.xi_full, std::move(alloc));
}

/// Randomized RIS with proportional fair selection and equal power.
inline SchemeResult run_pfs_rand(const ChannelRealization& chan, const ReflectionSchedule& schedule,
                                 const SchemeSettings& s)
{
    const std::size_t users = chan.users();
    const std::size_t slots = schedule.slots();
    const auto gains = slot_gains(chan, schedule, s.alphabet);

    EwmaState ewma{std::vector<double>(users, 0.0), 0, s.floor_epsilon};
    std::vector<double> rates(users, 0.0);
    std::vector<double> snr(users);
    std::vector<double> slot_rates(users);
    SlotAllocation alloc(slots);
    for (std::size_t m = 0; m < slots; ++m) {
        for (std::size_t k = 0; k < users; ++k)
            snr[k] = s.p_tx * gains[m * users + k];
        const std::size_t w = m == 0 ? detail::argmax(snr) : pfs_select(ewma.avg_rates, snr);
        std::fill(slot_rates.begin(), slot_rates.end(), 0.0);
        slot_rates[w] = std::log2(1.0 + snr[w]);
        rates[w] += slot_rates[w];
        ewma = ewma_update(std::move(ewma), slot_rates);
        alloc[m] = {w, s.p_tx};
    }
    for (double& r : rates)
        r /= static_cast<double>(slots);
    return detail::finish(std::move(rates), s.xi_partial, std::move(alloc));
}

/// Direct links only; best user for the whole block.
inline SchemeResult run_no_ris(const ChannelRealization& chan, const SchemeSettings& s)
{
    require(chan.users() >= 1 && s.slots >= 1, "run_no_ris: need K >= 1 and M >= 1");
    std::vector<double> gains(chan.users());
    for (std::size_t k = 0; k < chan.users(); ++k)
        gains[k] = std::norm(chan.h[k]);
    const std::size_t winner = detail::argmax(gains);
    std::vector<double> rates(chan.users(), 0.0);
    rates[winner] = std::log2(1.0 + s.p_tx * gains[winner]);
    return detail::finish(std::move(rates), s.xi_no_ris, SlotAllocation(s.slots, SlotAssignment{winner, s.p_tx}));
}

} // namespace ris

#endif
