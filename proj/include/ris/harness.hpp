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

// Monte Carlo orchestration: one channel draw per run shared by every scheme,
// sweeps over K or Q, and CSV output.
//
// Random streams: run r owns seed base_seed ^ splitmix64(r). Inside a run,
// the RIS angles, the TX -> RIS diffuse term, every user and the randomized
// reflection schedule each get their own sub-stream, so user k sees the same
// position and channels whatever K is, and a sweep over K compares nested
// user populations.

#ifndef RIS_SIM_HARNESS_HPP
#define RIS_SIM_HARNESS_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "asymptotics.hpp"
#include "channel_model.hpp"
#include "config.hpp"
#include "ris_reflection.hpp"
#include "rng.hpp"
#include "schedulers.hpp"

namespace ris {

struct RunRecord {
    std::size_t run_index = 0;
    Scheme scheme = Scheme::stv_opt;
    int users = 0;
    int atoms = 0;
    int slots = 0;
    std::uint64_t seed = 0;
    double net_sum_capacity = 0.0;
    double fairness = 0.0;
    std::vector<double> per_user_rates;
    std::vector<std::size_t> winner_histogram;
};

struct BlockDraw {
    std::uint64_t seed = 0;
    Geometry geometry;
    ChannelParams params;
    ChannelRealization channel;
    ReflectionSchedule schedule{1, 1};
};

namespace stream {
inline constexpr std::uint64_t kSignature = 1;
inline constexpr std::uint64_t kTxRis = 2;
inline constexpr std::uint64_t kUser = 3;
inline constexpr std::uint64_t kSchedule = 4;
} // namespace stream

/// Pilot-overhead factors and scheme knobs derived from the config.
inline SchemeSettings scheme_settings(const SystemConfig& c)
{
    SchemeSettings s;
    s.p_tx = c.transmit_snr();
    s.alphabet = PhaseAlphabet(c.phase_bits);
    s.slots = static_cast<std::size_t>(c.slots);
    s.optimizer.max_iterations = c.max_iterations;
    s.optimizer.relative_tolerance = c.relative_tolerance;
    s.floor_epsilon = c.floor_epsilon;
    s.waterfill_tolerance = c.waterfill_tolerance;

    OverheadParams p;
    p.n_down_full = c.overhead.n_down_full;
    p.n_par = c.overhead.n_par;
    p.coherence_symbols = c.coherence_symbols();
    p.slots = c.frame_slots;
    p.symbols_per_slot = c.symbols_per_slot;
    try {
        p.n_up_full = c.uplink_pilots_full();
        s.xi_full = overhead_full(p);
        s.xi_partial = overhead_partial(p);
        p.n_up_full = c.users;
        s.xi_no_ris = overhead_full(p);
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("infeasible overhead: ") + e.what());
    }
    return s;
}

inline BlockDraw draw_block(const SystemConfig& c, std::size_t run_index)
{
    BlockDraw d;
    d.seed = run_seed(c.base_seed, run_index);
    const auto users = static_cast<std::size_t>(c.users);
    const auto atoms = static_cast<std::size_t>(c.atoms());

    std::vector<Rng> user_rngs;
    user_rngs.reserve(users);
    d.geometry = Geometry{c.tx, c.ris, {}, c.cluster.center, c.cluster.radius};
    for (std::size_t k = 0; k < users; ++k) {
        user_rngs.emplace_back(stream_seed(d.seed, stream::kUser, k));
        d.geometry.users.push_back(sample_in_disk(c.cluster.center, c.cluster.radius, user_rngs.back()));
    }
    d.params = channel_params(c, d.geometry);

    Rng sig_rng(stream_seed(d.seed, stream::kSignature));
    const CVector signature = spatial_signature(sample_signature_params(c, sig_rng), d.params.wavelength);
    Rng g_rng(stream_seed(d.seed, stream::kTxRis));
    d.channel.g = sample_tx_ris_channel(d.params, signature, g_rng);

    d.channel.h.resize(users);
    d.channel.f = ComplexMatrix(atoms, users);
    for (std::size_t k = 0; k < users; ++k)
        sample_user_channel(d.params, k, d.channel.f.column(k), d.channel.h[k], user_rngs[k]);

    Rng sched_rng(stream_seed(d.seed, stream::kSchedule));
    d.schedule = random_schedule(atoms, static_cast<std::size_t>(c.slots), PhaseAlphabet(c.phase_bits), sched_rng);
    return d;
}

inline SchemeResult run_scheme(Scheme scheme, const BlockDraw& d, const SchemeSettings& s)
{
    switch (scheme) {
    case Scheme::stv_opt: return run_stv_opt(d.channel, s);
    case Scheme::rtv_rand: return run_rtv_rand(d.channel, d.schedule, s);
    case Scheme::pfs_full: return run_pfs_full(d.channel, s);
    case Scheme::pfs_rand: return run_pfs_rand(d.channel, d.schedule, s);
    case Scheme::no_ris: return run_no_ris(d.channel, s);
    }
    throw std::logic_error("unknown scheme");
}

/// All records of one run, in the config's scheme order.
inline std::vector<RunRecord> run_block(const SystemConfig& c, const SchemeSettings& s, std::size_t run_index)
{
    const BlockDraw d = draw_block(c, run_index);
    std::vector<RunRecord> out;
    for (Scheme scheme : c.schemes) {
        const SchemeResult r = run_scheme(scheme, d, s);
        out.push_back({run_index, scheme, c.users, c.atoms(), c.slots, d.seed, r.net_sum_capacity, r.fairness,
                       r.per_user_rate, r.winner_histogram()});
    }
    return out;
}

/// Worker count: hardware concurrency, bounded by RIS_SIM_THREADS when set.
inline unsigned thread_budget()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("RIS_SIM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1)
            n = std::min(n, static_cast<unsigned>(v));
    }
    return n;
}

/// Runs are independent; results are assembled in run order regardless of
/// which worker finished first.
inline std::vector<RunRecord> run_monte_carlo(const SystemConfig& c, unsigned threads = thread_budget())
{
    c.validate();
    const SchemeSettings s = scheme_settings(c);
    const auto runs = static_cast<std::size_t>(c.runs);
    std::vector<std::vector<RunRecord>> per_run(runs);
    std::vector<std::exception_ptr> errors(runs);

    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t r = first; r < runs; r += stride) {
            try {
                per_run[r] = run_block(c, s, r);
            } catch (...) {
                errors[r] = std::current_exception();
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(runs)));
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work, t, threads);
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    std::vector<RunRecord> out;
    for (auto& block : per_run)
        for (auto& rec : block)
            out.push_back(std::move(rec));
    return out;
}

/// Shortest round-trip decimal form; identical bits give identical text.
inline std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline constexpr const char* kRecordCsvHeader =
    "run,scheme,K,Q,M,seed,net_sum_capacity_bps_hz,fairness,user_index,user_rate_bps_hz";

/// One row per (run, scheme, user); capacity and fairness repeat per user row.
inline void write_records_csv(std::ostream& os, const std::vector<RunRecord>& records)
{
    os << kRecordCsvHeader << '\n';
    for (const RunRecord& r : records) {
        const std::string prefix = std::to_string(r.run_index) + ',' + std::string(scheme_name(r.scheme)) + ',' +
                                   std::to_string(r.users) + ',' + std::to_string(r.atoms) + ',' +
                                   std::to_string(r.slots) + ',' + std::to_string(r.seed) + ',' +
                                   format_double(r.net_sum_capacity) + ',' + format_double(r.fairness) + ',';
        for (std::size_t k = 0; k < r.per_user_rates.size(); ++k)
            os << prefix << k << ',' << format_double(r.per_user_rates[k]) << '\n';
    }
}

enum class SweepAxis { users, atoms };

struct SweepPoint {
    SweepAxis axis = SweepAxis::users;
    int value = 0;
    Scheme scheme = Scheme::stv_opt;
    int runs = 0;
    double capacity_mean = 0.0;
    double capacity_std = 0.0;
    double fairness_mean = 0.0;
    double fairness_std = 0.0;
};

/// Near-square Qx x Qy factorization of Q.
inline std::pair<int, int> ris_layout(int atoms)
{
    require(atoms >= 1, "ris_layout: Q must be >= 1");
    int qx = static_cast<int>(std::sqrt(static_cast<double>(atoms)));
    while (qx > 1 && atoms % qx != 0)
        --qx;
    return {qx, atoms / qx};
}

inline SystemConfig with_axis_value(SystemConfig c, SweepAxis axis, int value)
{
    if (axis == SweepAxis::users) {
        c.users = value;
    } else {
        const auto [qx, qy] = ris_layout(value);
        c.ris_x = qx;
        c.ris_y = qy;
    }
    return c;
}

inline std::vector<SweepPoint> sweep(const SystemConfig& base, SweepAxis axis, const std::vector<int>& values,
                                     unsigned threads = thread_budget())
{
    if (values.empty())
        throw ConfigError("sweep: no axis values given");
    if (!std::is_sorted(values.begin(), values.end()))
        throw ConfigError("sweep: axis values must be sorted ascending");
    for (int v : values)
        if (v < 1)
            throw ConfigError("sweep: axis values must be >= 1");

    std::vector<SweepPoint> out;
    for (int v : values) {
        const SystemConfig c = with_axis_value(base, axis, v);
        const auto records = run_monte_carlo(c, threads);
        for (Scheme scheme : c.schemes) {
            double cs = 0.0, cs2 = 0.0, fs = 0.0, fs2 = 0.0;
            int n = 0;
            for (const auto& r : records) {
                if (r.scheme != scheme)
                    continue;
                cs += r.net_sum_capacity;
                cs2 += r.net_sum_capacity * r.net_sum_capacity;
                fs += r.fairness;
                fs2 += r.fairness * r.fairness;
                ++n;
            }
            SweepPoint p{axis, v, scheme, n};
            p.capacity_mean = cs / n;
            p.fairness_mean = fs / n;
            const double denom = n > 1 ? n - 1 : 1;
            p.capacity_std = std::sqrt(std::max(0.0, (cs2 - n * p.capacity_mean * p.capacity_mean) / denom));
            p.fairness_std = std::sqrt(std::max(0.0, (fs2 - n * p.fairness_mean * p.fairness_mean) / denom));
            out.push_back(p);
        }
    }
    return out;
}

inline constexpr const char* kSweepCsvHeader =
    "axis,value,scheme,runs,capacity_mean_bps_hz,capacity_std_bps_hz,fairness_mean,fairness_std";

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points)
{
    os << kSweepCsvHeader << '\n';
    for (const SweepPoint& p : points) {
        os << (p.axis == SweepAxis::users ? "K" : "Q") << ',' << p.value << ',' << scheme_name(p.scheme) << ','
           << p.runs << ',' << format_double(p.capacity_mean) << ',' << format_double(p.capacity_std) << ','
           << format_double(p.fairness_mean) << ',' << format_double(p.fairness_std) << '\n';
    }
}

struct AnalysisRow {
    int users = 0;
    int atoms = 0;
    double theta_mean = 0.0;
    double avg_snr = 0.0;
    double avg_capacity_exact = 0.0;
    double avg_capacity_gumbel = 0.0;
};

/// Homogeneous pure-LoS model with every user at the cluster center.
inline HomogeneousModel homogeneous_model(const SystemConfig& c)
{
    Geometry geo{c.tx, c.ris, {c.cluster.center}, c.cluster.center, 0.0};
    const ChannelParams p = channel_params(c, geo);
    const SchemeSettings s = scheme_settings(c);
    return {homogeneous_mean(p.sigma_h_sq[0], p.sigma_f_sq[0], p.sigma_g_sq, c.atoms()), c.users, s.p_tx,
            s.xi_partial};
}

inline std::vector<AnalysisRow> analyze(const SystemConfig& base, const std::vector<int>& user_counts)
{
    std::vector<AnalysisRow> rows;
    for (int k : user_counts) {
        SystemConfig c = base;
        c.users = k;
        const HomogeneousModel m = homogeneous_model(c);
        rows.push_back({k, c.atoms(), m.theta_mean, avg_snr(m), avg_capacity_exact(m), avg_capacity_gumbel(m)});
    }
    return rows;
}

inline constexpr const char* kAnalysisCsvHeader = "K,Q,theta,avg_snr,avg_capacity_exact_bps_hz,avg_capacity_gumbel_bps_hz";

inline void write_analysis_csv(std::ostream& os, const std::vector<AnalysisRow>& rows)
{
    os << kAnalysisCsvHeader << '\n';
    for (const auto& r : rows)
        os << r.users << ',' << r.atoms << ',' << format_double(r.theta_mean) << ',' << format_double(r.avg_snr) << ','
           << format_double(r.avg_capacity_exact) << ',' << format_double(r.avg_capacity_gumbel) << '\n';
}

} // namespace ris

#endif
