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

#ifndef RIS_SIM_CONFIG_HPP
#define RIS_SIM_CONFIG_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "types.hpp"

namespace ris {

enum class Scheme { stv_opt, rtv_rand, pfs_full, pfs_rand, no_ris };

inline constexpr std::array<Scheme, 5> kAllSchemes = {Scheme::stv_opt, Scheme::rtv_rand, Scheme::pfs_full,
                                                      Scheme::pfs_rand, Scheme::no_ris};

inline std::string_view scheme_name(Scheme s)
{
    switch (s) {
    case Scheme::stv_opt: return "stv_opt";
    case Scheme::rtv_rand: return "rtv_rand";
    case Scheme::pfs_full: return "pfs_full";
    case Scheme::pfs_rand: return "pfs_rand";
    case Scheme::no_ris: return "no_ris";
    }
    return "unknown";
}

inline std::optional<Scheme> parse_scheme(std::string_view name)
{
    for (Scheme s : kAllSchemes)
        if (scheme_name(s) == name)
            return s;
    return std::nullopt;
}

/// Thrown for malformed or inconsistent configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ClusterConfig {
    Point2 center{40.0, -10.0};
    double radius = 10.0;
    bool homogeneous = true;
};

struct OverheadConfig {
    int n_down_full = 1;
    int n_par = 2;
    std::optional<long> n_up_full; // unset: K (Q + 1)
};

/// Every knob of one simulation campaign. Physical quantities are SI; the
/// element spacing is expressed in carrier wavelengths.
struct SystemConfig {
    int users = 16;
    int ris_x = 10;
    int ris_y = 10;
    int slots = 100;             // M, slots simulated per coherence block
    int frame_slots = 2500;      // slots per coherence interval used for pilot accounting
    int symbols_per_slot = 80;   // P
    int phase_bits = 2;          // b
    double ricean_factor = 3.0;  // kappa
    bool pure_los_g = false;
    double pathloss_exponent = 1.6;
    double eirp_dbm = 33.0;
    double noise_dbm = -100.0;
    double carrier_hz = 1.5e9;
    double element_spacing = 0.5;
    double ue_gain_dbi = 5.0;
    /// Antenna gain of the RIS -> UE link: the RIS aperture gain when true,
    /// the UE gain otherwise.
    bool ris_gain_on_user_link = true;
    Point2 tx{0.0, 0.0};
    Point2 ris{10.0, 0.0};
    ClusterConfig cluster;
    OverheadConfig overhead;
    int runs = 200;
    std::uint64_t base_seed = 1;
    std::string rng = "mt19937_64";
    std::vector<Scheme> schemes{kAllSchemes.begin(), kAllSchemes.end()};
    double floor_epsilon = 1e-3;
    int max_iterations = 20;
    double relative_tolerance = 1e-9;
    double waterfill_tolerance = 1e-10;

    int atoms() const { return ris_x * ris_y; }
    double wavelength() const { return kSpeedOfLight / carrier_hz; }
    /// Total transmit SNR; noise is unit variance after normalization.
    double transmit_snr() const { return db_to_linear(eirp_dbm - noise_dbm); }
    /// L_c, symbols per coherence interval.
    long coherence_symbols() const { return static_cast<long>(frame_slots) * symbols_per_slot; }
    long uplink_pilots_full() const
    {
        return overhead.n_up_full ? *overhead.n_up_full : static_cast<long>(users) * (atoms() + 1);
    }

    bool has_scheme(Scheme s) const { return std::find(schemes.begin(), schemes.end(), s) != schemes.end(); }

    void validate() const
    {
        auto check = [](bool ok, const std::string& what) {
            if (!ok)
                throw ConfigError("invalid config: " + what);
        };
        check(users >= 1, "users must be >= 1");
        check(ris_x >= 1 && ris_y >= 1, "ris_x and ris_y must be >= 1");
        check(slots >= 1, "slots must be >= 1");
        check(frame_slots >= slots, "frame_slots must be >= slots");
        check(symbols_per_slot >= 1, "symbols_per_slot must be >= 1");
        check(phase_bits >= 0 && phase_bits <= 16, "phase_bits must be in [0, 16]");
        check(ricean_factor >= 0.0 && std::isfinite(ricean_factor), "ricean_factor must be finite and >= 0");
        check(std::isfinite(pathloss_exponent), "pathloss_exponent must be finite");
        check(std::isfinite(eirp_dbm) && std::isfinite(noise_dbm), "eirp_dbm/noise_dbm must be finite");
        check(carrier_hz > 0.0, "carrier_hz must be > 0");
        check(element_spacing > 0.0, "element_spacing must be > 0");
        check(cluster.radius >= 0.0, "cluster.radius must be >= 0");
        check(overhead.n_down_full >= 0 && overhead.n_par >= 0, "pilot counts must be >= 0");
        check(!overhead.n_up_full || *overhead.n_up_full >= 0, "overhead.n_up_full must be >= 0");
        check(runs >= 1, "runs must be >= 1");
        check(rng == "mt19937_64", "unknown rng identifier '" + rng + "'");
        check(!schemes.empty(), "schemes must not be empty");
        check(floor_epsilon > 0.0, "floor_epsilon must be > 0");
        check(max_iterations >= 1, "max_iterations must be >= 1");
        check(relative_tolerance >= 0.0 && waterfill_tolerance > 0.0, "tolerances must be positive");
        check(distance(tx, ris) > 0.0, "tx and ris positions coincide");
    }
};

namespace detail {

inline Point2 point_from_json(const nlohmann::json& j, const char* key)
{
    if (!j.is_array() || j.size() != 2)
        throw ConfigError(std::string("invalid config: '") + key + "' must be [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

template <class T>
void read_optional(const nlohmann::json& j, const char* key, T& target)
{
    if (j.contains(key))
        target = j.at(key).get<T>();
}

} // namespace detail

inline SystemConfig config_from_json(const nlohmann::json& j)
{
    SystemConfig c;
    if (!j.is_object())
        throw ConfigError("invalid config: top level must be an object");
    try {
        using detail::read_optional;
        read_optional(j, "users", c.users);
        read_optional(j, "ris_x", c.ris_x);
        read_optional(j, "ris_y", c.ris_y);
        read_optional(j, "slots", c.slots);
        if (j.contains("frame_slots"))
            c.frame_slots = j.at("frame_slots").get<int>();
        else
            c.frame_slots = std::max(c.frame_slots, c.slots);
        read_optional(j, "symbols_per_slot", c.symbols_per_slot);
        read_optional(j, "phase_bits", c.phase_bits);
        read_optional(j, "ricean_factor", c.ricean_factor);
        read_optional(j, "pure_los_g", c.pure_los_g);
        read_optional(j, "pathloss_exponent", c.pathloss_exponent);
        read_optional(j, "eirp_dbm", c.eirp_dbm);
        read_optional(j, "noise_dbm", c.noise_dbm);
        read_optional(j, "carrier_hz", c.carrier_hz);
        read_optional(j, "element_spacing", c.element_spacing);
        read_optional(j, "ue_gain_dbi", c.ue_gain_dbi);
        read_optional(j, "ris_gain_on_user_link", c.ris_gain_on_user_link);
        if (j.contains("tx_position"))
            c.tx = detail::point_from_json(j.at("tx_position"), "tx_position");
        if (j.contains("ris_position"))
            c.ris = detail::point_from_json(j.at("ris_position"), "ris_position");
        if (j.contains("cluster")) {
            const auto& cl = j.at("cluster");
            read_optional(cl, "homogeneous", c.cluster.homogeneous);
            c.cluster.radius = c.cluster.homogeneous ? 10.0 : 100.0;
            read_optional(cl, "radius", c.cluster.radius);
            if (cl.contains("center"))
                c.cluster.center = detail::point_from_json(cl.at("center"), "cluster.center");
        }
        if (j.contains("overhead")) {
            const auto& ov = j.at("overhead");
            read_optional(ov, "n_down_full", c.overhead.n_down_full);
            read_optional(ov, "n_par", c.overhead.n_par);
            if (ov.contains("n_up_full") && !ov.at("n_up_full").is_null())
                c.overhead.n_up_full = ov.at("n_up_full").get<long>();
        }
        read_optional(j, "runs", c.runs);
        read_optional(j, "base_seed", c.base_seed);
        read_optional(j, "rng", c.rng);
        if (j.contains("schemes")) {
            c.schemes.clear();
            for (const auto& name : j.at("schemes")) {
                const auto s = parse_scheme(name.get<std::string>());
                if (!s)
                    throw ConfigError("invalid config: unknown scheme '" + name.get<std::string>() + "'");
                c.schemes.push_back(*s);
            }
        }
        read_optional(j, "floor_epsilon", c.floor_epsilon);
        read_optional(j, "max_iterations", c.max_iterations);
        read_optional(j, "relative_tolerance", c.relative_tolerance);
        read_optional(j, "waterfill_tolerance", c.waterfill_tolerance);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    c.validate();
    return c;
}

inline SystemConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed JSON in '" + path + "': " + e.what());
    }
    return config_from_json(j);
}

} // namespace ris

#endif
