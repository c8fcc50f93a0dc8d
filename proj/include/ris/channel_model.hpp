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

// Geometry, large-scale path loss and block-fading channel draws for the
// TX -> UE direct links, the TX -> RIS link and the RIS -> UE links.

#ifndef RIS_SIM_CHANNEL_MODEL_HPP
#define RIS_SIM_CHANNEL_MODEL_HPP

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "config.hpp"
#include "rng.hpp"
#include "types.hpp"

namespace ris {

struct Geometry {
    Point2 tx;
    Point2 ris;
    std::vector<Point2> users;
    Point2 cluster_center;
    double cluster_radius = 0.0;
};

struct SpatialSignatureParams {
    int qx = 1;
    int qy = 1;
    double element_spacing = 0.0; // meters
    double azimuth = 0.0;         // [0, 2 pi)
    double elevation = 0.0;       // [-pi/2, pi/2)

    int atoms() const { return qx * qy; }
};

/// Large-scale channel parameters for one coherence block. Variances are linear.
struct ChannelParams {
    double wavelength = 0.0;
    double ricean_factor = 0.0;
    bool pure_los = false;
    double sigma_g_sq = 0.0;
    std::vector<double> sigma_h_sq;
    std::vector<double> sigma_f_sq;
};

/// One coherence block's channel draw. Column k of f is the RIS -> UE vector f_k.
struct ChannelRealization {
    CVector h;
    CVector g;
    ComplexMatrix f;

    std::size_t users() const { return h.size(); }
    std::size_t atoms() const { return g.size(); }
    std::span<const Complex> user_ris(std::size_t k) const { return f.column(k); }
};

/// Kronecker product of the x and y steering vectors of a planar RIS.
inline CVector spatial_signature(const SpatialSignatureParams& p, double wavelength)
{
    require(p.qx >= 1 && p.qy >= 1, "spatial_signature: Qx and Qy must be >= 1");
    require(p.element_spacing > 0.0, "spatial_signature: element spacing must be > 0");
    require(wavelength > 0.0, "spatial_signature: wavelength must be > 0");

    const double ux = std::sin(p.azimuth) * std::cos(p.elevation);
    const double uy = std::sin(p.azimuth) * std::sin(p.elevation);
    const double k0 = 2.0 * kPi / wavelength * p.element_spacing;

    CVector out;
    out.reserve(static_cast<std::size_t>(p.atoms()));
    for (int ix = 0; ix < p.qx; ++ix) {
        const Complex ax = std::polar(1.0, k0 * ix * ux);
        for (int iy = 0; iy < p.qy; ++iy)
            out.push_back(ax * std::polar(1.0, k0 * iy * uy));
    }
    return out;
}

/// sigma^2 = G d^-eta lambda^2 / (4 pi)^2
inline double pathloss_variance(double gain, double distance, double exponent, double wavelength)
{
    if (!(distance > 0.0))
        throw std::invalid_argument("pathloss_variance: degenerate geometry (distance must be > 0)");
    require(gain > 0.0, "pathloss_variance: gain must be > 0");
    return gain * std::pow(distance, -exponent) * wavelength * wavelength / (16.0 * kPi * kPi);
}

/// Uniform point in a disk: radius R sqrt(U), angle 2 pi U'.
inline Point2 sample_in_disk(Point2 center, double radius, Rng& rng)
{
    const double r = radius * std::sqrt(rng.uniform());
    const double phi = 2.0 * kPi * rng.uniform();
    return {center.x + r * std::cos(phi), center.y + r * std::sin(phi)};
}

inline Geometry sample_geometry(const SystemConfig& config, Rng& rng)
{
    require(config.users >= 1, "sample_geometry: K must be >= 1");
    Geometry geo{config.tx, config.ris, {}, config.cluster.center, config.cluster.radius};
    geo.users.reserve(static_cast<std::size_t>(config.users));
    for (int k = 0; k < config.users; ++k)
        geo.users.push_back(sample_in_disk(geo.cluster_center, geo.cluster_radius, rng));
    return geo;
}

/// Path-loss variances for every link. The TX -> RIS link uses the RIS
/// aperture gain 4 pi A / lambda^2 with A = Q (lambda/2)^2, as does the
/// RIS -> UE link unless ris_gain_on_user_link is off, in which case it uses
/// the UE antenna gain like the direct link.
inline ChannelParams channel_params(const SystemConfig& config, const Geometry& geo)
{
    ChannelParams p;
    p.wavelength = config.wavelength();
    p.ricean_factor = config.ricean_factor;
    p.pure_los = config.pure_los_g;

    const double lambda = p.wavelength;
    const double area = config.atoms() * (lambda / 2.0) * (lambda / 2.0);
    const double ris_gain = 4.0 * kPi * area / (lambda * lambda);
    const double ue_gain = db_to_linear(config.ue_gain_dbi);
    const double eta = config.pathloss_exponent;

    p.sigma_g_sq = pathloss_variance(ris_gain, distance(geo.tx, geo.ris), eta, lambda);
    for (const Point2& u : geo.users) {
        p.sigma_h_sq.push_back(pathloss_variance(ue_gain, distance(geo.tx, u), eta, lambda));
        p.sigma_f_sq.push_back(pathloss_variance(config.ris_gain_on_user_link ? ris_gain : ue_gain, distance(geo.ris, u), eta, lambda));
    }
    return p;
}

/// Azimuth ~ U[0, 2 pi), elevation ~ U[-pi/2, pi/2), drawn once per block.
inline SpatialSignatureParams sample_signature_params(const SystemConfig& config, Rng& rng)
{
    SpatialSignatureParams s;
    s.qx = config.ris_x;
    s.qy = config.ris_y;
    s.element_spacing = config.element_spacing * config.wavelength();
    s.azimuth = 2.0 * kPi * rng.uniform();
    s.elevation = kPi * rng.uniform() - kPi / 2.0;
    return s;
}

/// Rician TX -> RIS vector: sigma_g (sqrt(k/(k+1)) + sqrt(1/(k+1)) g_dif) a_RIS.
inline CVector sample_tx_ris_channel(const ChannelParams& params, std::span<const Complex> signature, Rng& rng)
{
    const double sigma_g = std::sqrt(params.sigma_g_sq);
    Complex scale = sigma_g;
    if (!params.pure_los) {
        const double kappa = params.ricean_factor;
        const Complex diffuse = rng.complex_normal(1.0);
        scale = sigma_g * (std::sqrt(kappa / (kappa + 1.0)) + std::sqrt(1.0 / (kappa + 1.0)) * diffuse);
    }
    CVector g(signature.begin(), signature.end());
    for (Complex& v : g)
        v *= scale;
    return g;
}

/// Draws h_k ~ CN(0, sigma_h^2) and f_k ~ CN(0, sigma_f^2 I) for one user.
inline void sample_user_channel(const ChannelParams& params, std::size_t k, std::span<Complex> f_k, Complex& h_k,
                                Rng& rng)
{
    h_k = params.sigma_h_sq[k] > 0.0 ? rng.complex_normal(params.sigma_h_sq[k]) : Complex{};
    for (Complex& v : f_k)
        v = params.sigma_f_sq[k] > 0.0 ? rng.complex_normal(params.sigma_f_sq[k]) : Complex{};
}

struct UserChannels {
    CVector h;
    ComplexMatrix f;
};

inline UserChannels sample_user_channels(const ChannelParams& params, std::size_t users, std::size_t atoms, Rng& rng)
{
    require(users >= 1 && atoms >= 1, "sample_user_channels: K and Q must be >= 1");
    require(params.sigma_h_sq.size() >= users && params.sigma_f_sq.size() >= users,
            "sample_user_channels: missing per-user variances");
    UserChannels out{CVector(users), ComplexMatrix(atoms, users)};
    for (std::size_t k = 0; k < users; ++k)
        sample_user_channel(params, k, out.f.column(k), out.h[k], rng);
    return out;
}

} // namespace ris

#endif
