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

// Analytical results for the randomized scheme with homogeneous users and a
// pure line-of-sight TX -> RIS link. Each |c_k|^2 is then exponential with
// mean theta = sigma_h^2 + sigma_f^2 sigma_g^2 Q, and the scheduled gain is the
// maximum of K such variables, which tends to a Gumbel law with location
// theta ln K and scale theta.

#ifndef RIS_SIM_ASYMPTOTICS_HPP
#define RIS_SIM_ASYMPTOTICS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "types.hpp"

namespace ris {

struct HomogeneousModel {
    double theta_mean = 1.0;
    int users = 1;
    double p_tx = 1.0;
    double xi_par = 1.0;
};

struct GumbelConstants {
    double location = 0.0; // b_K
    double scale = 1.0;    // a_K
};

inline void check_model(const HomogeneousModel& m)
{
    require(m.theta_mean > 0.0 && std::isfinite(m.theta_mean), "HomogeneousModel: theta_mean must be > 0");
    require(m.users >= 1, "HomogeneousModel: K must be >= 1");
    require(m.p_tx >= 0.0 && std::isfinite(m.p_tx), "HomogeneousModel: P_TX must be >= 0");
    require(m.xi_par > 0.0 && m.xi_par <= 1.0, "HomogeneousModel: xi_par must be in (0, 1]");
}

/// theta = sigma_h^2 + sigma_f^2 sigma_g^2 Q
inline double homogeneous_mean(double sigma_h_sq, double sigma_f_sq, double sigma_g_sq, int atoms)
{
    return sigma_h_sq + sigma_f_sq * sigma_g_sq * atoms;
}

inline GumbelConstants gumbel_constants(const HomogeneousModel& m)
{
    check_model(m);
    return {m.theta_mean * std::log(static_cast<double>(m.users)), m.theta_mean};
}

/// CDF of the maximum of K i.i.d. exponentials, (1 - e^{-a/theta})^K.
inline double max_exp_cdf(double alpha, const HomogeneousModel& m)
{
    if (alpha < 0.0)
        return 0.0;
    const double tail = std::exp(-alpha / m.theta_mean);
    return std::exp(m.users * std::log1p(-tail));
}

/// (K/theta) e^{-a/theta} (1 - e^{-a/theta})^{K-1}
inline double max_exp_pdf(double alpha, const HomogeneousModel& m)
{
    if (alpha < 0.0)
        return 0.0;
    const double tail = std::exp(-alpha / m.theta_mean);
    const double body = m.users == 1 ? 1.0 : std::exp((m.users - 1) * std::log1p(-tail));
    return m.users / m.theta_mean * tail * body;
}

inline double gumbel_cdf(double alpha, const GumbelConstants& c)
{
    return std::exp(-std::exp(-(alpha - c.location) / c.scale));
}

inline double gumbel_pdf(double alpha, const GumbelConstants& c)
{
    const double z = (alpha - c.location) / c.scale;
    // e^{-z} overflows long before the density becomes non-negligible
    if (z < -700.0)
        return 0.0;
    return std::exp(-z - std::exp(-z)) / c.scale;
}

namespace detail {

/// Adaptive Gauss-Kronrod over consecutive breakpoints; throws when the summed
/// error estimate misses the absolute tolerance.
template <class F>
double integrate(F f, std::vector<double> points, double abs_tol)
{
    std::sort(points.begin(), points.end());
    double value = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!(points[i + 1] > points[i]))
            continue;
        double e = 0.0;
        value += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, points[i], points[i + 1], 8,
                                                                              1e-10, &e);
        error += e;
    }
    if (!(error <= abs_tol) || !std::isfinite(value))
        throw std::runtime_error("quadrature did not converge: achieved error estimate " + std::to_string(error) +
                                 " > " + std::to_string(abs_tol));
    return value;
}

/// Integral of a capacity integrand over [lower, upper] in units of theta.
/// Breakpoints sit at the density mode and at decades from the kink of
/// log2(1 + snr x) at 1/snr, which bisection alone cannot reach at high SNR.
/// The integrand increases below the mode, so intervals there whose bound
/// f(b) (b - a) is negligible are skipped and the bound counted as error.
template <class F>
double integrate_capacity(F f, double lower, double mode, double upper, double snr, double abs_tol)
{
    std::vector<double> pts{lower, upper};
    if (mode > lower && mode < upper)
        pts.push_back(mode);
    for (double x = 1.0 / snr; x < std::min(std::max(mode, 1.0), upper); x *= 10.0)
        if (x > lower)
            pts.push_back(x);
    std::sort(pts.begin(), pts.end());

    const double skip_budget = abs_tol * 1e-3;
    double skipped = 0.0;
    std::size_t first = 0;
    while (first + 2 < pts.size() && pts[first + 1] <= mode &&
           skipped + f(pts[first + 1]) * (pts[first + 1] - pts[first]) <= skip_budget) {
        skipped += f(pts[first + 1]) * (pts[first + 1] - pts[first]);
        ++first;
    }
    pts.erase(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(first));
    return integrate(f, std::move(pts), abs_tol - skipped);
}

} // namespace detail

/// xi E[log2(1 + P alpha)] under the exact max-of-exponentials law.
/// Integrated over x = alpha / theta and truncated at ln K + 40, beyond which
/// the tail mass is below e^-40.
inline double avg_capacity_exact(const HomogeneousModel& m, double abs_tol = 1e-8)
{
    check_model(m);
    if (m.p_tx == 0.0)
        return 0.0;
    const double snr = m.p_tx * m.theta_mean;
    const double log_k = std::log(static_cast<double>(m.users));
    const HomogeneousModel unit{1.0, m.users, m.p_tx, m.xi_par};
    auto f = [&](double x) { return std::log2(1.0 + snr * x) * max_exp_pdf(x, unit); };
    return m.xi_par * detail::integrate_capacity(f, 0.0, log_k, log_k + 40.0, snr, abs_tol);
}

/// Same expectation under the Gumbel limit law, integrated over
/// [max(0, b - 20 a), b + 40 a].
inline double avg_capacity_gumbel(const HomogeneousModel& m, double abs_tol = 1e-8)
{
    check_model(m);
    if (m.p_tx == 0.0)
        return 0.0;
    const double snr = m.p_tx * m.theta_mean;
    const double log_k = std::log(static_cast<double>(m.users));
    const GumbelConstants unit{log_k, 1.0};
    auto f = [&](double x) { return std::log2(1.0 + snr * x) * gumbel_pdf(x, unit); };
    return m.xi_par * detail::integrate_capacity(f, std::max(0.0, log_k - 20.0), log_k, log_k + 40.0, snr, abs_tol);
}

/// Mean receive SNR under the Gumbel law, P_TX theta (ln K + C).
inline double avg_snr(const HomogeneousModel& m)
{
    check_model(m);
    return m.p_tx * m.theta_mean * (std::log(static_cast<double>(m.users)) + kEulerGamma);
}

/// sup |F_exact - F_gumbel| over `points` evenly spaced values in [0, b + 20 a].
inline double gumbel_sup_distance(const HomogeneousModel& m, int points = 10000)
{
    const GumbelConstants c = gumbel_constants(m);
    const double upper = c.location + 20.0 * c.scale;
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double a = upper * i / (points - 1);
        worst = std::max(worst, std::abs(max_exp_cdf(a, m) - gumbel_cdf(a, c)));
    }
    return worst;
}

} // namespace ris

#endif
