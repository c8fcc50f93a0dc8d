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

// Self-checks run by `ris_sim validate`: water-filling KKT conditions,
// coordinate ascent against exhaustive search, and a Kolmogorov-Smirnov test
// of the gain distribution.

#ifndef RIS_SIM_VALIDATION_HPP
#define RIS_SIM_VALIDATION_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "phase_optimizer.hpp"
#include "power_allocation.hpp"
#include "ris_reflection.hpp"
#include "rng.hpp"
#include "types.hpp"

namespace ris {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Largest KKT or budget violation of a water-filling solution.
inline double waterfill_kkt_violation(std::span<const double> alphas, double p_tx, const WaterfillResult& r)
{
    const double level = r.water_level();
    double used = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const double inv = 1.0 / alphas[i];
        used += r.powers[i];
        worst = std::max(worst, std::max(0.0, -r.powers[i]));
        if (r.powers[i] > 0.0)
            worst = std::max(worst, std::abs(r.powers[i] - (level - inv)) / std::max(1.0, level));
        else
            worst = std::max(worst, std::max(0.0, level - inv) / std::max(1.0, level));
    }
    used /= static_cast<double>(alphas.size());
    return std::max(worst, std::abs(used - p_tx) / std::max(1.0, p_tx));
}

inline CheckResult check_waterfill(int instances, std::uint64_t seed)
{
    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < instances; ++i) {
        const auto slots = 1 + static_cast<std::size_t>(rng.uniform_bits(4));
        std::vector<double> alphas(slots);
        for (double& a : alphas)
            a = std::exp(4.0 * rng.normal());
        const double p_tx = std::exp(3.0 * rng.normal());
        worst = std::max(worst, waterfill_kkt_violation(alphas, p_tx, waterfill(alphas, p_tx)));
    }
    return {"waterfill KKT", worst <= 1e-9, "max violation " + std::to_string(worst)};
}

inline CheckResult check_phase_optimizer(int instances, std::uint64_t seed)
{
    Rng rng(seed);
    const PhaseAlphabet alphabet(1);
    int optimal = 0;
    bool sound = true;
    for (int i = 0; i < instances; ++i) {
        const std::size_t atoms = 1 + rng.uniform_bits(3);
        CVector g(atoms), f(atoms);
        for (std::size_t q = 0; q < atoms; ++q) {
            g[q] = rng.complex_normal(1.0);
            f[q] = rng.complex_normal(1.0);
        }
        const auto terms = quadratic_form_terms(rng.complex_normal(1.0), g, f);
        const std::vector<PhaseIndex> zeros(atoms, 0);
        const double start = objective(terms, zeros, alphabet);
        const auto ascent = optimize_phases(terms, alphabet);
        const auto best = exhaustive_oracle(terms, alphabet);
        const double tol = 1e-9 * std::max(1.0, best.objective);
        sound = sound && ascent.objective >= start - tol && ascent.objective <= best.objective + tol;
        if (ascent.objective >= best.objective - tol)
            ++optimal;
    }
    const double rate = static_cast<double>(optimal) / instances;
    return {"phase optimizer vs exhaustive", sound && rate >= 0.95, "optimal in " + std::to_string(rate * 100) + "%"};
}

/// Asymptotic Kolmogorov p-value with the Stephens small-sample correction.
inline double ks_p_value(double d, std::size_t n)
{
    const double sn = std::sqrt(static_cast<double>(n));
    const double lambda = (sn + 0.12 + 0.11 / sn) * d;
    if (lambda < 1e-3)
        return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += (j % 2 ? 2.0 : -2.0) * term;
        if (term < 1e-16)
            break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

/// sup |F_n - F| for samples against the CDF `cdf`.
template <class Cdf>
double ks_statistic(std::vector<double> samples, Cdf cdf)
{
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

/// |c|^2 over fresh user channels with g and Gamma held fixed, against
/// Exp(sigma_h^2 + sigma_f^2 sigma_g^2 Q). g has constant modulus.
inline CheckResult check_gain_distribution(std::size_t atoms, std::size_t samples, std::uint64_t seed)
{
    Rng rng(seed);
    const PhaseAlphabet alphabet(2);
    const double sigma_h_sq = 0.7, sigma_f_sq = 0.2, sigma_g_sq = 1.5;
    CVector g(atoms);
    for (Complex& v : g)
        v = std::polar(std::sqrt(sigma_g_sq), 2.0 * kPi * rng.uniform());
    std::vector<PhaseIndex> gamma(atoms);
    for (auto& l : gamma)
        l = static_cast<PhaseIndex>(rng.uniform_bits(alphabet.bits()));

    const double theta = sigma_h_sq + sigma_f_sq * sigma_g_sq * static_cast<double>(atoms);
    std::vector<double> gains(samples);
    CVector f(atoms);
    for (double& x : gains) {
        const Complex h = rng.complex_normal(sigma_h_sq);
        for (Complex& v : f)
            v = rng.complex_normal(sigma_f_sq);
        x = std::norm(overall_gain(h, g, f, gamma, alphabet));
    }
    const double d = ks_statistic(gains, [theta](double x) { return 1.0 - std::exp(-x / theta); });
    const double p = ks_p_value(d, samples);
    return {"gain distribution KS (Q=" + std::to_string(atoms) + ")", p > 0.05, "p = " + std::to_string(p)};
}

inline std::vector<CheckResult> run_validation_suite(std::uint64_t seed = 1)
{
    return {check_waterfill(1000, seed), check_phase_optimizer(500, seed + 1),
            check_gain_distribution(16, 10000, seed + 2), check_gain_distribution(64, 10000, seed + 3)};
}

} // namespace ris

#endif
