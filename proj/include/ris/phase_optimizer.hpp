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

// Discrete-phase maximization of a user's received gain
//
//   F(theta) = |h + sum_q conj(g_q) f_q e^{-j theta_q}|^2
//            = |h|^2 + 2 Re{ sum_q beta_q e^{j theta_q} }
//              + sum_{q1,q2} B_{q1,q2} e^{j theta_q1} e^{-j theta_q2}
//
// with beta = h diag(conj f) g and B = diag(conj f) g g^H diag(f). theta_q is
// the phase applied by meta-atom q, i.e. the same index that overall_gain()
// consumes. B is rank one, B = d d^H with d_q = conj(f_q) g_q, which makes a
// coordinate update O(1) once the running sum over d is maintained.

#ifndef RIS_SIM_PHASE_OPTIMIZER_HPP
#define RIS_SIM_PHASE_OPTIMIZER_HPP

#include <cmath>
#include <cstdint>
#include <algorithm>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "ris_reflection.hpp"
#include "types.hpp"

namespace ris {

struct QuadraticFormTerms {
    Complex h;
    CVector beta;
    CVector factor; // d, with B = d d^H
    double h_abs_sq = 0.0;

    std::size_t atoms() const { return beta.size(); }

    Complex B(std::size_t q1, std::size_t q2) const { return factor[q1] * std::conj(factor[q2]); }

    /// Dense row-major copy of B.
    std::vector<Complex> dense_B() const
    {
        const std::size_t n = atoms();
        std::vector<Complex> out(n * n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                out[r * n + c] = B(r, c);
        return out;
    }
};

struct PhaseIterate {
    std::vector<PhaseIndex> theta;
    double objective = 0.0;
    int iterations = 0;
};

inline QuadraticFormTerms quadratic_form_terms(Complex h, std::span<const Complex> g, std::span<const Complex> f)
{
    require(g.size() == f.size(), "quadratic_form_terms: dimension mismatch");
    QuadraticFormTerms t;
    t.h = h;
    t.h_abs_sq = std::norm(h);
    t.beta.resize(g.size());
    t.factor.resize(g.size());
    for (std::size_t q = 0; q < g.size(); ++q) {
        t.factor[q] = std::conj(f[q]) * g[q];
        t.beta[q] = h * t.factor[q];
    }
    return t;
}

/// F(theta) from the quadratic form; equals |overall_gain|^2 for the same indices.
inline double objective(const QuadraticFormTerms& t, std::span<const PhaseIndex> theta, const PhaseAlphabet& alphabet)
{
    require(theta.size() == t.atoms(), "objective: dimension mismatch");
    Complex linear{};
    Complex steered{}; // sum_q d_q e^{j theta_q}; gamma^H B gamma = |steered|^2
    for (std::size_t q = 0; q < t.atoms(); ++q) {
        const Complex e = alphabet.coefficient(theta[q]);
        linear += t.beta[q] * e;
        steered += t.factor[q] * e;
    }
    return std::max(0.0, t.h_abs_sq + 2.0 * linear.real() + std::norm(steered));
}

/// chi_nu = beta_nu + sum_{q != nu} B_{nu,q} e^{-j theta_q}.
inline Complex coordinate_coupling(const QuadraticFormTerms& t, std::span<const PhaseIndex> theta, std::size_t nu,
                                   const PhaseAlphabet& alphabet)
{
    Complex others{};
    for (std::size_t q = 0; q < t.atoms(); ++q)
        if (q != nu)
            others += std::conj(t.factor[q] * alphabet.coefficient(theta[q]));
    return t.beta[nu] + t.factor[nu] * others;
}

/// Grid phase maximizing cos(theta + angle(chi)), i.e. Re{chi e^{j theta}}.
/// The incumbent is kept when it ties the best candidate; otherwise the lowest
/// index wins.
inline PhaseIndex best_grid_phase(Complex chi, PhaseIndex incumbent, const PhaseAlphabet& alphabet)
{
    const double tie_tol = 1e-12 * std::abs(chi);
    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < alphabet.size(); ++l) {
        const double v = (chi * alphabet.coefficient(l)).real();
        if (v > best_value + tie_tol) {
            best = l;
            best_value = v;
        }
    }
    const double incumbent_value = (chi * alphabet.coefficient(incumbent)).real();
    if (incumbent_value >= best_value - tie_tol)
        return incumbent;
    return static_cast<PhaseIndex>(best);
}

inline PhaseIndex coordinate_update(const QuadraticFormTerms& t, std::span<const PhaseIndex> theta, std::size_t nu,
                                    const PhaseAlphabet& alphabet)
{
    require(nu < t.atoms() && theta.size() == t.atoms(), "coordinate_update: index out of range");
    return best_grid_phase(coordinate_coupling(t, theta, nu, alphabet), theta[nu], alphabet);
}

struct OptimizerOptions {
    int max_iterations = 20;
    double relative_tolerance = 1e-9;
    /// Called after every coordinate update with the new objective value.
    std::function<void(double)> on_update;
};

/// Block-coordinate ascent over the discrete phase grid. Starts from all-zero
/// phases and sweeps nu = 0 .. Q-1 per iteration.
inline PhaseIterate optimize_phases(const QuadraticFormTerms& t, const PhaseAlphabet& alphabet,
                                    const OptimizerOptions& options = {})
{
    const std::size_t n = t.atoms();
    require(n >= 1, "optimize_phases: Q must be >= 1");

    PhaseIterate it;
    it.theta.assign(n, 0);

    double current = objective(t, it.theta, alphabet);
    for (int i = 0; i < options.max_iterations; ++i) {
        const double sweep_start = current;
        // sum_q conj(d_q e^{j theta_q}), refreshed each sweep to bound drift
        Complex steered_conj{};
        for (std::size_t q = 0; q < n; ++q)
            steered_conj += std::conj(t.factor[q] * alphabet.coefficient(it.theta[q]));

        for (std::size_t nu = 0; nu < n; ++nu) {
            const Complex own = std::conj(t.factor[nu] * alphabet.coefficient(it.theta[nu]));
            const Complex chi = t.beta[nu] + t.factor[nu] * (steered_conj - own);
            const PhaseIndex next = best_grid_phase(chi, it.theta[nu], alphabet);
            if (next != it.theta[nu]) {
                it.theta[nu] = next;
                steered_conj += std::conj(t.factor[nu] * alphabet.coefficient(next)) - own;
            }
            if (options.on_update)
                options.on_update(objective(t, it.theta, alphabet));
        }
        it.iterations = i + 1;
        current = objective(t, it.theta, alphabet);
        if (current - sweep_start <= options.relative_tolerance * std::max(std::abs(sweep_start), 1e-300))
            break;
    }
    it.objective = current;
    return it;
}

/// Global maximum by full enumeration; refuses more than 2^24 points.
inline PhaseIterate exhaustive_oracle(const QuadraticFormTerms& t, const PhaseAlphabet& alphabet)
{
    const std::size_t n = t.atoms();
    if (static_cast<double>(alphabet.bits()) * static_cast<double>(n) > 24.0)
        throw std::length_error("exhaustive_oracle: instance too large ((2^b)^Q > 2^24)");

    PhaseIterate best;
    best.theta.assign(n, 0);
    best.objective = objective(t, best.theta, alphabet);
    std::vector<PhaseIndex> theta(n, 0);
    const std::size_t base = alphabet.size();
    while (true) {
        std::size_t q = 0;
        while (q < n && ++theta[q] == base)
            theta[q++] = 0;
        if (q == n)
            break;
        const double v = objective(t, theta, alphabet);
        if (v > best.objective) {
            best.objective = v;
            best.theta = theta;
        }
    }
    best.iterations = 1;
    return best;
}

} // namespace ris

#endif
