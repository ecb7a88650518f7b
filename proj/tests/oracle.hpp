// Copyright 2026 modebell contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-only brute-force reference implementation of the experiment. States
// are sparse maps from four-mode occupation tuples to amplitudes and the
// beamsplitter acts by direct binomial re-expansion of each creation
// monomial. No code is shared with the library: no FockBasis indexing, no
// cached unitaries, no matrix algebra. Slow and obvious on purpose.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>

namespace oracle {

using Complex = std::complex<double>;
using Occ = std::array<int, 4>;  // (a, x_A, b, x_B), later (c, d, C, D)
using SparseState = std::map<Occ, Complex>;

inline double fact(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

inline double binom(int n, int k) {
    return fact(n) / (fact(k) * fact(n - k));
}

// a^dag -> t c^dag + r d^dag, x^dag -> -r c^dag + t d^dag on modes (m1, m2).
inline SparseState beamsplit(const SparseState& in, int m1, int m2, double big_t) {
    const double t = std::sqrt(big_t);
    const double r = std::sqrt(1.0 - big_t);
    SparseState out;
    for (const auto& [occ, amp] : in) {
        const int n1 = occ[static_cast<std::size_t>(m1)];
        const int n2 = occ[static_cast<std::size_t>(m2)];
        for (int j = 0; j <= n1; ++j) {
            for (int k = 0; k <= n2; ++k) {
                const int p = j + k;
                const int q = n1 + n2 - p;
                const double coeff =
                    binom(n1, j) * binom(n2, k) * std::pow(t, j) * std::pow(r, n1 - j) *
                    std::pow(-r, k) * std::pow(t, n2 - k) *
                    std::sqrt(fact(p) * fact(q) / (fact(n1) * fact(n2)));
                Occ target = occ;
                target[static_cast<std::size_t>(m1)] = p;
                target[static_cast<std::size_t>(m2)] = q;
                out[target] += coeff * amp;
            }
        }
    }
    return out;
}

// alpha|01>_ab + beta|10>_ab with references (q + r e^{i theta} x^dag)|0>.
inline SparseState prepare(Complex alpha, Complex beta, Complex q_a, Complex r_a,
                           double theta_a, Complex q_b, Complex r_b, double theta_b) {
    SparseState state;
    const std::array<std::pair<std::pair<int, int>, Complex>, 2> system = {{
        {{0, 1}, alpha},
        {{1, 0}, beta},
    }};
    const Complex ra = r_a * std::polar(1.0, theta_a);
    const Complex rb = r_b * std::polar(1.0, theta_b);
    for (const auto& [ab, amp] : system) {
        for (int nxa = 0; nxa <= 1; ++nxa) {
            for (int nxb = 0; nxb <= 1; ++nxb) {
                const Complex w = amp * (nxa ? ra : q_a) * (nxb ? rb : q_b);
                state[{ab.first, nxa, ab.second, nxb}] += w;
            }
        }
    }
    return state;
}

struct Coincidences {
    double p_cc, p_cd, p_dc, p_dd, p_select;
    double correlation() const { return p_cc + p_dd - p_cd - p_dc; }
};

inline Coincidences run(Complex alpha, Complex beta, double theta_a, double theta_b,
                        double big_t = 0.5, Complex q_a = {}, Complex q_b = {}) {
    const double s = 1.0 / std::sqrt(2.0);
    if (q_a == Complex{}) q_a = s;
    if (q_b == Complex{}) q_b = s;
    const Complex r_a = std::sqrt(1.0 - std::norm(q_a));
    const Complex r_b = std::sqrt(1.0 - std::norm(q_b));
    SparseState state = prepare(alpha, beta, q_a, r_a, theta_a, q_b, r_b, theta_b);
    state = beamsplit(state, 0, 1, big_t);
    state = beamsplit(state, 2, 3, big_t);

    std::map<Occ, double> probs;
    for (const auto& [occ, amp] : state) probs[occ] += std::norm(amp);

    const auto p_of = [&](int c, int d, int cc, int dd) {
        const auto it = probs.find(Occ{c, d, cc, dd});
        return it == probs.end() ? 0.0 : it->second;
    };
    const double p_cc = p_of(1, 0, 1, 0);
    const double p_cd = p_of(1, 0, 0, 1);
    const double p_dc = p_of(0, 1, 1, 0);
    const double p_dd = p_of(0, 1, 0, 1);
    const double p_select = p_cc + p_cd + p_dc + p_dd;
    return {p_cc / p_select, p_cd / p_select, p_dc / p_select, p_dd / p_select, p_select};
}

}  // namespace oracle
