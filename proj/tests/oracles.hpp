/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The hetnet-uee Authors. All rights reserved.
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Straightforward re-implementations used as references. They share no code
// with the library beyond plain data types.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline double sinr(const Eigen::MatrixXd& h, const Eigen::VectorXd& p, double noise, int i, int j)
{
    double interference = 0.0;
    for (int q = 0; q < h.cols(); ++q)
        if (q != j)
            interference += h(i, q) * p(q);
    return h(i, j) * p(j) / (interference + noise);
}

/// sum_i ln((w / k_j) ln(1 + sinr_i)) for a serving vector.
inline double sum_log_rate(const Eigen::MatrixXd& h, const Eigen::VectorXd& p, double noise,
                           double w, const std::vector<int>& serving)
{
    std::vector<int> load(h.cols(), 0);
    for (int j : serving)
        ++load[j];
    double total = 0.0;
    for (std::size_t i = 0; i < serving.size(); ++i) {
        const int j = serving[i];
        total += std::log(w / load[j] * std::log(1.0 + sinr(h, p, noise, static_cast<int>(i), j)));
    }
    return total;
}

/// Objective of the association problem written term by term.
inline double assoc_objective(const Eigen::MatrixXd& m, const std::vector<int>& serving)
{
    std::vector<int> load(m.cols(), 0);
    double total = 0.0;
    for (std::size_t i = 0; i < serving.size(); ++i) {
        total += m(static_cast<int>(i), serving[i]);
        ++load[serving[i]];
    }
    for (int k : load)
        if (k > 0)
            total -= k * std::log(static_cast<double>(k));
    return total;
}

/// Best association objective by enumerating every serving vector.
inline double best_assoc_objective(const Eigen::MatrixXd& m)
{
    const int nu = static_cast<int>(m.rows());
    const int nb = static_cast<int>(m.cols());
    std::vector<int> s(nu, 0);
    double best = -INFINITY;
    while (true) {
        best = std::max(best, assoc_objective(m, s));
        int i = 0;
        while (i < nu && ++s[i] == nb)
            s[i++] = 0;
        if (i == nu)
            break;
    }
    return best;
}

/// Golden-section maximization of a unimodal function on [lo, hi].
inline double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters = 200)
{
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int k = 0; k < iters; ++k) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

inline Eigen::MatrixXd random_gains(std::mt19937_64& rng, int nu, int nb, double lo_db, double hi_db)
{
    std::uniform_real_distribution<double> db(lo_db, hi_db);
    Eigen::MatrixXd h(nu, nb);
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nb; ++j)
            h(i, j) = std::pow(10.0, db(rng) / 10.0);
    return h;
}

} // namespace oracle
