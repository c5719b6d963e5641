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

#include <cmath>
#include <random>
#include <sstream>

#include <doctest.h>

#include "oracles.hpp"
#include "uee/association.hpp"
#include "uee/baselines.hpp"
#include "uee/errors.hpp"

using namespace uee;

namespace {

UtilityWeights random_weights(std::mt19937_64& rng, int nu, int nb, double spread = 3.0)
{
    std::normal_distribution<double> g(0.0, spread);
    UtilityWeights w;
    w.m.resize(nu, nb);
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nb; ++j)
            w.m(i, j) = g(rng);
    return w;
}

UtilityWeights weights(std::initializer_list<std::initializer_list<double>> rows)
{
    UtilityWeights w;
    w.m.resize(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
    int i = 0;
    for (const auto& r : rows) {
        int j = 0;
        for (double v : r)
            w.m(i, j++) = v;
        ++i;
    }
    return w;
}

} // namespace

TEST_CASE("utility weights are the double log of the unit-load rate")
{
    const double e = std::exp(1.0);
    // h = p = 1 and noise 1/(e-1) put every SINR at e - 1
    const Scenario unit = make_scenario(Eigen::MatrixXd::Ones(3, 1), Eigen::VectorXd::Ones(1), 1.0,
                                        1.0 / (e - 1.0), 1.0);
    const UtilityWeights w0 = utility_weights(unit, PowerAllocation{Eigen::VectorXd::Ones(1)});
    CHECK(w0.m.cwiseAbs().maxCoeff() < 1e-12);

    const Scenario wide = make_scenario(Eigen::MatrixXd::Ones(3, 1), Eigen::VectorXd::Ones(1), e,
                                        1.0 / (e - 1.0), 1.0);
    const UtilityWeights w1 = utility_weights(wide, PowerAllocation{Eigen::VectorXd::Ones(1)});
    CHECK((w1.m.array() - 1.0).abs().maxCoeff() < 1e-12);

    std::mt19937_64 rng(5);
    const Eigen::MatrixXd h = oracle::random_gains(rng, 5, 3, -120.0, -80.0);
    const Eigen::VectorXd p = Eigen::Vector3d(10.0, 0.2, 0.1);
    const Scenario s = make_scenario(h, p, 1e7, 1e-13, 1.0);
    const UtilityWeights w = utility_weights(s, PowerAllocation{p});
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(w.m(i, j) == doctest::Approx(std::log(1e7 * std::log(1.0 + oracle::sinr(h, p, 1e-13, i, j))))
                                   .epsilon(1e-12));

    const Eigen::VectorXd zero_one = Eigen::Vector3d(10.0, 0.0, 0.1);
    try {
        utility_weights(s, PowerAllocation{zero_one});
        FAIL("expected a DomainError");
    } catch (const DomainError& err) {
        CHECK(std::string(err.what()).find("user 0 at BS 1") != std::string::npos);
    }
}

TEST_CASE("assign_users is a priced argmax with lowest-index ties")
{
    CHECK(assign_users(weights({{3, 1, 2}}), Eigen::Vector3d::Zero()).serving(0) == 0);
    CHECK(assign_users(weights({{3, 1}}), Eigen::Vector2d(5, 0)).serving(0) == 1);
    CHECK(assign_users(weights({{2, 2}}), Eigen::Vector2d::Zero()).serving(0) == 0);

    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        const UtilityWeights w = random_weights(rng, 6, 3);
        Eigen::VectorXd mu(3);
        for (int j = 0; j < 3; ++j)
            mu(j) = g(rng);
        const Association a = assign_users(w, mu);
        const Association shifted = assign_users(w, (mu.array() + 1.25).matrix());
        CHECK(a == shifted);
        int total = 0;
        for (int k : a.loads())
            total += k;
        CHECK(total == 6);
        CHECK((a.matrix().rowwise().sum().array() == 1).all());
    }
}

TEST_CASE("nu update")
{
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(3);
    CHECK(update_nu(ones, 7) == doctest::Approx(std::log(3.0) - std::log(7.0)).epsilon(1e-14));
    CHECK(update_nu(ones, 7, NuRule::log_mean_exp) == doctest::Approx(std::log(3.0) / 7.0).epsilon(1e-14));

    std::mt19937_64 rng(1);
    std::normal_distribution<double> g(0.0, 5.0);
    for (int rep = 0; rep < 100; ++rep) {
        Eigen::VectorXd mu(4);
        for (int j = 0; j < 4; ++j)
            mu(j) = g(rng);
        const double nu = update_nu(mu, 13);
        CHECK(std::abs((mu.array() - nu - 1.0).exp().sum() - 13.0) < 1e-12 * 13.0);
    }
}

TEST_CASE("price update")
{
    const Association both_on_first = Association::from_serving({0, 0}, 2);
    AssocDualState st;
    st.mu = Eigen::Vector2d::Zero();
    st.nu = update_nu(st.mu, 2);
    CHECK(st.nu == doctest::Approx(-1.0).epsilon(1e-14));

    // supply exp(0 + 1 - 1) = 1 per BS, demand (2, 0), step 0.5
    const AssocDualState next = update_mu(st, both_on_first, 0.5, 2);
    CHECK(next.mu(0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(next.mu(1) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(next.nu == doctest::Approx(std::log(std::exp(-0.5) + std::exp(-1.5)) - std::log(2.0)).epsilon(1e-14));
    CHECK(next.iteration == 1);

    // supply equals demand: fixed point
    const Association split = Association::from_serving({0, 1}, 2);
    const AssocDualState same = update_mu(st, split, 0.7, 2);
    CHECK(std::abs(same.mu(0)) < 1e-15);
    CHECK(std::abs(same.mu(1)) < 1e-15);
}

TEST_CASE("association objective")
{
    CHECK(association_objective(Association::from_serving({0}, 1), weights({{2.5}})) == 2.5);
    CHECK(association_objective(Association::from_serving({0, 0}, 1), weights({{0}, {0}})) ==
          doctest::Approx(-2.0 * std::log(2.0)).epsilon(1e-15));
    // empty BS contributes 0 ln 0 = 0
    CHECK(association_objective(Association::from_serving({0}, 2), weights({{1.5, 9}})) == 1.5);

    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> pick(0, 2);
    for (int rep = 0; rep < 50; ++rep) {
        const UtilityWeights w = random_weights(rng, 7, 3);
        std::vector<int> s(7);
        for (int& v : s)
            v = pick(rng);
        CHECK(association_objective(Association::from_serving(s, 3), w) ==
              doctest::Approx(oracle::assoc_objective(w.m, s)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(Association::from_serving({0, 3}, 2), DomainError);
}

TEST_CASE("solve_association small cases")
{
    SUBCASE("one BS takes everybody in one step")
    {
        const AssociationResult r = solve_association(weights({{1}, {2}, {0.5}}));
        CHECK(r.assoc.loads() == std::vector<int>{3});
        CHECK(r.converged);
        CHECK(r.trace.size() == 1);
    }
    SUBCASE("dominant diagonal")
    {
        const AssociationResult r = solve_association(weights({{1, 0}, {0, 1}}));
        CHECK(r.assoc.serving() == std::vector<int>{0, 1});
        CHECK(r.objective == doctest::Approx(2.0).epsilon(1e-15));
    }
    SUBCASE("identical users on identical BSs: the relaxed optimum is fractional")
    {
        const AssociationResult r = solve_association(weights({{0, 0}, {0, 0}, {0, 0}}));
        CHECK(r.objective == doctest::Approx(-2.0 * std::log(2.0)).epsilon(1e-12));
        const std::vector<int> loads = r.assoc.loads();
        CHECK(std::min(loads[0], loads[1]) == 1);
    }
    SUBCASE("five users, two BSs, against enumeration")
    {
        std::mt19937_64 rng(21);
        for (int rep = 0; rep < 10; ++rep) {
            const UtilityWeights w = random_weights(rng, 5, 2);
            CHECK(solve_association(w).objective ==
                  doctest::Approx(oracle::best_assoc_objective(w.m)).epsilon(1e-12));
        }
    }
}

TEST_CASE("solve_association properties on random instances")
{
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<int> users(1, 8), bss(1, 3);
    int converged_runs = 0;
    for (int rep = 0; rep < 120; ++rep) {
        const int nu = users(rng), nb = bss(rng);
        const UtilityWeights w = random_weights(rng, nu, nb, rep % 2 ? 0.5 : 4.0);
        const AssociationResult r = solve_association(w);

        CHECK(std::abs(r.objective - oracle::best_assoc_objective(w.m)) <= 1e-6);
        CHECK((r.assoc.matrix().rowwise().sum().array() == 1).all());
        for (const auto& row : r.trace) {
            int total = 0;
            for (int k : row.loads)
                total += k;
            CHECK(total == nu);
        }
        if (r.converged) {
            ++converged_runs;
            const double dual = association_dual_value(w, r.dual.mu, r.dual.nu);
            CHECK(dual >= r.objective - 1e-9);
            CHECK(dual - r.objective <= 1e-3 * nu + 1e-9);
        }

        AssociationOptions literal;
        literal.nu_rule = NuRule::log_mean_exp;
        const AssociationResult rl = solve_association(w, literal);
        CHECK(std::abs(rl.objective - oracle::best_assoc_objective(w.m)) <= 1e-6);

        AssociationOptions raw;
        raw.exact_polish = false;
        const AssociationResult rr = solve_association(w, raw);
        CHECK(rr.objective <= r.objective + 1e-12);
        CHECK(rr.objective == doctest::Approx(association_objective(rr.assoc, w)));
    }
    CHECK(converged_runs > 10);
}

TEST_CASE("improve_association reaches the brute-force optimum from any start")
{
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> pick(0, 2);
    for (int rep = 0; rep < 40; ++rep) {
        const UtilityWeights w = random_weights(rng, 7, 3, 1.0);
        std::vector<int> s(7);
        for (int& v : s)
            v = pick(rng);
        Association a = Association::from_serving(s, 3);
        improve_association(a, w);
        const Association best = brute_force_association(w);
        CHECK(association_objective(a, w) == doctest::Approx(association_objective(best, w)).epsilon(1e-12));
    }
}

TEST_CASE("association trace csv")
{
    const AssociationResult r = solve_association(weights({{1, 0}, {0, 1}, {0.3, 0.2}}));
    std::ostringstream os;
    write_association_trace_csv(os, r.trace);
    const std::string text = os.str();
    CHECK(text.rfind("iteration,price_0,price_1,load_0,load_1,objective,mismatch\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(r.trace.size()) + 1);
}
