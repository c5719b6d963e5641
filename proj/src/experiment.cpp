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

#include "uee/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <thread>

#include "uee/baselines.hpp"
#include "uee/csv.hpp"
#include "uee/errors.hpp"

namespace uee {

namespace fs = std::filesystem;

std::uint64_t drop_seed(std::uint64_t master_seed, int drop)
{
    std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(drop) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

struct Fnv1a
{
    std::uint64_t h = 0xcbf29ce484222325ULL;

    void add(double v)
    {
        unsigned char bytes[sizeof v];
        std::memcpy(bytes, &v, sizeof v);
        for (unsigned char b : bytes) {
            h ^= b;
            h *= 0x100000001b3ULL;
        }
    }
};

int algorithm_rank(const std::string& name)
{
    const auto it = std::find(known_algorithms.begin(), known_algorithms.end(), name);
    return static_cast<int>(it - known_algorithms.begin());
}

IuapcOptions solver_options(const ExperimentConfig& config)
{
    IuapcOptions o;
    o.association = association_options(config.solver);
    o.power = power_options(config.solver);
    o.varsigma = config.solver.varsigma;
    o.max_outer = config.solver.max_outer;
    o.max_inner = config.solver.max_inner;
    o.inner_tol = config.solver.inner_tol;
    return o;
}

void fill_metrics(DropResult& r, const Scenario& s, const Association& a, const PowerAllocation& p)
{
    r.serving = a.serving();
    r.uee = utility_energy_efficiency(s, a, p);
    r.sum_utility = sum_utility(s, a, p);
    r.total_power_w = p.total();
    int macro_users = 0;
    r.per_user_rates.resize(s.num_users());
    for (int i = 0; i < s.num_users(); ++i) {
        const int j = a.serving(i);
        if (s.bss[j].kind == BsKind::macro)
            ++macro_users;
        r.per_user_rates[i] = rate(a.load(j), sinr(s, i, j, p), s.bandwidth_hz);
    }
    r.mbs_load_fraction = static_cast<double>(macro_users) / s.num_users();
}

std::ofstream open_out(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void finish(std::ofstream& out, const fs::path& path)
{
    out.flush();
    if (!out)
        throw IoError("failed writing " + path.string());
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw IoError("cannot create output directory " + dir.string());
}

} // namespace

std::string scenario_checksum(const Scenario& s)
{
    Fnv1a f;
    for (int i = 0; i < s.channel.gains.rows(); ++i)
        for (int j = 0; j < s.channel.gains.cols(); ++j)
            f.add(s.channel.gains(i, j));
    for (const auto& bs : s.bss)
        f.add(bs.max_power_w);
    f.add(s.noise_power_w);
    f.add(s.circuit_power_w);
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(f.h));
    return buf;
}

DropResult run_algorithm(const Scenario& scenario, const std::string& algorithm,
                         const ExperimentConfig& config, int drop_id, Solution* solution)
{
    DropResult r;
    r.drop_id = drop_id;
    r.algorithm = algorithm;
    r.scenario_checksum = scenario_checksum(scenario);
    r.varsigma_threshold = config.solver.varsigma > 0.0 ? config.solver.varsigma
                                                        : 1e-3 * scenario.num_users();

    const PowerAllocation pmax = max_power(scenario);
    if (algorithm == "maxsinr_maxpower") {
        const Association a =
            max_sinr_association(scenario, pmax, channel_basis_from_name(config.maxsinr_basis));
        fill_metrics(r, scenario, a, pmax);
        if (solution) {
            *solution = Solution{};
            solution->assoc = a;
            solution->power = pmax;
            solution->eta_star = r.uee;
            solution->converged = true;
        }
        return r;
    }

    IuapcOptions opts = solver_options(config);
    opts.keep_traces = solution != nullptr;
    if (algorithm == "maxsinr_pc")
        opts.fixed_association =
            max_sinr_association(scenario, pmax, channel_basis_from_name(config.maxsinr_basis));
    else if (algorithm != "proposed")
        throw ConfigError("unknown algorithm '" + algorithm + "'");

    Solution sol = iuapc_solve(scenario, opts);
    fill_metrics(r, scenario, sol.assoc, sol.power);
    r.outer_iters = sol.outer_iterations();
    r.inner_iters_total = sol.inner_iterations_total;
    std::vector<double> inner;
    for (const auto& row : sol.outer_trace)
        inner.push_back(row.inner_iterations);
    r.median_inner_iters = inner.empty() ? 0.0 : median(inner);
    r.final_varsigma = sol.final_varsigma();
    for (std::size_t t = 1; t < sol.eta_history.size(); ++t)
        if (sol.eta_history[t] < sol.eta_history[t - 1])
            r.eta_nondecreasing = false;
    r.converged = sol.converged;
    r.solver_warnings = sol.association_warnings + sol.power_warnings;
    if (solution)
        *solution = std::move(sol);
    return r;
}

namespace {

std::vector<DropResult> run_drops_impl(const ExperimentConfig& config, const fs::path* trace_dir)
{
    validate(config);
    const NetworkConfig net = network_config(config);
    std::vector<std::string> algorithms = config.algorithms;
    std::sort(algorithms.begin(), algorithms.end(),
              [](const auto& a, const auto& b) { return algorithm_rank(a) < algorithm_rank(b); });

    std::vector<std::vector<DropResult>> per_drop(config.n_drops);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (int d = next++; d < config.n_drops; d = next++) {
            try {
                const Scenario s = generate_scenario(net, drop_seed(config.seed, d));
                for (const auto& alg : algorithms) {
                    if (trace_dir) {
                        Solution sol;
                        per_drop[d].push_back(run_algorithm(s, alg, config, d, &sol));
                        const std::string stem = "drop" + std::to_string(d) + "_" + alg;
                        auto path = *trace_dir / (stem + "_outer.csv");
                        auto out = open_out(path);
                        write_outer_trace_csv(out, sol.outer_trace);
                        finish(out, path);
                        path = *trace_dir / (stem + "_association.csv");
                        out = open_out(path);
                        write_association_trace_csv(out, sol.last_association_trace);
                        finish(out, path);
                        path = *trace_dir / (stem + "_power.csv");
                        out = open_out(path);
                        write_power_trace_csv(out, sol.last_power_trace);
                        finish(out, path);
                    } else {
                        per_drop[d].push_back(run_algorithm(s, alg, config, d));
                    }
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = config.n_drops;
            }
        }
    };

    const int nthreads = std::max(1, std::min(config.threads, config.n_drops));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    std::vector<DropResult> all;
    for (auto& rows : per_drop)
        for (auto& r : rows)
            all.push_back(std::move(r));
    return all;
}

} // namespace

std::vector<DropResult> run_drops(const ExperimentConfig& config)
{
    return run_drops_impl(config, nullptr);
}

std::vector<DropResult> run_experiment(const ExperimentConfig& config, bool write_traces)
{
    validate(config);
    const fs::path dir(config.output_dir);
    ensure_dir(dir);
    std::vector<DropResult> results;
    if (write_traces) {
        const fs::path traces = dir / "traces";
        ensure_dir(traces);
        results = run_drops_impl(config, &traces);
    } else {
        results = run_drops_impl(config, nullptr);
    }
    write_tables(config.output_dir, results, config);
    return results;
}

double quantile_sorted(const std::vector<double>& sorted, double level)
{
    if (sorted.empty())
        throw DomainError("quantile of an empty sample");
    const double pos = std::clamp(level, 0.0, 1.0) * (sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
}

double median(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    return quantile_sorted(values, 0.5);
}

std::vector<AlgorithmSummary> aggregate(const std::vector<DropResult>& results)
{
    if (results.empty())
        throw ConfigError("aggregate: no result rows");
    std::vector<AlgorithmSummary> out;
    for (const auto& name : known_algorithms) {
        std::vector<const DropResult*> rows;
        for (const auto& r : results)
            if (r.algorithm == name)
                rows.push_back(&r);
        if (rows.empty())
            continue;
        AlgorithmSummary s;
        s.algorithm = name;
        s.n = static_cast<int>(rows.size());
        std::vector<double> outer, inner, rates;
        for (const auto* r : rows) {
            s.mean_uee += r->uee;
            s.mean_mbs_fraction += r->mbs_load_fraction;
            outer.push_back(r->outer_iters);
            inner.push_back(r->median_inner_iters);
            rates.insert(rates.end(), r->per_user_rates.begin(), r->per_user_rates.end());
        }
        s.mean_uee /= s.n;
        s.mean_mbs_fraction /= s.n;
        double var = 0.0;
        for (const auto* r : rows)
            var += (r->uee - s.mean_uee) * (r->uee - s.mean_uee);
        s.std_uee = std::sqrt(var / s.n);
        s.median_outer_iters = median(outer);
        s.median_inner_iters = median(inner);
        std::sort(rates.begin(), rates.end());
        for (int k = 0; k < 200; ++k)
            s.rate_quantiles.push_back(quantile_sorted(rates, k / 199.0));
        out.push_back(std::move(s));
    }
    return out;
}

void write_tables(const std::string& dir_name, const std::vector<DropResult>& results,
                  const ExperimentConfig& config)
{
    const fs::path dir(dir_name);
    ensure_dir(dir);
    const bool bits = config.report_rates_in == "bits_per_s";
    const double rate_scale = bits ? 1.0 / std::numbers::ln2 : 1.0;
    const std::string rate_col = bits ? "rate_bits_per_s" : "rate_nats_per_s";

    {
        const auto path = dir / "results.csv";
        auto out = open_out(path);
        csv::write_row(out, {"drop_id", "algorithm", "scenario_checksum", "uee", "sum_utility",
                             "total_power_w", "mbs_load_fraction", "outer_iters", "inner_iters_total",
                             "median_inner_iters", "final_varsigma", "eta_nondecreasing", "converged",
                             "solver_warnings"});
        for (const auto& r : results)
            csv::write_row(out, {std::to_string(r.drop_id), r.algorithm, r.scenario_checksum,
                                 csv::num(r.uee), csv::num(r.sum_utility), csv::num(r.total_power_w),
                                 csv::num(r.mbs_load_fraction), std::to_string(r.outer_iters),
                                 std::to_string(r.inner_iters_total), csv::num(r.median_inner_iters),
                                 csv::num(r.final_varsigma), r.eta_nondecreasing ? "1" : "0",
                                 r.converged ? "1" : "0", std::to_string(r.solver_warnings)});
        finish(out, path);
    }
    {
        const auto path = dir / "rates.csv";
        auto out = open_out(path);
        csv::write_row(out, {"drop_id", "algorithm", "user_id", "serving_bs", rate_col});
        for (const auto& r : results)
            for (std::size_t i = 0; i < r.per_user_rates.size(); ++i)
                csv::write_row(out, {std::to_string(r.drop_id), r.algorithm, std::to_string(i),
                                     std::to_string(r.serving[i]),
                                     csv::num(r.per_user_rates[i] * rate_scale)});
        finish(out, path);
    }

    const auto summary = aggregate(results);
    {
        const auto path = dir / "uee_summary.csv";
        auto out = open_out(path);
        csv::write_row(out, {"algorithm", "mean_uee", "std_uee", "n"});
        for (const auto& s : summary)
            csv::write_row(out, {s.algorithm, csv::num(s.mean_uee), csv::num(s.std_uee), std::to_string(s.n)});
        finish(out, path);
    }
    {
        const auto path = dir / "load_summary.csv";
        auto out = open_out(path);
        csv::write_row(out, {"algorithm", "mean_mbs_fraction", "mean_sbs_fraction"});
        for (const auto& s : summary)
            csv::write_row(out, {s.algorithm, csv::num(s.mean_mbs_fraction),
                                 csv::num(1.0 - s.mean_mbs_fraction)});
        finish(out, path);
    }
    {
        const auto path = dir / "rate_cdf.csv";
        auto out = open_out(path);
        csv::write_row(out, {"algorithm", rate_col, "empirical_cdf"});
        for (const auto& s : summary)
            for (std::size_t k = 0; k < s.rate_quantiles.size(); ++k)
                csv::write_row(out, {s.algorithm, csv::num(s.rate_quantiles[k] * rate_scale),
                                     csv::num(k / 199.0)});
        finish(out, path);
    }
    {
        const auto path = dir / "convergence_summary.csv";
        auto out = open_out(path);
        csv::write_row(out, {"algorithm", "median_outer_iters", "median_inner_iters"});
        for (const auto& s : summary)
            csv::write_row(out, {s.algorithm, csv::num(s.median_outer_iters), csv::num(s.median_inner_iters)});
        finish(out, path);
    }
}

std::vector<OracleRow> run_oracle_instances(const ExperimentConfig& config)
{
    validate(config);
    const NetworkConfig net = network_config(config);
    const double work = std::pow(static_cast<double>(net.n_macro + net.n_small), net.n_users) *
                        std::pow(static_cast<double>(config.oracle_levels), net.n_macro + net.n_small);
    if (work > 1e8)
        throw SizeError("oracle-check: network too large for exhaustive search (" +
                        csv::num(work) + " evaluations, limit 1e8)");

    IuapcOptions opts = solver_options(config);
    std::vector<OracleRow> rows;
    for (int k = 0; k < config.oracle_instances; ++k) {
        const Scenario s = generate_scenario(net, drop_seed(config.seed, k));
        OracleRow row;
        row.instance = k;
        row.scenario_checksum = scenario_checksum(s);
        row.solver_eta = iuapc_solve(s, opts).eta_star;
        row.oracle_eta = brute_force_uee(s, make_power_grid(s, config.oracle_levels)).eta;
        row.ratio = row.solver_eta / row.oracle_eta;
        rows.push_back(row);
    }
    return rows;
}

std::vector<OracleRow> run_oracle_check(const ExperimentConfig& config, const std::string& dir_name)
{
    const fs::path dir(dir_name);
    ensure_dir(dir);
    const auto rows = run_oracle_instances(config);
    {
        const auto path = dir / "oracle_report.csv";
        auto out = open_out(path);
        csv::write_row(out, {"instance", "scenario_checksum", "iuapc_eta", "oracle_eta", "ratio"});
        for (const auto& r : rows)
            csv::write_row(out, {std::to_string(r.instance), r.scenario_checksum, csv::num(r.solver_eta),
                                 csv::num(r.oracle_eta), csv::num(r.ratio)});
        finish(out, path);
    }
    {
        std::vector<double> ratios;
        for (const auto& r : rows)
            ratios.push_back(r.ratio);
        std::sort(ratios.begin(), ratios.end());
        double mean = 0.0;
        for (double v : ratios)
            mean += v;
        mean /= ratios.size();
        const auto path = dir / "oracle_summary.csv";
        auto out = open_out(path);
        csv::write_row(out, {"n", "min_ratio", "median_ratio", "mean_ratio", "max_ratio"});
        csv::write_row(out, {std::to_string(ratios.size()), csv::num(ratios.front()),
                             csv::num(quantile_sorted(ratios, 0.5)), csv::num(mean), csv::num(ratios.back())});
        finish(out, path);
    }
    return rows;
}

} // namespace uee
