/*
 * Copyright 2026 The irssec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "irssec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace irssec {

namespace {

constexpr std::uint64_t kRandomPhaseStream = 0x7a1;
constexpr double kFeasTol = 1e-4;

double dbm_or_inf(double w) {
  return w > 0.0 ? watts_to_dbm(w) : -std::numeric_limits<double>::infinity();
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::sdr: return "sdr";
    case Method::socp: return "socp";
    case Method::no_irs: return "no-irs";
    case Method::random_phase: return "random-phase";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  if (s == "sdr") return Method::sdr;
  if (s == "socp") return Method::socp;
  if (s == "no-irs") return Method::no_irs;
  if (s == "random-phase") return Method::random_phase;
  throw std::invalid_argument("unknown method '" + s + "' (sdr, socp, no-irs, random-phase)");
}

RunResult run_baseline_no_irs(const Scenario& scenario, const SocpOptions& options) {
  const auto lifted = lift_channels(scenario.channels, scenario.config.beta);
  auto r = run_fixed_phase_sca(direct_only(lifted), scenario.config, Eigen::VectorXd(), options);
  r.trace.method = "no-irs";
  return r;
}

RunResult run_baseline_random_phase(const Scenario& scenario, const SocpOptions& options) {
  const auto lifted = lift_channels(scenario.channels, scenario.config.beta);
  auto rng = stream(options.seed, kRandomPhaseStream, 0);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
  Eigen::VectorXd theta(lifted.N);
  for (int n = 0; n < lifted.N; ++n) theta(n) = ph(rng);
  auto r = lifted.N == 0 ? run_fixed_phase_sca(direct_only(lifted), scenario.config, Eigen::VectorXd(), options)
                         : run_fixed_phase_sca(lifted, scenario.config, theta, options);
  r.trace.method = "random-phase";
  return r;
}

RunResult run_method(Method m, const Scenario& scenario, std::uint64_t seed, const MethodOptions& options) {
  SdrOptions so = options.sdr;
  SocpOptions co = options.socp;
  so.seed = seed;
  co.seed = seed;
  switch (m) {
    case Method::sdr: return run_sdr(scenario, so);
    case Method::socp: return run_socp(scenario, co);
    case Method::no_irs: return run_baseline_no_irs(scenario, co);
    case Method::random_phase: return run_baseline_random_phase(scenario, co);
  }
  throw std::invalid_argument("run_method: bad method");
}

Preset preset(const std::string& name) {
  Preset p;
  p.name = name;
  p.config.sigma2 = dbm_to_watts(-90.0);
  if (name == "desk") {
    p.config.M = 4;
    p.config.N = 16;
    p.config.K = 2;
    p.config.group_sizes = {1, 1};
    p.config.L = 1;
    p.config.gamma_s = 1.0;
    p.trials = 50;
  } else if (name == "paper") {
    p.config.M = 8;
    p.config.N = 50;
    p.config.K = 2;
    p.config.group_sizes = {2, 2};
    p.config.L = 2;
    p.config.gamma_s = 1.0;
    p.trials = 50;
  } else if (name == "fig8-k") {
    p.config.M = 8;
    p.config.N = 50;
    p.config.K = 2;
    p.config.group_sizes = {2, 2};
    p.config.L = 2;
    p.config.gamma_s = 0.5;
    p.geometry.d_v = 2.0;
    p.trials = 50;
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return p;
}

std::vector<std::string> preset_names() { return {"desk", "paper", "fig8-k"}; }

void ExperimentSpec::validate() const {
  config.validate();
  geometry.validate();
  if (trials < 1) throw std::invalid_argument("spec: trials must be >= 1");
  if (methods.empty()) throw std::invalid_argument("spec: no methods");
  if (values.empty()) throw std::invalid_argument("spec: no sweep values");
  if (workers < 0) throw std::invalid_argument("spec: workers must be >= 0");
  for (double v : values) {
    SystemConfig c = config;
    Geometry g = geometry;
    apply_sweep_value(sweep_var, v, c, g);
    c.validate();
    g.validate();
  }
}

void apply_sweep_value(const std::string& var, double value, SystemConfig& config, Geometry& geometry) {
  auto as_int = [&](int lo) {
    if (value != std::floor(value) || value < lo)
      throw std::invalid_argument("sweep value " + std::to_string(value) + " is not a valid integer for " + var);
    return static_cast<int>(value);
  };
  if (var == "gamma_s") {
    config.gamma_s = value;
  } else if (var == "N") {
    config.N = as_int(0);
  } else if (var == "d_v") {
    geometry.d_v = value;
  } else if (var == "d_AI") {
    geometry.d_AI = value;
  } else if (var == "K") {
    const int size = config.group_sizes.empty() ? 1 : config.group_sizes.front();
    config.K = as_int(1);
    config.group_sizes.assign(config.K, size);
  } else {
    throw std::invalid_argument("unknown sweep variable '" + var + "' (gamma_s, N, d_v, d_AI, K)");
  }
}

std::uint64_t trial_seed(std::uint64_t base, int trial) {
  return splitmix64(base + static_cast<std::uint64_t>(trial));
}

ResultRow run_trial(const ExperimentSpec& spec, double value, int trial, Method m) {
  ResultRow row;
  row.method = to_string(m);
  row.sweep_var = spec.sweep_var;
  row.sweep_value = value;
  row.trial = trial;
  row.trial_seed = trial_seed(spec.seed, trial);
  row.power_w = std::numeric_limits<double>::quiet_NaN();
  row.power_dbm = row.power_w;
  row.min_secrecy_margin = row.power_w;
  row.relaxed_objective_w = row.power_w;
  SystemConfig c = spec.config;
  Geometry g = spec.geometry;
  apply_sweep_value(spec.sweep_var, value, c, g);
  try {
    const Scenario s = make_scenario(c, g, row.trial_seed);
    const RunResult r = run_method(m, s, row.trial_seed, spec.options);
    const auto rep = check_feasible(r.solution, lift_channels(s.channels, c.beta), c, kFeasTol);
    row.power_w = r.power_w;
    row.power_dbm = dbm_or_inf(r.power_w);
    row.iterations = r.trace.iterations();
    row.solve_time_s = r.solve_time_s;
    row.feasible = rep.feasible;
    row.min_secrecy_margin = rep.min_secrecy_margin;
    row.relaxed_objective_w = r.relaxed_objective_w;
    if (!rep.feasible) row.error = "returned point fails the feasibility check";
  } catch (const std::exception& e) {
    row.feasible = false;
    row.error = e.what();
  }
  return row;
}

std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows) {
  // Keyed by (value, method) in first-seen method order.
  std::vector<std::string> method_order;
  std::map<std::pair<double, std::string>, AggregateRow> acc;
  std::map<std::pair<double, std::string>, double> sum;
  for (const auto& r : rows) {
    if (std::find(method_order.begin(), method_order.end(), r.method) == method_order.end())
      method_order.push_back(r.method);
    auto key = std::make_pair(r.sweep_value, r.method);
    auto& a = acc[key];
    a.method = r.method;
    a.sweep_var = r.sweep_var;
    a.sweep_value = r.sweep_value;
    if (r.feasible && std::isfinite(r.power_w)) {
      ++a.trials_ok;
      sum[key] += r.power_w;
    } else {
      ++a.trials_infeasible;
    }
  }
  std::vector<AggregateRow> out;
  std::vector<double> values;
  for (const auto& [key, a] : acc)
    if (values.empty() || values.back() != key.first) values.push_back(key.first);
  for (double v : values)
    for (const auto& m : method_order) {
      auto it = acc.find({v, m});
      if (it == acc.end()) continue;
      AggregateRow a = it->second;
      if (a.trials_ok > 0) {
        a.mean_power_w = sum[{v, m}] / a.trials_ok;
        a.mean_power_dbm = dbm_or_inf(a.mean_power_w);
      } else {
        a.mean_power_w = a.mean_power_dbm = std::numeric_limits<double>::quiet_NaN();
      }
      out.push_back(a);
    }
  return out;
}

SweepResult run_sweep(const ExperimentSpec& spec, const ProgressFn& progress) {
  spec.validate();
  struct Item {
    double value;
    int trial;
    Method method;
  };
  std::vector<Item> items;
  for (double v : spec.values)
    for (int t = 0; t < spec.trials; ++t)
      for (Method m : spec.methods) items.push_back({v, t, m});

  SweepResult res;
  res.rows.resize(items.size());
  std::atomic<std::size_t> next{0}, done{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      res.rows[i] = run_trial(spec, items[i].value, items[i].trial, items[i].method);
      const std::size_t d = ++done;
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        progress(d, items.size());
      }
    }
  };
  unsigned n = spec.workers > 0 ? static_cast<unsigned>(spec.workers) : std::thread::hardware_concurrency();
  n = std::max(1u, std::min<unsigned>(n, static_cast<unsigned>(items.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  res.aggregate = aggregate(res.rows);
  return res;
}

}  // namespace irssec
