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

/**
 * \file irssec/harness.hpp
 *
 * \brief Baselines, presets and seeded Monte-Carlo sweeps.
 *
 * Every (sweep value, trial) pair draws its scenario from the trial seed
 * alone, so all methods and all sweep values of one trial see the same
 * positions and fading (growing N or K only appends new draws).
 */

#ifndef IRSSEC_HARNESS_HPP
#define IRSSEC_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "irssec/scenario.hpp"
#include "irssec/sdr.hpp"
#include "irssec/socp.hpp"

namespace irssec {

enum class Method { sdr, socp, no_irs, random_phase };

std::string to_string(Method m);
Method parse_method(const std::string& s);  // throws std::invalid_argument

struct MethodOptions {
  SdrOptions sdr{};
  SocpOptions socp{};
};

/// Same power minimization with the IRS removed, solved by the beamformer SCA.
/// The returned solution carries no phases.
RunResult run_baseline_no_irs(const Scenario& scenario, const SocpOptions& options = {});

/// Phases drawn uniformly from options.seed, then the beamformer SCA.
RunResult run_baseline_random_phase(const Scenario& scenario, const SocpOptions& options = {});

/// Dispatch with the method's seed set to `seed`.
RunResult run_method(Method m, const Scenario& scenario, std::uint64_t seed, const MethodOptions& options = {});

struct Preset {
  std::string name;
  SystemConfig config;
  Geometry geometry;
  int trials = 50;
};

/// "desk", "paper" or "fig8-k". Throws std::invalid_argument otherwise.
Preset preset(const std::string& name);
std::vector<std::string> preset_names();

struct ExperimentSpec {
  SystemConfig config;
  Geometry geometry;
  std::string sweep_var = "gamma_s";  // gamma_s | N | d_v | d_AI | K
  std::vector<double> values;
  int trials = 1;
  std::vector<Method> methods;
  std::uint64_t seed = 1;
  int workers = 1;  // 0: one per hardware thread
  MethodOptions options{};

  void validate() const;
};

/// Config and geometry for one sweep value. K keeps the size of the first group.
void apply_sweep_value(const std::string& var, double value, SystemConfig& config, Geometry& geometry);

std::uint64_t trial_seed(std::uint64_t base, int trial);

struct ResultRow {
  std::string method;
  std::string sweep_var;
  double sweep_value = 0.0;
  int trial = 0;
  std::uint64_t trial_seed = 0;
  double power_w = 0.0;
  double power_dbm = 0.0;
  int iterations = 0;
  double solve_time_s = 0.0;
  bool feasible = false;
  double min_secrecy_margin = 0.0;
  double relaxed_objective_w = 0.0;  // not part of the CSV contract
  std::string error;                 // not part of the CSV contract
};

struct AggregateRow {
  std::string method;
  std::string sweep_var;
  double sweep_value = 0.0;
  int trials_ok = 0;
  int trials_infeasible = 0;
  double mean_power_w = 0.0;
  double mean_power_dbm = 0.0;  // dBm of the mean power
};

struct SweepResult {
  std::vector<ResultRow> rows;  // ordered by (value, trial, method)
  std::vector<AggregateRow> aggregate;
};

/// Infeasible or failed rows are kept and counted, never averaged.
std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows);

/// One solve. Failures become rows with feasible = false.
ResultRow run_trial(const ExperimentSpec& spec, double value, int trial, Method m);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

SweepResult run_sweep(const ExperimentSpec& spec, const ProgressFn& progress = {});

}  // namespace irssec

#endif  // IRSSEC_HARNESS_HPP
