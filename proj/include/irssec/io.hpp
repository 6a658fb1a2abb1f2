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
 * \file irssec/io.hpp
 *
 * \brief JSON scenario / solution / spec files and the CSV outputs.
 *
 * Complex numbers are [re, im] pairs. Noise power is stored in dBm.
 * CSV numbers use the shortest round-trip representation so that parsing a
 * file back gives bit-identical doubles.
 */

#ifndef IRSSEC_IO_HPP
#define IRSSEC_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "irssec/harness.hpp"
#include "irssec/model.hpp"
#include "irssec/scenario.hpp"
#include "irssec/trace.hpp"

namespace irssec {

/// Malformed input. The message names the offending key or line.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

std::string scenario_to_json(const Scenario& s, bool include_channels = true);
/// Channels are regenerated from the seed when the file carries none.
Scenario scenario_from_json(const std::string& text);

std::string solution_to_json(const BeamformingSolution& sol, const RateReport& report);
BeamformingSolution solution_from_json(const std::string& text);

/// Keys: scenario (object with config/geometry, or a preset name), sweep
/// {var, values}, trials, methods, seed, workers; optional options block.
ExperimentSpec spec_from_json(const std::string& text);

inline constexpr const char* kResultsHeader =
    "method,sweep_var,sweep_value,trial_seed,power_w,power_dbm,iterations,solve_time_s,feasible,min_secrecy_margin";
inline constexpr const char* kAggregateHeader =
    "method,sweep_var,sweep_value,trials_ok,trials_infeasible,mean_power_w,mean_power_dbm";
inline constexpr const char* kSdrTraceHeader = "iter,relaxed_objective_w,p2_1_time_s,p2_2_time_s,status";
inline constexpr const char* kSocpTraceHeader = "iter,power_w,p3_1_time_s,p3_2_time_s,recovery_violation_flag";

void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows);
/// Only the CSV columns are filled in.
std::vector<ResultRow> read_results_csv(std::istream& is);

void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows);
std::vector<AggregateRow> read_aggregate_csv(std::istream& is);

/// SDR traces use the relaxed-objective layout, every other method the SCA one.
void write_trace_csv(std::ostream& os, const SolveTrace& trace);

std::string format_double(double x);
double parse_double(const std::string& s);

}  // namespace irssec

#endif  // IRSSEC_IO_HPP
