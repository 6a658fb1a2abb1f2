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
 * \file irssec/trace.hpp
 *
 * \brief Per-iteration records and results shared by all solvers.
 */

#ifndef IRSSEC_TRACE_HPP
#define IRSSEC_TRACE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "irssec/model.hpp"

namespace irssec {

struct TraceRow {
  int iter = 0;
  double objective_w = 0.0;  // relaxed objective (sdr) or exact power (socp)
  double time_a_s = 0.0;     // beamformer subproblem
  double time_b_s = 0.0;     // phase subproblem
  std::string status;
  bool recovery_violation = false;
};

struct SolveTrace {
  std::string method;
  std::vector<TraceRow> rows;
  bool converged = false;
  int restarts = 0;  // initialization re-draws used

  int iterations() const { return rows.empty() ? 0 : rows.back().iter; }
};

struct RunResult {
  BeamformingSolution solution;
  SolveTrace trace;
  double power_w = 0.0;
  /// Final relaxed objective (sdr only; equals power_w otherwise).
  double relaxed_objective_w = 0.0;
  double solve_time_s = 0.0;
};

class SolveError : public std::runtime_error {
 public:
  enum class Kind { infeasible, numerical };
  SolveError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace irssec

#endif  // IRSSEC_TRACE_HPP
