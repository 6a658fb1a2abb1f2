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

// Inequality form used by the solver:
//
//   minimize c'y + c0
//   s.t.     F_j y + e_j in K_j   (one block per constraint)
//            y_D in PSD           (variables declared as PSD blocks)
//            C y = d
//
// y holds the free slots first, then the PSD variable blocks.

#ifndef IRSSEC_CONIC_COMPILED_HPP
#define IRSSEC_CONIC_COMPILED_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "irssec/conic.hpp"

namespace irssec::conic::detail {

struct SlackBlock {
  BlockKind kind;
  int row;    // first row in F
  int dim;
  int order;  // psd only
  int first_slot;
};

struct DirectBlock {
  int offset;  // first coordinate in y
  int order;   // real order
};

struct Compiled {
  int n_y = 0;
  int n_free = 0;
  std::vector<DirectBlock> direct;
  std::vector<SlackBlock> slack;
  Eigen::MatrixXd F;
  Eigen::VectorXd e;
  Eigen::MatrixXd C;
  Eigen::VectorXd d;
  Eigen::VectorXd c;  // minimization sense
  double c0 = 0.0;
  bool maximize = false;
  std::vector<int> slot_to_y;  // -1 for constraint slots
  int slot_count = 0;
};

struct ProgramAccess {
  static Compiled compile(const ConeProgram& p);
};

struct RawResult {
  SolveStatus status = SolveStatus::numerical_failure;
  Eigen::VectorXd y;  // empty when no point is available
  std::string message;
  int newton_steps = 0;
};

RawResult solve_compiled(const Compiled& p, const SolverOptions& opt);

}  // namespace irssec::conic::detail

#endif  // IRSSEC_CONIC_COMPILED_HPP
