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
 * \file irssec/sdr.hpp
 *
 * \brief Semidefinite relaxation with alternating MM steps and a single
 * Gaussian randomization at the end.
 *
 * The lifted variables are W_k = w_k w_k^H, Q = q q^H and U = u u^H. For a
 * fixed (k, j, l) the secrecy constraint reads f1 + f4 - f2 - f3 >= gamma_s
 * where each f_i is log2 of an affine function. f1 and f4 are kept exact
 * through exponential cones; f2 and f3 are replaced by tangent planes,
 * which are upper bounds because log is concave.
 *
 * The public subproblem functions accept physical units and rescale
 * internally; run_sdr does the same once for the whole run.
 */

#ifndef IRSSEC_SDR_HPP
#define IRSSEC_SDR_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "irssec/conic.hpp"
#include "irssec/model.hpp"
#include "irssec/trace.hpp"

namespace irssec {

struct SdrIterate {
  std::vector<Eigen::MatrixXcd> W;  // [k], M x M
  Eigen::MatrixXcd Q;               // M x M
  Eigen::MatrixXcd U;               // (N+1) x (N+1), unit diagonal

  static SdrIterate rank_one(const BeamformingSolution& sol);
  double power() const;  // sum tr W_k + tr Q
};

/// How the "find U" step picks its point: the analytic centre of the
/// feasible set, or the point maximizing the smallest constraint slack.
enum class UStepMode { analytic_center, max_margin };

struct SdrOptions {
  double epsilon = 1e-3;
  int max_iters = 50;
  int randomization_count = 100;
  double bisection_tol = 1e-4;
  std::uint64_t seed = 1;
  int init_attempts = 10;
  UStepMode u_step = UStepMode::analytic_center;
  conic::SolverOptions solver{};
};

/// An affine function of the lifted variables:
///   c0 + sum_{g : on_w[g]} Re tr(grad W_g) + on_q Re tr(grad Q) + on_u Re tr(grad U).
struct MmBound {
  double c0 = 0.0;
  Eigen::MatrixXcd grad;
  std::vector<bool> on_w;
  bool on_q = false;
  bool on_u = false;

  double operator()(const SdrIterate& x) const;
};

/// Exact f_i, i in 1..4, in bits.
double eval_f(int i, const SdrIterate& x, const LiftedChannels& lifted, double sigma2, int k, int j, int l);

/// Tangent upper bounds of (f2, f3) in (W, Q) with U fixed at expansion.U.
std::pair<MmBound, MmBound> mm_bound_wq(const SdrIterate& expansion, const LiftedChannels& lifted,
                                        double sigma2, int k, int j, int l);

/// Tangent upper bounds of (f2, f3) in U with (W, Q) fixed at expansion.
std::pair<MmBound, MmBound> mm_bound_u(const SdrIterate& expansion, const LiftedChannels& lifted,
                                       double sigma2, int k, int j, int l);

struct P21Result {
  conic::SolveStatus status = conic::SolveStatus::numerical_failure;
  SdrIterate x;  // W, Q updated; U copied from the input
  double objective = 0.0;
  double time_s = 0.0;
  bool ok() const { return status == conic::SolveStatus::optimal; }
};

struct P22Result {
  conic::SolveStatus status = conic::SolveStatus::numerical_failure;
  Eigen::MatrixXcd U;
  double time_s = 0.0;
  bool ok() const { return status == conic::SolveStatus::optimal; }
};

/// Minimize sum tr W_k + tr Q at fixed U, with f2, f3 linearized at expansion.
P21Result solve_p2_1(const Eigen::MatrixXcd& U, const SdrIterate& expansion, const LiftedChannels& lifted,
                     const SystemConfig& config, const conic::SolverOptions& solver = {});

/// Find U (analytic centre of the feasible set) at fixed W, Q, with f2, f3
/// linearized at expansion.U.
P22Result solve_p2_2(const SdrIterate& expansion, const LiftedChannels& lifted, const SystemConfig& config,
                     const conic::SolverOptions& solver = {}, UStepMode mode = UStepMode::analytic_center);

/// Candidates: the leading eigenvectors, then randomization_count draws.
/// Each candidate is scaled by the smallest feasible common factor; the
/// cheapest feasible one is returned. Throws SolveError if none is feasible.
BeamformingSolution gaussian_randomization(const SdrIterate& final_iterate, const LiftedChannels& lifted,
                                           const SystemConfig& config, const SdrOptions& options = {});

RunResult run_sdr(const LiftedChannels& lifted, const SystemConfig& config, const SdrOptions& options = {});
RunResult run_sdr(const Scenario& scenario, const SdrOptions& options = {});

}  // namespace irssec

#endif  // IRSSEC_SDR_HPP
