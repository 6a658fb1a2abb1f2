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
 * \file irssec/socp.hpp
 *
 * \brief Successive convex approximation with second-order-cone steps.
 *
 * SINR slacks gamma_b (Bob lower bounds) and gamma_e (Eve upper bounds)
 * split the secrecy constraint into 1 + gamma_b >= 2^gamma_s (1 + gamma_e)
 * plus SINR constraints. The non-convex quadratic-over-linear terms are
 * replaced by their tangent F, a global lower bound, so every point that is
 * feasible for the surrogate is feasible for the exact constraints.
 */

#ifndef IRSSEC_SOCP_HPP
#define IRSSEC_SOCP_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "irssec/conic.hpp"
#include "irssec/model.hpp"
#include "irssec/trace.hpp"

namespace irssec {

enum class SlackMode { paper_faithful, margin_max };

struct SocpOptions {
  double epsilon = 1e-3;
  int max_iters = 50;
  std::uint64_t seed = 1;
  SlackMode slack_mode = SlackMode::paper_faithful;
  int init_attempts = 10;
  conic::SolverOptions solver{};
};

struct SinrSlacks {
  std::vector<std::vector<double>> gamma_b;  // [k][j]
  std::vector<std::vector<double>> gamma_e;  // [k][l]
};

/// 2 Re(conj(xt) x) / rt - |xt|^2 / rt^2 * r. Lower bound of |x|^2 / r for r > 0.
double surrogate_F(std::complex<double> x, double r, std::complex<double> x_tilde, double r_tilde);

/// Expansion point of the beamformer step. gamma_b is usually the exact
/// Bob SINR at (w, q), which keeps the expansion point itself feasible.
struct ScaExpansion {
  std::vector<Eigen::VectorXcd> w;
  Eigen::VectorXcd q;
  std::vector<std::vector<double>> gamma_b;  // [k][j]

  static ScaExpansion exact(const BeamformingSolution& sol, const LiftedChannels& lifted, double sigma2);
};

struct P31Result {
  conic::SolveStatus status = conic::SolveStatus::numerical_failure;
  std::vector<Eigen::VectorXcd> w;
  Eigen::VectorXcd q;
  SinrSlacks slacks;
  double power = 0.0;
  double time_s = 0.0;
  std::string message;
  bool ok() const { return status == conic::SolveStatus::optimal; }
};

struct P32Result {
  conic::SolveStatus status = conic::SolveStatus::numerical_failure;
  Eigen::VectorXcd u;  // relaxed, length N+1, last entry 1
  SinrSlacks slacks;
  double min_margin = 0.0;  // min over pairs of 1 + gamma_b - 2^gamma_s (1 + gamma_e)
  double time_s = 0.0;
  bool ok() const { return status == conic::SolveStatus::optimal; }
};

/// Beamformer step at fixed u (length N+1, last entry 1).
P31Result solve_p3_1(const Eigen::VectorXcd& u, const ScaExpansion& expansion, const LiftedChannels& lifted,
                     const SystemConfig& config, const conic::SolverOptions& solver = {});

/// Phase step at fixed (w, q) = wq_fixed, linearized at wq_fixed.u().
P32Result solve_p3_2(const BeamformingSolution& wq_fixed, const LiftedChannels& lifted, const SystemConfig& config,
                     SlackMode mode = SlackMode::paper_faithful, const conic::SolverOptions& solver = {});

/// exp(j arg(u_n / u_{N+1})); throws std::domain_error if u_{N+1} vanishes.
Eigen::VectorXcd recover_unit_modulus(const Eigen::VectorXcd& u_relaxed);

RunResult run_socp(const LiftedChannels& lifted, const SystemConfig& config, const SocpOptions& options = {});
RunResult run_socp(const Scenario& scenario, const SocpOptions& options = {});

/// Beamformer-only SCA at fixed phases theta (length N; N = 0 allowed).
RunResult run_fixed_phase_sca(const LiftedChannels& lifted, const SystemConfig& config,
                              const Eigen::VectorXd& theta, const SocpOptions& options = {});

}  // namespace irssec

#endif  // IRSSEC_SOCP_HPP
