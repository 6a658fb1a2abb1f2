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
 * \file irssec/model.hpp
 *
 * \brief Lifted channels and exact evaluation of rates, secrecy and power.
 *
 * With u = [v; 1] and H = [diag(h_ib^H) G; h_ab^H] the received amplitude
 * of x at a user is u^H H x. Phases follow v_n = exp(j theta_n).
 * Rates are in bits/s/Hz (base-2 logs).
 */

#ifndef IRSSEC_MODEL_HPP
#define IRSSEC_MODEL_HPP

#include <vector>

#include <Eigen/Dense>

#include "irssec/scenario.hpp"

namespace irssec {

struct LiftedChannels {
  int M = 0;
  int N = 0;
  std::vector<std::vector<Eigen::MatrixXcd>> H_user;  // [k][j], (N+1) x M
  std::vector<Eigen::MatrixXcd> H_eve;                // [l], (N+1) x M

  int K() const { return static_cast<int>(H_user.size()); }
  int L() const { return static_cast<int>(H_eve.size()); }
  int group_size(int k) const { return static_cast<int>(H_user[k].size()); }
};

struct BeamformingSolution {
  std::vector<Eigen::VectorXcd> w;  // [k], length M
  Eigen::VectorXcd q;               // artificial noise, length M
  Eigen::VectorXcd v;               // length N, unit modulus
  Eigen::VectorXd theta;            // length N, radians

  /// u = [v; 1]
  Eigen::VectorXcd u() const;

  /// Set v and theta from angles.
  void set_theta(const Eigen::VectorXd& angles);
  /// Set v (and theta) from the first N entries of u, divided by u(N).
  void set_from_u(const Eigen::VectorXcd& u_full);

  static BeamformingSolution zeros(int M, int N, int K);
};

struct RateReport {
  std::vector<std::vector<double>> R_b;      // [k][j]
  std::vector<std::vector<double>> R_e_max;  // [k][j], max over eves of R_e(k, l)
  std::vector<std::vector<double>> R_s;      // [k][j]
  double power = 0.0;
  double min_secrecy_margin = 0.0;  // min over (k,j,l) of R_b - R_e - gamma_s
  double max_modulus_error = 0.0;
  bool feasible = false;
};

/// u^H H for this solution. A solution without phases (v empty) is read as
/// having no IRS at all, so only the direct row of H is used.
Eigen::RowVectorXcd effective_row(const BeamformingSolution& sol, const Eigen::MatrixXcd& H);

/// Scales the IRS rows by beta.
LiftedChannels lift_channels(const ChannelSet& channels, double beta = 1.0);

/// The same channels with the IRS removed (N = 0).
LiftedChannels direct_only(const LiftedChannels& lifted);

double sinr_bob(const BeamformingSolution& sol, const LiftedChannels& lifted, double sigma2, int k, int j);
double sinr_eve(const BeamformingSolution& sol, const LiftedChannels& lifted, double sigma2, int k, int l);

double bob_rate(const BeamformingSolution& sol, const LiftedChannels& lifted, double sigma2, int k, int j);
double eve_rate(const BeamformingSolution& sol, const LiftedChannels& lifted, double sigma2, int k, int l);
/// max(0, R_b(k,j) - max_l R_e(k,l))
double secrecy_rate(const BeamformingSolution& sol, const LiftedChannels& lifted, double sigma2, int k, int j);

double transmit_power(const BeamformingSolution& sol);

/// Pairwise check over all (k, j, l) and of the unit-modulus constraint.
RateReport check_feasible(const BeamformingSolution& sol, const LiftedChannels& lifted,
                          const SystemConfig& config, double tol = 1e-4);

}  // namespace irssec

#endif  // IRSSEC_MODEL_HPP
