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

#include "irssec/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace irssec {

namespace {

Eigen::MatrixXcd lift_one(const Eigen::MatrixXcd& G, const Eigen::VectorXcd& h_i,
                          const Eigen::VectorXcd& h_a, double beta) {
  const int N = static_cast<int>(G.rows());
  const int M = static_cast<int>(h_a.size());
  if (h_i.size() != N) throw std::invalid_argument("lift_channels: IRS channel length differs from N");
  if (N > 0 && G.cols() != M) throw std::invalid_argument("lift_channels: G has wrong column count");
  Eigen::MatrixXcd H(N + 1, M);
  if (N > 0) H.topRows(N) = beta * (h_i.conjugate().asDiagonal() * G);
  H.row(N) = h_a.adjoint();
  return H;
}

// Interference-plus-noise and signal power seen through row vector a = u^H H.
double sinr_of(const Eigen::RowVectorXcd& a, const BeamformingSolution& sol, int k, double sigma2) {
  double den = sigma2 + std::norm((a * sol.q)(0));
  double num = 0.0;
  for (int g = 0; g < static_cast<int>(sol.w.size()); ++g) {
    const double p = std::norm((a * sol.w[g])(0));
    if (g == k) num = p; else den += p;
  }
  return num / den;
}

Eigen::RowVectorXcd effective(const BeamformingSolution& sol, const Eigen::MatrixXcd& H) {
  return effective_row(sol, H);
}

}  // namespace

Eigen::RowVectorXcd effective_row(const BeamformingSolution& sol, const Eigen::MatrixXcd& H) {
  if (sol.v.size() == 0) return H.bottomRows(1);
  if (sol.v.size() + 1 != H.rows()) throw std::invalid_argument("solution has the wrong number of phases");
  return sol.u().adjoint() * H;
}

Eigen::VectorXcd BeamformingSolution::u() const {
  Eigen::VectorXcd out(v.size() + 1);
  out.head(v.size()) = v;
  out(v.size()) = 1.0;
  return out;
}

void BeamformingSolution::set_theta(const Eigen::VectorXd& angles) {
  theta = angles;
  v.resize(angles.size());
  for (int n = 0; n < angles.size(); ++n) v(n) = std::polar(1.0, angles(n));
}

void BeamformingSolution::set_from_u(const Eigen::VectorXcd& u_full) {
  const int N = static_cast<int>(u_full.size()) - 1;
  if (N < 0) throw std::invalid_argument("set_from_u: empty vector");
  const std::complex<double> ref = u_full(N);
  if (std::abs(ref) == 0.0) throw std::domain_error("set_from_u: reference entry vanishes");
  Eigen::VectorXd th(N);
  for (int n = 0; n < N; ++n) th(n) = std::arg(u_full(n) / ref);
  set_theta(th);
}

BeamformingSolution BeamformingSolution::zeros(int M, int N, int K) {
  BeamformingSolution s;
  s.w.assign(K, Eigen::VectorXcd::Zero(M));
  s.q = Eigen::VectorXcd::Zero(M);
  s.set_theta(Eigen::VectorXd::Zero(N));
  return s;
}

LiftedChannels lift_channels(const ChannelSet& channels, double beta) {
  LiftedChannels out;
  out.N = channels.N();
  out.M = channels.M();
  out.H_user.resize(channels.K());
  for (int k = 0; k < channels.K(); ++k) {
    if (channels.h_ib[k].size() != channels.h_ab[k].size())
      throw std::invalid_argument("lift_channels: group size mismatch");
    for (std::size_t j = 0; j < channels.h_ab[k].size(); ++j)
      out.H_user[k].push_back(lift_one(channels.G, channels.h_ib[k][j], channels.h_ab[k][j], beta));
  }
  if (channels.h_ie.size() != channels.h_ae.size())
    throw std::invalid_argument("lift_channels: eve count mismatch");
  for (int l = 0; l < channels.L(); ++l)
    out.H_eve.push_back(lift_one(channels.G, channels.h_ie[l], channels.h_ae[l], beta));
  return out;
}

LiftedChannels direct_only(const LiftedChannels& lifted) {
  LiftedChannels out;
  out.M = lifted.M;
  out.N = 0;
  out.H_user.resize(lifted.K());
  for (int k = 0; k < lifted.K(); ++k)
    for (const auto& H : lifted.H_user[k]) out.H_user[k].push_back(H.bottomRows(1));
  for (const auto& H : lifted.H_eve) out.H_eve.push_back(H.bottomRows(1));
  return out;
}

double sinr_bob(const BeamformingSolution& sol, const LiftedChannels& lifted, double sigma2, int k, int j) {
  return sinr_of(effective(sol, lifted.H_user.at(k).at(j)), sol, k, sigma2);
}

double sinr_eve(const BeamformingSolution& sol, const LiftedChannels& lifted, double sigma2, int k, int l) {
  return sinr_of(effective(sol, lifted.H_eve.at(l)), sol, k, sigma2);
}

double bob_rate(const BeamformingSolution& sol, const LiftedChannels& lifted, double sigma2, int k, int j) {
  return std::log2(1.0 + sinr_bob(sol, lifted, sigma2, k, j));
}

double eve_rate(const BeamformingSolution& sol, const LiftedChannels& lifted, double sigma2, int k, int l) {
  return std::log2(1.0 + sinr_eve(sol, lifted, sigma2, k, l));
}

double secrecy_rate(const BeamformingSolution& sol, const LiftedChannels& lifted, double sigma2, int k, int j) {
  double worst = 0.0;
  for (int l = 0; l < lifted.L(); ++l) worst = std::max(worst, eve_rate(sol, lifted, sigma2, k, l));
  return std::max(0.0, bob_rate(sol, lifted, sigma2, k, j) - worst);
}

double transmit_power(const BeamformingSolution& sol) {
  double p = sol.q.squaredNorm();
  for (const auto& w : sol.w) p += w.squaredNorm();
  return p;
}

RateReport check_feasible(const BeamformingSolution& sol, const LiftedChannels& lifted,
                          const SystemConfig& config, double tol) {
  if (tol < 0.0) throw std::invalid_argument("check_feasible: negative tolerance");
  RateReport r;
  r.power = transmit_power(sol);
  r.min_secrecy_margin = std::numeric_limits<double>::infinity();
  const int K = lifted.K();
  std::vector<double> eve_max(K, 0.0);
  std::vector<std::vector<double>> re(K, std::vector<double>(lifted.L()));
  for (int k = 0; k < K; ++k)
    for (int l = 0; l < lifted.L(); ++l) {
      re[k][l] = eve_rate(sol, lifted, config.sigma2, k, l);
      eve_max[k] = std::max(eve_max[k], re[k][l]);
    }
  bool ok = true;
  r.R_b.resize(K);
  r.R_e_max.resize(K);
  r.R_s.resize(K);
  for (int k = 0; k < K; ++k) {
    for (int j = 0; j < lifted.group_size(k); ++j) {
      const double rb = bob_rate(sol, lifted, config.sigma2, k, j);
      r.R_b[k].push_back(rb);
      r.R_e_max[k].push_back(eve_max[k]);
      r.R_s[k].push_back(std::max(0.0, rb - eve_max[k]));
      for (int l = 0; l < lifted.L(); ++l)
        r.min_secrecy_margin = std::min(r.min_secrecy_margin, rb - re[k][l] - config.gamma_s);
      if (std::max(0.0, rb - eve_max[k]) < config.gamma_s - tol) ok = false;
    }
  }
  for (int n = 0; n < sol.v.size(); ++n)
    r.max_modulus_error = std::max(r.max_modulus_error, std::abs(std::abs(sol.v(n)) - 1.0));
  if (r.max_modulus_error > tol) ok = false;
  r.feasible = ok;
  return r;
}

}  // namespace irssec
