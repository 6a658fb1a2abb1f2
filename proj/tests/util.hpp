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

// Random instances shared by the unit tests and the acceptance run.

#ifndef IRSSEC_TESTS_UTIL_HPP
#define IRSSEC_TESTS_UTIL_HPP

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "irssec/model.hpp"
#include "irssec/scenario.hpp"
#include "irssec/sdr.hpp"

namespace irssec::testing {

inline Eigen::MatrixXcd rand_cmat(std::mt19937_64& rng, int r, int c, double scale = 1.0) {
  Eigen::MatrixXcd m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = scale * cn01(rng);
  return m;
}

/// Unit-scale lifted channels with i.i.d. CN(0, 1) entries; use with sigma2 = 1.
inline LiftedChannels synthetic_lifted(std::mt19937_64& rng, int M, int N, const std::vector<int>& group_sizes, int L) {
  LiftedChannels out;
  out.M = M;
  out.N = N;
  for (int s : group_sizes) {
    out.H_user.emplace_back();
    for (int j = 0; j < s; ++j) out.H_user.back().push_back(rand_cmat(rng, N + 1, M));
  }
  for (int l = 0; l < L; ++l) out.H_eve.push_back(rand_cmat(rng, N + 1, M));
  return out;
}

inline SystemConfig config_for(const LiftedChannels& h, double gamma_s, double sigma2 = 1.0) {
  SystemConfig c;
  c.M = h.M;
  c.N = h.N;
  c.K = h.K();
  c.group_sizes.clear();
  for (int k = 0; k < h.K(); ++k) c.group_sizes.push_back(h.group_size(k));
  c.L = h.L();
  c.sigma2 = sigma2;
  c.gamma_s = gamma_s;
  return c;
}

/// Random PSD of the given rank, trace about `scale`.
inline Eigen::MatrixXcd rand_psd(std::mt19937_64& rng, int n, int rank, double scale) {
  const Eigen::MatrixXcd y = rand_cmat(rng, n, rank);
  return scale * y * y.adjoint() / static_cast<double>(rank * n);
}

/// Random PSD with unit diagonal.
inline Eigen::MatrixXcd rand_unit_diag_psd(std::mt19937_64& rng, int n, int rank) {
  const Eigen::MatrixXcd y = rand_cmat(rng, n, rank);
  Eigen::MatrixXcd u = y * y.adjoint();
  const Eigen::VectorXd d = u.diagonal().real().cwiseSqrt().cwiseInverse();
  return d.asDiagonal() * u * d.asDiagonal();
}

/// Random Hermitian direction of unit Frobenius norm.
inline Eigen::MatrixXcd rand_herm(std::mt19937_64& rng, int n) {
  const Eigen::MatrixXcd y = rand_cmat(rng, n, n);
  Eigen::MatrixXcd h = y + y.adjoint();
  return h / h.norm();
}

inline SdrIterate rand_iterate(std::mt19937_64& rng, int M, int N, int K, double scale) {
  std::uniform_int_distribution<int> rk(1, M);
  SdrIterate x;
  for (int k = 0; k < K; ++k) x.W.push_back(rand_psd(rng, M, rk(rng), scale * std::exp(cn01(rng).real())));
  x.Q = rand_psd(rng, M, rk(rng), scale * std::exp(cn01(rng).real()));
  x.U = rand_unit_diag_psd(rng, N + 1, std::uniform_int_distribution<int>(1, N + 1)(rng));
  return x;
}

}  // namespace irssec::testing

#endif
