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

#include "scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace irssec::detail {

namespace {

std::vector<double> powers(const Eigen::RowVectorXcd& a, const BeamformingSolution& sol) {
  std::vector<double> p;
  for (const auto& w : sol.w) p.push_back(std::norm((a * w)(0)));
  p.push_back(std::norm((a * sol.q)(0)));
  return p;
}

double rate(const std::vector<double>& p, int k, double t, double sigma2) {
  double den = sigma2;
  for (std::size_t g = 0; g < p.size(); ++g)
    if (static_cast<int>(g) != k) den += t * p[g];
  return std::log2(1.0 + t * p[k] / den);
}

}  // namespace

ReceivedPowers received_powers(const BeamformingSolution& sol, const LiftedChannels& lifted) {
  ReceivedPowers r;
  r.bob.resize(lifted.K());
  for (int k = 0; k < lifted.K(); ++k)
    for (const auto& H : lifted.H_user[k]) r.bob[k].push_back(powers(effective_row(sol, H), sol));
  for (const auto& H : lifted.H_eve) r.eve.push_back(powers(effective_row(sol, H), sol));
  return r;
}

double secrecy_margin(const ReceivedPowers& p, double t, double sigma2) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < p.bob.size(); ++k) {
    double re = 0.0;
    for (const auto& e : p.eve) re = std::max(re, rate(e, static_cast<int>(k), t, sigma2));
    for (const auto& b : p.bob[k]) m = std::min(m, rate(b, static_cast<int>(k), t, sigma2) - re);
  }
  return m;
}

double min_bob_rate(const ReceivedPowers& p, double t, double sigma2) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < p.bob.size(); ++k)
    for (const auto& b : p.bob[k]) m = std::min(m, rate(b, static_cast<int>(k), t, sigma2));
  return m;
}

}  // namespace irssec::detail
