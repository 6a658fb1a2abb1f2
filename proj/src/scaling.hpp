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

// Secrecy margin of a fixed beam direction as its power is scaled.
// Every SINR here is a function of the received powers only, so they are
// tabulated once and the scale search never touches the channels again.

#ifndef IRSSEC_SCALING_HPP
#define IRSSEC_SCALING_HPP

#include <vector>

#include "irssec/model.hpp"

namespace irssec::detail {

struct ReceivedPowers {
  // [k][j][g] with g = K standing for the AN vector.
  std::vector<std::vector<std::vector<double>>> bob;
  // [l][g], same convention.
  std::vector<std::vector<double>> eve;
};

ReceivedPowers received_powers(const BeamformingSolution& sol, const LiftedChannels& lifted);

/// min over (k, j, l) of R_b - R_e when every beam is scaled by sqrt(t).
double secrecy_margin(const ReceivedPowers& p, double t, double sigma2);

/// min over (k, j) of R_b when scaled by sqrt(t) (eves ignored).
double min_bob_rate(const ReceivedPowers& p, double t, double sigma2);

/// Smallest t on a geometric scan of [t_lo, t_hi] with f(t) >= target,
/// refined by bisection to relative tolerance rel_tol. Returns a negative
/// value when the scan finds nothing.
template <class Fn>
double smallest_scale(Fn&& f, double target, double t_lo, double t_hi, double rel_tol, double factor = 1.15) {
  double prev = 0.0;
  double t = t_lo;
  bool found = false;
  while (t <= t_hi * factor) {
    if (f(t) >= target) {
      found = true;
      break;
    }
    prev = t;
    t *= factor;
  }
  if (!found) return -1.0;
  double lo = prev, hi = t;
  // rel_tol is on the amplitude, so halve it for t = rho^2.
  while (hi - lo > 2.0 * rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) >= target) hi = mid; else lo = mid;
  }
  return hi;
}

}  // namespace irssec::detail

#endif  // IRSSEC_SCALING_HPP
