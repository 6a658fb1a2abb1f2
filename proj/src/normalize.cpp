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

#include "normalize.hpp"

#include <cmath>

namespace irssec::detail {

Normalized normalize(const LiftedChannels& lifted, double sigma2) {
  double g = 0.0;
  int count = 0;
  for (const auto& grp : lifted.H_user)
    for (const auto& H : grp) {
      g += H.squaredNorm();
      ++count;
    }
  g = count > 0 ? g / count : 1.0;
  if (!(g > 0.0)) g = 1.0;
  Normalized n;
  n.lifted = lifted;
  const double s = 1.0 / std::sqrt(g);
  for (auto& grp : n.lifted.H_user)
    for (auto& H : grp) H *= s;
  for (auto& H : n.lifted.H_eve) H *= s;
  n.amp = std::sqrt(sigma2 / g);
  return n;
}

BeamformingSolution to_physical(const BeamformingSolution& s, const Normalized& n) {
  BeamformingSolution out = s;
  for (auto& w : out.w) w *= n.amp;
  out.q *= n.amp;
  return out;
}

BeamformingSolution to_normalized(const BeamformingSolution& s, const Normalized& n) {
  BeamformingSolution out = s;
  for (auto& w : out.w) w /= n.amp;
  out.q /= n.amp;
  return out;
}

}  // namespace irssec::detail
