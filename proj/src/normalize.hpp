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

// Rescaling so that the solvers see O(1) numbers. With g the mean squared
// Frobenius norm of the user channels, H' = H / sqrt(g) and the noise
// power becomes 1. A vector x' in the scaled problem maps back to
// x = x' * sigma / sqrt(g), so powers scale by sigma^2 / g.

#ifndef IRSSEC_NORMALIZE_HPP
#define IRSSEC_NORMALIZE_HPP

#include "irssec/model.hpp"

namespace irssec::detail {

struct Normalized {
  LiftedChannels lifted;  // noise power 1
  double amp = 1.0;       // x = amp * x'
  double power() const { return amp * amp; }
};

Normalized normalize(const LiftedChannels& lifted, double sigma2);

BeamformingSolution to_physical(const BeamformingSolution& s, const Normalized& n);
BeamformingSolution to_normalized(const BeamformingSolution& s, const Normalized& n);

}  // namespace irssec::detail

#endif  // IRSSEC_NORMALIZE_HPP
