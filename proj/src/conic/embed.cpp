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

#include <stdexcept>

#include "irssec/conic.hpp"

namespace irssec::conic {

Eigen::MatrixXd complex_to_real_embed(const Eigen::MatrixXcd& h, double herm_tol) {
  if (h.rows() != h.cols()) throw std::invalid_argument("complex_to_real_embed: matrix must be square");
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > herm_tol) {
    throw std::invalid_argument("complex_to_real_embed: matrix is not Hermitian");
  }
  const Eigen::Index n = h.rows();
  // Symmetrize so the embedding is exactly symmetric.
  const Eigen::MatrixXcd s = 0.5 * (h + h.adjoint());
  Eigen::MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = s.real();
  out.bottomRightCorner(n, n) = s.real();
  out.bottomLeftCorner(n, n) = s.imag();
  out.topRightCorner(n, n) = -s.imag();
  return out;
}

Eigen::VectorXd complex_to_real_embed(const Eigen::VectorXcd& v) {
  const Eigen::Index n = v.size();
  Eigen::VectorXd out(2 * n);
  out.head(n) = v.real();
  out.tail(n) = v.imag();
  return out;
}

}  // namespace irssec::conic
