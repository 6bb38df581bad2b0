// Copyright 2026 The invset Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "invset/system.hpp"

#include <stdexcept>

namespace invset {

void LinearSystem::validate() const {
  if (A.rows() != A.cols()) throw std::invalid_argument("LinearSystem: A must be square");
  if (B.rows() != A.rows()) throw std::invalid_argument("LinearSystem: B row count != n");
  if (A.rows() == 0) throw std::invalid_argument("LinearSystem: empty state space");
}

MatrixPowers::MatrixPowers(const Eigen::MatrixXd& A, int kmax) {
  if (kmax < 0) throw std::invalid_argument("MatrixPowers: kmax must be >= 0");
  powers_.reserve(static_cast<size_t>(kmax) + 1);
  powers_.push_back(Eigen::MatrixXd::Identity(A.rows(), A.cols()));
  for (int k = 1; k <= kmax; ++k) powers_.push_back(powers_.back() * A);
}

}  // namespace invset
