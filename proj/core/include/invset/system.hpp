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

#pragma once

#include <Eigen/Dense>

#include <vector>

namespace invset {

// x⁺ = A x + B u.
struct LinearSystem {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;

  int n() const { return static_cast<int>(A.rows()); }
  int m() const { return static_cast<int>(B.cols()); }

  // Throws std::invalid_argument unless A is square and B has n rows.
  void validate() const;
};

// A^0 .. A^kmax, each computed once by repeated multiplication.
class MatrixPowers {
 public:
  MatrixPowers(const Eigen::MatrixXd& A, int kmax);

  const Eigen::MatrixXd& operator[](int k) const { return powers_.at(static_cast<size_t>(k)); }
  int max_power() const { return static_cast<int>(powers_.size()) - 1; }

 private:
  std::vector<Eigen::MatrixXd> powers_;
};

}  // namespace invset
