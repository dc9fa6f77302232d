// Copyright 2026 The s3ce Authors.
//
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


#include "s3ce/eigen.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "s3ce/error.hpp"

namespace s3ce {

namespace {
constexpr double kSymmetryTolerance = 1e-10;
}

void canonicalize_signs(Matrix& vectors) {
  for (std::size_t c = 0; c < vectors.cols(); ++c) {
    std::size_t best = 0;
    double best_abs = -1.0;
    for (std::size_t r = 0; r < vectors.rows(); ++r) {
      const double a = std::abs(vectors(r, c));
      if (a > best_abs) {
        best_abs = a;
        best = r;
      }
    }
    if (vectors(best, c) < 0.0) {
      for (std::size_t r = 0; r < vectors.rows(); ++r) vectors(r, c) = -vectors(r, c);
    }
  }
}

SymEigenResult sym_eig(const Matrix& a) {
  if (!a.is_square()) throw ValidationError("sym_eig: matrix " + a.shape_string() + " is not square");
  const double asym = max_asymmetry(a);
  if (asym > kSymmetryTolerance) {
    throw ValidationError("sym_eig: matrix is not symmetric (max |a_ij - a_ji| = " + std::to_string(asym) +
                          ")");
  }
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      m(i, j) = 0.5 * (a(ui, uj) + a(uj, ui));
    }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("sym_eig: eigensolver did not converge");

  SymEigenResult result;
  result.eigenvalues.resize(a.rows());
  result.eigenvectors = Matrix(a.rows(), a.rows());
  for (Eigen::Index i = 0; i < n; ++i) {
    result.eigenvalues[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    for (Eigen::Index r = 0; r < n; ++r)
      result.eigenvectors(static_cast<std::size_t>(r), static_cast<std::size_t>(i)) =
          solver.eigenvectors()(r, i);
  }
  canonicalize_signs(result.eigenvectors);
  return result;
}

}  // namespace s3ce
