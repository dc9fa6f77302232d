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


#ifndef S3CE_TESTS_SUPPORT_HPP
#define S3CE_TESTS_SUPPORT_HPP

// Test-only oracles and generators. Nothing here calls into the code paths
// these helpers are used to check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "s3ce/matrix.hpp"
#include "s3ce/rng.hpp"
#include "s3ce/tape.hpp"

namespace s3ce::testing {

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double lo = -1.0, double hi = 1.0) {
  Matrix m(rows, cols);
  for (double& v : m.values()) v = uniform(rng, lo, hi);
  return m;
}

inline Matrix random_symmetric(Rng& rng, std::size_t n) {
  Matrix m = random_matrix(rng, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = m(j, i);
  return m;
}

inline double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Relative error between two gradient vectors, ||a - b|| / max(||a||, ||b||);
// falls back to the absolute error when both are essentially zero.
inline double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double scale = std::max(norm(a), norm(b));
  return scale > 1e-6 ? norm(d) / scale : norm(d);
}

// Builds the loss on a fresh tape from named parameter values and returns
// the loss node. Used both for the reverse pass and for re-evaluation.
using LossBuilder = std::function<Var(Tape&, const std::map<std::string, Var>&)>;

struct GradCheck {
  double worst_relative_error = 0.0;
  std::string worst_parameter;
};

// Central finite differences, h = 1e-6 * max(1, |theta|), against the tape's
// reverse-mode gradient for every named parameter.
inline GradCheck check_gradients(const std::map<std::string, Matrix>& params, const LossBuilder& build) {
  auto evaluate = [&](const std::map<std::string, Matrix>& values) {
    Tape tape;
    std::map<std::string, Var> vars;
    for (const auto& [name, value] : values) vars[name] = tape.parameter(name, value);
    return tape.scalar(build(tape, vars));
  };

  Tape tape;
  std::map<std::string, Var> vars;
  for (const auto& [name, value] : params) vars[name] = tape.parameter(name, value);
  tape.backward(build(tape, vars));

  GradCheck result;
  for (const auto& [name, value] : params) {
    const Matrix& ad = tape.grad(vars[name]);
    std::vector<double> fd(value.size());
    for (std::size_t k = 0; k < value.size(); ++k) {
      auto plus = params;
      auto minus = params;
      const double h = 1e-6 * std::max(1.0, std::abs(value.data()[k]));
      plus[name].data()[k] += h;
      minus[name].data()[k] -= h;
      fd[k] = (evaluate(plus) - evaluate(minus)) / (2.0 * h);
    }
    const double err = relative_error(ad.values(), fd);
    if (err >= result.worst_relative_error) {
      result.worst_relative_error = err;
      result.worst_parameter = name;
    }
  }
  return result;
}

// Cyclic Jacobi eigenvalue iteration; returns eigenvalues ascending and the
// matching eigenvector columns. Independent reference for sym_eig.
inline std::pair<std::vector<double>, Matrix> jacobi_eigen(Matrix a) {
  const std::size_t n = a.rows();
  Matrix v = Matrix::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  std::vector<double> values(n);
  Matrix vectors(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = a(order[i], order[i]);
    for (std::size_t r = 0; r < n; ++r) vectors(r, i) = v(r, order[i]);
  }
  return {values, vectors};
}

// Number of connected components of the graph with edges where w_ij > 0.
inline std::size_t count_components(const Matrix& w) {
  const std::size_t n = w.rows();
  std::vector<int> seen(n, 0);
  std::size_t comps = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++comps;
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v)
        if (!seen[v] && w(u, v) > 0.0) {
          seen[v] = 1;
          stack.push_back(v);
        }
    }
  }
  return comps;
}

// Singular values of a, descending (Eigen's two-sided Jacobi SVD).
inline std::vector<double> singular_values(const Matrix& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = a(r, c);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) out.push_back(svd.singularValues()(i));
  return out;
}

// Euclidean projection onto the probability simplex (sort-based).
inline std::vector<double> project_simplex(const std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0, theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumsum += u[k];
    const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  std::vector<double> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = std::max(v[k] - theta, 0.0);
  return out;
}

// Minimizes sum_j w_j d_j + gamma sum_j w_j ln w_j over the simplex by
// projected gradient descent with a fixed step.
inline std::vector<double> entropy_row_by_projected_gradient(const std::vector<double>& d, double gamma,
                                                             std::size_t iterations, double step) {
  std::vector<double> w(d.size(), 1.0 / static_cast<double>(d.size()));
  std::vector<double> next(d.size());
  for (std::size_t it = 0; it < iterations; ++it) {
    for (std::size_t j = 0; j < d.size(); ++j) next[j] = w[j] - step * (d[j] + gamma * (std::log(std::max(w[j], 1e-300)) + 1.0));
    w = project_simplex(next);
  }
  return w;
}

// Best label matching by trying every permutation of the predicted labels.
// Both labelings use values 0..k-1 with the same k.
inline double brute_force_accuracy(const std::vector<int>& truth, const std::vector<int>& pred, int k) {
  std::vector<int> perm(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::size_t best = 0;
  do {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
      if (perm[static_cast<std::size_t>(pred[i])] == truth[i]) ++hits;
    best = std::max(best, hits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(truth.size());
}

// Normalized mutual information written out from raw counts, with the
// geometric-mean normalization.
inline double reference_nmi(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<int, double> ca, cb;
  std::map<std::pair<int, int>, double> joint;
  const double n = static_cast<double>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca[a[i]] += 1;
    cb[b[i]] += 1;
    joint[{a[i], b[i]}] += 1;
  }
  double mi = 0.0, ha = 0.0, hb = 0.0;
  for (const auto& [key, nij] : joint) mi += nij / n * std::log(n * nij / (ca[key.first] * cb[key.second]));
  for (const auto& [key, c] : ca) ha -= c / n * std::log(c / n);
  for (const auto& [key, c] : cb) hb -= c / n * std::log(c / n);
  return mi / std::sqrt(ha * hb);
}

}  // namespace s3ce::testing

#endif  // S3CE_TESTS_SUPPORT_HPP
