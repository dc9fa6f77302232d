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


#include "s3ce/tape.hpp"

#include <cmath>

#include "s3ce/error.hpp"
#include "s3ce/ops.hpp"

namespace s3ce {

namespace {

std::size_t arity(Primitive kind) {
  switch (kind) {
    case Primitive::kParameter:
    case Primitive::kConstant:
      return 0;
    case Primitive::kMatmul:
    case Primitive::kAdd:
    case Primitive::kSubtract:
    case Primitive::kHadamard:
      return 2;
    case Primitive::kScale:
    case Primitive::kRelu:
    case Primitive::kExp:
    case Primitive::kLog:
    case Primitive::kSum:
    case Primitive::kRowSoftmax:
    case Primitive::kRowNormalize:
    case Primitive::kFrobeniusSq:
      return 1;
  }
  throw ValidationError("unsupported primitive kind " + std::to_string(static_cast<int>(kind)));
}

Matrix scalar_matrix(double v) {
  Matrix m(1, 1);
  m(0, 0) = v;
  return m;
}

void accumulate(Matrix& into, const Matrix& g) {
  if (into.empty()) {
    into = g;
    return;
  }
  for (std::size_t i = 0; i < into.size(); ++i) into.data()[i] += g.data()[i];
}

Matrix forward(Primitive kind, const Matrix* a, const Matrix* b, const PrimitiveArgs& args) {
  switch (kind) {
    case Primitive::kMatmul: {
      if (!args.transpose_a && !args.transpose_b) return matmul(*a, *b);
      if (!args.transpose_a && args.transpose_b) return matmul_nt(*a, *b);
      if (args.transpose_a && !args.transpose_b) return matmul_tn(*a, *b);
      return matmul(a->transpose(), b->transpose());
    }
    case Primitive::kAdd:
      return *a + *b;
    case Primitive::kSubtract:
      return *a - *b;
    case Primitive::kScale:
      return args.scalar * *a;
    case Primitive::kHadamard:
      return hadamard(*a, *b);
    case Primitive::kRelu:
      return relu(*a);
    case Primitive::kExp:
      return exp(*a);
    case Primitive::kLog:
      return log(*a);
    case Primitive::kSum:
      return scalar_matrix(sum(*a));
    case Primitive::kRowSoftmax:
      return row_softmax(*a, args.exclude_diagonal);
    case Primitive::kRowNormalize:
      return row_normalize(*a);
    case Primitive::kFrobeniusSq:
      return scalar_matrix(frobenius_sq(*a));
    case Primitive::kParameter:
    case Primitive::kConstant:
      break;
  }
  throw ValidationError("primitive has no forward rule");
}

}  // namespace

const char* primitive_name(Primitive p) {
  switch (p) {
    case Primitive::kParameter: return "parameter";
    case Primitive::kConstant: return "constant";
    case Primitive::kMatmul: return "matmul";
    case Primitive::kAdd: return "add";
    case Primitive::kSubtract: return "subtract";
    case Primitive::kScale: return "scale";
    case Primitive::kHadamard: return "hadamard";
    case Primitive::kRelu: return "relu";
    case Primitive::kExp: return "exp";
    case Primitive::kLog: return "log";
    case Primitive::kSum: return "sum";
    case Primitive::kRowSoftmax: return "row_softmax";
    case Primitive::kRowNormalize: return "row_normalize";
    case Primitive::kFrobeniusSq: return "frobenius_sq";
  }
  return "unknown";
}

Var Tape::push(Node node) {
  if (finalized_) throw ValidationError("tape is finalized; no further records accepted");
  nodes_.push_back(std::move(node));
  return Var{nodes_.size() - 1};
}

const Tape::Node& Tape::node(Var v) const {
  if (v.index >= nodes_.size()) throw ValidationError("variable does not belong to this tape");
  return nodes_[v.index];
}

Var Tape::parameter(std::string name, Matrix value) {
  if (name.empty()) throw ValidationError("parameter needs a name");
  for (const auto& n : nodes_)
    if (n.kind == Primitive::kParameter && n.name == name)
      throw ValidationError("duplicate parameter name '" + name + "'");
  return push(Node{Primitive::kParameter, {}, {}, std::move(value), std::move(name)});
}

Var Tape::constant(Matrix value) { return push(Node{Primitive::kConstant, {}, {}, std::move(value), {}}); }

Var Tape::record(Primitive kind, std::span<const Var> parents, const PrimitiveArgs& args) {
  const std::size_t n = arity(kind);
  if (n == 0) throw ValidationError("leaves are created with parameter() or constant()");
  if (parents.size() != n) {
    throw ValidationError(std::string(primitive_name(kind)) + " takes " + std::to_string(n) + " operands");
  }
  std::vector<std::size_t> idx;
  for (Var p : parents) {
    node(p);
    idx.push_back(p.index);
  }
  const Matrix* a = &nodes_[idx[0]].value;
  const Matrix* b = n == 2 ? &nodes_[idx[1]].value : nullptr;
  Matrix value = forward(kind, a, b, args);
  return push(Node{kind, std::move(idx), args, std::move(value), {}});
}

Var Tape::matmul(Var a, Var b, bool transpose_a, bool transpose_b) {
  PrimitiveArgs args;
  args.transpose_a = transpose_a;
  args.transpose_b = transpose_b;
  const Var ps[] = {a, b};
  return record(Primitive::kMatmul, ps, args);
}

Var Tape::add(Var a, Var b) {
  const Var ps[] = {a, b};
  return record(Primitive::kAdd, ps);
}

Var Tape::subtract(Var a, Var b) {
  const Var ps[] = {a, b};
  return record(Primitive::kSubtract, ps);
}

Var Tape::scale(Var a, double s) {
  PrimitiveArgs args;
  args.scalar = s;
  const Var ps[] = {a};
  return record(Primitive::kScale, ps, args);
}

Var Tape::hadamard(Var a, Var b) {
  const Var ps[] = {a, b};
  return record(Primitive::kHadamard, ps);
}

Var Tape::relu(Var a) {
  const Var ps[] = {a};
  return record(Primitive::kRelu, ps);
}

Var Tape::exp(Var a) {
  const Var ps[] = {a};
  return record(Primitive::kExp, ps);
}

Var Tape::log(Var a) {
  const Var ps[] = {a};
  return record(Primitive::kLog, ps);
}

Var Tape::sum(Var a) {
  const Var ps[] = {a};
  return record(Primitive::kSum, ps);
}

Var Tape::row_softmax(Var a, bool exclude_diagonal) {
  PrimitiveArgs args;
  args.exclude_diagonal = exclude_diagonal;
  const Var ps[] = {a};
  return record(Primitive::kRowSoftmax, ps, args);
}

Var Tape::row_normalize(Var a) {
  const Var ps[] = {a};
  return record(Primitive::kRowNormalize, ps);
}

Var Tape::frobenius_sq(Var a) {
  const Var ps[] = {a};
  return record(Primitive::kFrobeniusSq, ps);
}

const Matrix& Tape::value(Var v) const { return node(v).value; }

double Tape::scalar(Var v) const {
  const Matrix& m = value(v);
  if (m.rows() != 1 || m.cols() != 1) throw ValidationError("node " + m.shape_string() + " is not a scalar");
  return m(0, 0);
}

Primitive Tape::kind(Var v) const { return node(v).kind; }

std::span<const std::size_t> Tape::parents(Var v) const { return node(v).parents; }

void Tape::backward(Var loss) {
  const Matrix& lv = value(loss);
  if (lv.rows() != 1 || lv.cols() != 1) {
    throw ValidationError("backward needs a scalar loss, got " + lv.shape_string());
  }
  finalized_ = true;
  grads_.assign(nodes_.size(), Matrix());
  grads_[loss.index] = Matrix(1, 1, 1.0);

  for (std::size_t k = loss.index + 1; k-- > 0;) {
    const Node& nd = nodes_[k];
    if (grads_[k].empty() || nd.parents.empty()) continue;
    const Matrix& g = grads_[k];
    const Matrix& a = nodes_[nd.parents[0]].value;
    Matrix& ga = grads_[nd.parents[0]];

    switch (nd.kind) {
      case Primitive::kMatmul: {
        const Matrix& b = nodes_[nd.parents[1]].value;
        const bool ta = nd.args.transpose_a;
        const bool tb = nd.args.transpose_b;
        Matrix da, db;
        if (!ta && !tb) {
          da = ::s3ce::matmul_nt(g, b);
          db = ::s3ce::matmul_tn(a, g);
        } else if (!ta && tb) {
          da = ::s3ce::matmul(g, b);
          db = ::s3ce::matmul_tn(g, a);
        } else if (ta && !tb) {
          da = ::s3ce::matmul_nt(b, g);
          db = ::s3ce::matmul(a, g);
        } else {
          da = ::s3ce::matmul(g, b).transpose();
          db = ::s3ce::matmul(a, g).transpose();
        }
        accumulate(grads_[nd.parents[0]], da);
        accumulate(grads_[nd.parents[1]], db);
        break;
      }
      case Primitive::kAdd:
        accumulate(ga, g);
        accumulate(grads_[nd.parents[1]], g);
        break;
      case Primitive::kSubtract:
        accumulate(ga, g);
        accumulate(grads_[nd.parents[1]], -1.0 * g);
        break;
      case Primitive::kScale:
        accumulate(ga, nd.args.scalar * g);
        break;
      case Primitive::kHadamard: {
        const Matrix& b = nodes_[nd.parents[1]].value;
        Matrix da = ::s3ce::hadamard(g, b);
        Matrix db = ::s3ce::hadamard(g, a);
        accumulate(grads_[nd.parents[0]], da);
        accumulate(grads_[nd.parents[1]], db);
        break;
      }
      case Primitive::kRelu: {
        Matrix d = g;
        for (std::size_t i = 0; i < d.size(); ++i)
          if (!(a.data()[i] > 0.0)) d.data()[i] = 0.0;
        accumulate(ga, d);
        break;
      }
      case Primitive::kExp:
        accumulate(ga, ::s3ce::hadamard(g, nd.value));
        break;
      case Primitive::kLog: {
        Matrix d = g;
        for (std::size_t i = 0; i < d.size(); ++i) d.data()[i] /= a.data()[i];
        accumulate(ga, d);
        break;
      }
      case Primitive::kSum:
      {
        Matrix d(a.rows(), a.cols());
        for (double& v : d.values()) v = g(0, 0);
        accumulate(ga, d);
      }
        break;
      case Primitive::kRowSoftmax: {
        // d a_i = y_i ⊙ (g_i − <g_i, y_i>); masked entries have y = 0.
        const Matrix& y = nd.value;
        Matrix d(y.rows(), y.cols());
        for (std::size_t i = 0; i < y.rows(); ++i) {
          double dot = 0.0;
          for (std::size_t j = 0; j < y.cols(); ++j) dot += g(i, j) * y(i, j);
          for (std::size_t j = 0; j < y.cols(); ++j) d(i, j) = y(i, j) * (g(i, j) - dot);
        }
        accumulate(ga, d);
        break;
      }
      case Primitive::kRowNormalize: {
        // d x_i = (g_i − y_i <g_i, y_i>) / ||x_i||.
        const Matrix& y = nd.value;
        Matrix d(y.rows(), y.cols());
        for (std::size_t i = 0; i < y.rows(); ++i) {
          double ss = 0.0;
          double dot = 0.0;
          for (std::size_t j = 0; j < y.cols(); ++j) {
            ss += a(i, j) * a(i, j);
            dot += g(i, j) * y(i, j);
          }
          const double norm = std::sqrt(ss);
          for (std::size_t j = 0; j < y.cols(); ++j) d(i, j) = (g(i, j) - y(i, j) * dot) / norm;
        }
        accumulate(ga, d);
        break;
      }
      case Primitive::kFrobeniusSq:
        accumulate(ga, (2.0 * g(0, 0)) * a);
        break;
      case Primitive::kParameter:
      case Primitive::kConstant:
        break;
    }
  }

  // Nodes the loss does not depend on get an explicit zero gradient.
  for (std::size_t k = 0; k < nodes_.size(); ++k)
    if (grads_[k].empty()) grads_[k] = Matrix(nodes_[k].value.rows(), nodes_[k].value.cols());
}

const Matrix& Tape::grad(Var v) const {
  node(v);
  if (!finalized_) throw ValidationError("grad requested before backward");
  return grads_[v.index];
}

std::vector<Var> Tape::parameters() const {
  std::vector<Var> out;
  for (std::size_t k = 0; k < nodes_.size(); ++k)
    if (nodes_[k].kind == Primitive::kParameter) out.push_back(Var{k});
  return out;
}

const std::string& Tape::parameter_name(Var v) const { return node(v).name; }

std::map<std::string, Matrix> Tape::parameter_gradients() const {
  std::map<std::string, Matrix> out;
  for (Var p : parameters()) out.emplace(nodes_[p.index].name, grad(p));
  return out;
}

}  // namespace s3ce
