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


#ifndef S3CE_TAPE_HPP
#define S3CE_TAPE_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "s3ce/matrix.hpp"

namespace s3ce {

// Fixed primitive vocabulary of the reverse-mode engine. Everything else is
// composed from these.
enum class Primitive {
  kParameter,
  kConstant,
  kMatmul,        // flags: transpose_a, transpose_b
  kAdd,
  kSubtract,
  kScale,         // scalar
  kHadamard,
  kRelu,
  kExp,
  kLog,
  kSum,           // -> 1x1
  kRowSoftmax,    // flag: exclude_diagonal (square input, c_ii = 0)
  kRowNormalize,  // row L2 normalize; zero rows rejected
  kFrobeniusSq,   // -> 1x1
};

const char* primitive_name(Primitive p);

struct Var {
  std::size_t index = 0;
};

struct PrimitiveArgs {
  double scalar = 0.0;
  bool transpose_a = false;
  bool transpose_b = false;
  bool exclude_diagonal = false;
};

// Records a computation as it is evaluated, in topological order, and runs
// one backward pass from a scalar node. Nodes are evaluated eagerly with the
// same kernels as the off-tape code, so on-tape and off-tape forwards agree
// bit-for-bit. Single-threaded per tape.
class Tape {
 public:
  Var parameter(std::string name, Matrix value);
  Var constant(Matrix value);

  // Generic entry point. Unknown primitive kinds and shape errors are
  // rejected here, at construction time.
  Var record(Primitive kind, std::span<const Var> parents, const PrimitiveArgs& args = {});

  Var matmul(Var a, Var b, bool transpose_a = false, bool transpose_b = false);
  Var add(Var a, Var b);
  Var subtract(Var a, Var b);
  Var scale(Var a, double s);
  Var hadamard(Var a, Var b);
  Var relu(Var a);
  Var exp(Var a);
  Var log(Var a);
  Var sum(Var a);
  Var row_softmax(Var a, bool exclude_diagonal = false);
  Var row_normalize(Var a);
  Var frobenius_sq(Var a);

  const Matrix& value(Var v) const;
  double scalar(Var v) const;
  std::size_t size() const { return nodes_.size(); }
  Primitive kind(Var v) const;
  std::span<const std::size_t> parents(Var v) const;

  // Fills gradients of `loss` (must be 1x1) with respect to every node.
  // After backward the tape is finalized and accepts no new records.
  void backward(Var loss);
  bool finalized() const { return finalized_; }

  const Matrix& grad(Var v) const;
  std::vector<Var> parameters() const;
  const std::string& parameter_name(Var v) const;
  // Parameter name -> gradient.
  std::map<std::string, Matrix> parameter_gradients() const;

 private:
  struct Node {
    Primitive kind;
    std::vector<std::size_t> parents;
    PrimitiveArgs args;
    Matrix value;
    std::string name;
  };

  Var push(Node node);
  const Node& node(Var v) const;

  std::vector<Node> nodes_;
  std::vector<Matrix> grads_;
  bool finalized_ = false;
};

}  // namespace s3ce

#endif  // S3CE_TAPE_HPP
