#pragma once

#include <vector>

#include "lep/array2.hpp"

namespace lep::math {

enum class Op {
  kInput,
  kMatmul,
  kAdd,  // equal shapes, or broadcast of a 1xC bias row over an RxC left operand
  kSub,
  kMulElem,
  kTanh,
  kSigmoid,
  kExp,
  kLog,
  kNeg,
  kSum,   // RxC -> 1x1
  kMean,  // RxC -> 1x1
  kConcatCols,
  kSliceCols,
  kScale,  // multiply by compile-time-known scalar
  kSquare,
};

const char* op_name(Op op);

using NodeId = int;

// Per-node gradient accumulators from one backward pass. Nodes the loss
// does not depend on keep an empty Array2 (treated as zero).
class Gradients {
 public:
  explicit Gradients(size_t n) : grads_(n) {}
  const Array2& operator[](NodeId id) const { return grads_[id]; }
  Array2& operator[](NodeId id) { return grads_[id]; }
  size_t size() const { return grads_.size(); }

 private:
  std::vector<Array2> grads_;
};

// Linear tape of eagerly evaluated array operations. Inputs of a node
// always precede it, so reverse iteration is a valid backward schedule.
// Single-threaded by contract; use one tape per worker.
class Tape {
 public:
  struct Node {
    Op op;
    NodeId a = -1;
    NodeId b = -1;
    Array2 value;
    double scalar = 0.0;  // kScale factor
    int begin = 0;        // kSliceCols range
    int end = 0;
  };

  NodeId input(Array2 value);

  NodeId matmul(NodeId a, NodeId b);
  NodeId add(NodeId a, NodeId b);
  NodeId sub(NodeId a, NodeId b);
  NodeId mul_elem(NodeId a, NodeId b);
  NodeId tanh(NodeId a);
  NodeId sigmoid(NodeId a);
  NodeId exp(NodeId a);
  NodeId log(NodeId a);
  NodeId neg(NodeId a);
  NodeId sum(NodeId a);
  NodeId mean(NodeId a);
  NodeId concat_cols(NodeId a, NodeId b);
  NodeId slice_cols(NodeId a, int begin, int end);
  NodeId scale(NodeId a, double k);
  NodeId square(NodeId a);

  const Array2& value(NodeId id) const { return nodes_[id].value; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  int size() const { return static_cast<int>(nodes_.size()); }

  // Reverse accumulation from a scalar (1x1) loss node.
  Gradients backward(NodeId loss) const;

 private:
  NodeId push(Node n);
  NodeId unary(Op op, NodeId a);
  NodeId binary(Op op, NodeId a, NodeId b);

  std::vector<Node> nodes_;
};

// out += A * B, plain ikj loops; also used by the forward-only net paths.
void matmul_accumulate(const Array2& a, const Array2& b, Array2& out);
// out += A^T * B and out += A * B^T, needed by matmul backward.
void matmul_at_b_accumulate(const Array2& a, const Array2& b, Array2& out);
void matmul_a_bt_accumulate(const Array2& a, const Array2& b, Array2& out);

}  // namespace lep::math
