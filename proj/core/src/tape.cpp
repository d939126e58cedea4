#include "lep/tape.hpp"

#include <cmath>
#include <string>

#include "lep/errors.hpp"

namespace lep::math {

const char* op_name(Op op) {
  switch (op) {
    case Op::kInput: return "input";
    case Op::kMatmul: return "matmul";
    case Op::kAdd: return "add";
    case Op::kSub: return "sub";
    case Op::kMulElem: return "mul_elem";
    case Op::kTanh: return "tanh";
    case Op::kSigmoid: return "sigmoid";
    case Op::kExp: return "exp";
    case Op::kLog: return "log";
    case Op::kNeg: return "neg";
    case Op::kSum: return "sum";
    case Op::kMean: return "mean";
    case Op::kConcatCols: return "concat_cols";
    case Op::kSliceCols: return "slice_cols";
    case Op::kScale: return "scale";
    case Op::kSquare: return "square";
  }
  return "?";
}

void matmul_accumulate(const Array2& a, const Array2& b, Array2& out) {
  const int n = a.rows(), k = a.cols(), m = b.cols();
  const double* pa = a.data().data();
  const double* pb = b.data().data();
  double* po = out.data().data();
  for (int i = 0; i < n; ++i) {
    for (int p = 0; p < k; ++p) {
      const double aip = pa[i * k + p];
      if (aip == 0.0) continue;
      const double* brow = pb + p * m;
      double* orow = po + i * m;
      for (int j = 0; j < m; ++j) orow[j] += aip * brow[j];
    }
  }
}

void matmul_at_b_accumulate(const Array2& a, const Array2& b, Array2& out) {
  // out (k x m) += A^T (k x n) * B (n x m), A given as n x k
  const int n = a.rows(), k = a.cols(), m = b.cols();
  const double* pa = a.data().data();
  const double* pb = b.data().data();
  double* po = out.data().data();
  for (int i = 0; i < n; ++i) {
    const double* arow = pa + i * k;
    const double* brow = pb + i * m;
    for (int p = 0; p < k; ++p) {
      const double aip = arow[p];
      if (aip == 0.0) continue;
      double* orow = po + p * m;
      for (int j = 0; j < m; ++j) orow[j] += aip * brow[j];
    }
  }
}

void matmul_a_bt_accumulate(const Array2& a, const Array2& b, Array2& out) {
  // out (n x r) += A (n x m) * B^T (m x r), B given as r x m
  const int n = a.rows(), m = a.cols(), r = b.rows();
  const double* pa = a.data().data();
  const double* pb = b.data().data();
  double* po = out.data().data();
  for (int i = 0; i < n; ++i) {
    const double* arow = pa + i * m;
    double* orow = po + i * r;
    for (int j = 0; j < r; ++j) {
      const double* brow = pb + j * m;
      double acc = 0.0;
      for (int p = 0; p < m; ++p) acc += arow[p] * brow[p];
      orow[j] += acc;
    }
  }
}

namespace {

void check_finite(Op op, const Array2& v) {
  if (!v.all_finite()) {
    throw ShapeError(std::string(op_name(op)) + ": non-finite result for input shape " + v.shape_str());
  }
}

bool is_bias_broadcast(const Array2& a, const Array2& b) {
  return b.rows() == 1 && a.cols() == b.cols() && a.rows() > 1;
}

}  // namespace

NodeId Tape::push(Node n) {
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Tape::input(Array2 value) {
  Node n;
  n.op = Op::kInput;
  n.value = std::move(value);
  return push(std::move(n));
}

NodeId Tape::matmul(NodeId a, NodeId b) {
  const Array2& va = nodes_[a].value;
  const Array2& vb = nodes_[b].value;
  if (va.cols() != vb.rows()) {
    throw ShapeError("matmul: inner dimensions " + va.shape_str() + " vs " + vb.shape_str());
  }
  Node n;
  n.op = Op::kMatmul;
  n.a = a;
  n.b = b;
  n.value = Array2(va.rows(), vb.cols());
  matmul_accumulate(va, vb, n.value);
  check_finite(n.op, n.value);
  return push(std::move(n));
}

NodeId Tape::binary(Op op, NodeId a, NodeId b) {
  const Array2& va = nodes_[a].value;
  const Array2& vb = nodes_[b].value;
  Node n;
  n.op = op;
  n.a = a;
  n.b = b;
  if (op == Op::kAdd && is_bias_broadcast(va, vb)) {
    n.value = va;
    for (int r = 0; r < va.rows(); ++r)
      for (int c = 0; c < va.cols(); ++c) n.value.at(r, c) += vb.at(0, c);
  } else if (op == Op::kConcatCols) {
    if (va.rows() != vb.rows()) {
      throw ShapeError("concat_cols: row mismatch " + va.shape_str() + " vs " + vb.shape_str());
    }
    n.value = Array2(va.rows(), va.cols() + vb.cols());
    for (int r = 0; r < va.rows(); ++r) {
      for (int c = 0; c < va.cols(); ++c) n.value.at(r, c) = va.at(r, c);
      for (int c = 0; c < vb.cols(); ++c) n.value.at(r, va.cols() + c) = vb.at(r, c);
    }
  } else {
    check_same_shape(op_name(op), va, vb);
    n.value = va;
    auto& out = n.value.data();
    const auto& rhs = vb.data();
    switch (op) {
      case Op::kAdd:
        for (size_t i = 0; i < out.size(); ++i) out[i] += rhs[i];
        break;
      case Op::kSub:
        for (size_t i = 0; i < out.size(); ++i) out[i] -= rhs[i];
        break;
      case Op::kMulElem:
        for (size_t i = 0; i < out.size(); ++i) out[i] *= rhs[i];
        break;
      default:
        throw ContractError("binary: bad op");
    }
  }
  check_finite(n.op, n.value);
  return push(std::move(n));
}

NodeId Tape::unary(Op op, NodeId a) {
  const Array2& va = nodes_[a].value;
  Node n;
  n.op = op;
  n.a = a;
  switch (op) {
    case Op::kTanh:
    case Op::kSigmoid:
    case Op::kExp:
    case Op::kLog:
    case Op::kNeg:
    case Op::kSquare: {
      n.value = va;
      for (auto& x : n.value.data()) {
        switch (op) {
          case Op::kTanh: x = std::tanh(x); break;
          case Op::kSigmoid: x = 1.0 / (1.0 + std::exp(-x)); break;
          case Op::kExp: x = std::exp(x); break;
          case Op::kLog: x = std::log(x); break;
          case Op::kNeg: x = -x; break;
          case Op::kSquare: x = x * x; break;
          default: break;
        }
      }
      break;
    }
    case Op::kSum:
    case Op::kMean: {
      double acc = 0.0;
      for (double x : va.data()) acc += x;
      if (op == Op::kMean) {
        if (va.size() == 0) throw ShapeError("mean: empty input");
        acc /= va.size();
      }
      n.value = Array2{{acc}};
      break;
    }
    default:
      throw ContractError("unary: bad op");
  }
  check_finite(n.op, n.value);
  return push(std::move(n));
}

NodeId Tape::add(NodeId a, NodeId b) { return binary(Op::kAdd, a, b); }
NodeId Tape::sub(NodeId a, NodeId b) { return binary(Op::kSub, a, b); }
NodeId Tape::mul_elem(NodeId a, NodeId b) { return binary(Op::kMulElem, a, b); }
NodeId Tape::concat_cols(NodeId a, NodeId b) { return binary(Op::kConcatCols, a, b); }
NodeId Tape::tanh(NodeId a) { return unary(Op::kTanh, a); }
NodeId Tape::sigmoid(NodeId a) { return unary(Op::kSigmoid, a); }
NodeId Tape::exp(NodeId a) { return unary(Op::kExp, a); }
NodeId Tape::log(NodeId a) { return unary(Op::kLog, a); }
NodeId Tape::neg(NodeId a) { return unary(Op::kNeg, a); }
NodeId Tape::sum(NodeId a) { return unary(Op::kSum, a); }
NodeId Tape::mean(NodeId a) { return unary(Op::kMean, a); }

NodeId Tape::slice_cols(NodeId a, int begin, int end) {
  const Array2& va = nodes_[a].value;
  if (begin < 0 || end > va.cols() || begin >= end) {
    throw ShapeError("slice_cols: range [" + std::to_string(begin) + "," + std::to_string(end) +
                     ") of " + va.shape_str());
  }
  Node n;
  n.op = Op::kSliceCols;
  n.a = a;
  n.begin = begin;
  n.end = end;
  n.value = Array2(va.rows(), end - begin);
  for (int r = 0; r < va.rows(); ++r)
    for (int c = begin; c < end; ++c) n.value.at(r, c - begin) = va.at(r, c);
  return push(std::move(n));
}

NodeId Tape::scale(NodeId a, double k) {
  Node n;
  n.op = Op::kScale;
  n.a = a;
  n.scalar = k;
  n.value = nodes_[a].value;
  for (auto& x : n.value.data()) x *= k;
  check_finite(n.op, n.value);
  return push(std::move(n));
}

NodeId Tape::square(NodeId a) { return unary(Op::kSquare, a); }

Gradients Tape::backward(NodeId loss) const {
  const Array2& lv = nodes_[loss].value;
  if (lv.rows() != 1 || lv.cols() != 1) {
    throw ContractError("backward: loss must be 1x1, got " + lv.shape_str());
  }
  Gradients grads(nodes_.size());
  grads[loss] = Array2{{1.0}};

  auto ensure = [&](NodeId id) -> Array2& {
    Array2& g = grads[id];
    if (g.empty()) g = Array2(nodes_[id].value.rows(), nodes_[id].value.cols());
    return g;
  };

  for (NodeId id = loss; id >= 0; --id) {
    const Node& n = nodes_[id];
    const Array2& g = grads[id];
    if (g.empty()) continue;
    switch (n.op) {
      case Op::kInput:
        break;
      case Op::kMatmul: {
        matmul_a_bt_accumulate(g, nodes_[n.b].value, ensure(n.a));
        matmul_at_b_accumulate(nodes_[n.a].value, g, ensure(n.b));
        break;
      }
      case Op::kAdd: {
        Array2& ga = ensure(n.a);
        for (size_t i = 0; i < ga.data().size(); ++i) ga.data()[i] += g.data()[i];
        Array2& gb = ensure(n.b);
        if (nodes_[n.b].value.rows() == 1 && nodes_[n.a].value.rows() > 1) {
          for (int r = 0; r < g.rows(); ++r)
            for (int c = 0; c < g.cols(); ++c) gb.at(0, c) += g.at(r, c);
        } else {
          for (size_t i = 0; i < gb.data().size(); ++i) gb.data()[i] += g.data()[i];
        }
        break;
      }
      case Op::kSub: {
        Array2& ga = ensure(n.a);
        for (size_t i = 0; i < ga.data().size(); ++i) ga.data()[i] += g.data()[i];
        Array2& gb = ensure(n.b);
        for (size_t i = 0; i < gb.data().size(); ++i) gb.data()[i] -= g.data()[i];
        break;
      }
      case Op::kMulElem: {
        Array2& ga = ensure(n.a);
        const auto& vb = nodes_[n.b].value.data();
        for (size_t i = 0; i < ga.data().size(); ++i) ga.data()[i] += g.data()[i] * vb[i];
        Array2& gb = ensure(n.b);
        const auto& va = nodes_[n.a].value.data();
        for (size_t i = 0; i < gb.data().size(); ++i) gb.data()[i] += g.data()[i] * va[i];
        break;
      }
      case Op::kTanh: {
        Array2& ga = ensure(n.a);
        const auto& y = n.value.data();
        for (size_t i = 0; i < ga.data().size(); ++i) ga.data()[i] += g.data()[i] * (1.0 - y[i] * y[i]);
        break;
      }
      case Op::kSigmoid: {
        Array2& ga = ensure(n.a);
        const auto& y = n.value.data();
        for (size_t i = 0; i < ga.data().size(); ++i) ga.data()[i] += g.data()[i] * y[i] * (1.0 - y[i]);
        break;
      }
      case Op::kExp: {
        Array2& ga = ensure(n.a);
        const auto& y = n.value.data();
        for (size_t i = 0; i < ga.data().size(); ++i) ga.data()[i] += g.data()[i] * y[i];
        break;
      }
      case Op::kLog: {
        Array2& ga = ensure(n.a);
        const auto& x = nodes_[n.a].value.data();
        for (size_t i = 0; i < ga.data().size(); ++i) ga.data()[i] += g.data()[i] / x[i];
        break;
      }
      case Op::kNeg: {
        Array2& ga = ensure(n.a);
        for (size_t i = 0; i < ga.data().size(); ++i) ga.data()[i] -= g.data()[i];
        break;
      }
      case Op::kSum: {
        Array2& ga = ensure(n.a);
        const double gs = g.at(0, 0);
        for (auto& x : ga.data()) x += gs;
        break;
      }
      case Op::kMean: {
        Array2& ga = ensure(n.a);
        const double gs = g.at(0, 0) / nodes_[n.a].value.size();
        for (auto& x : ga.data()) x += gs;
        break;
      }
      case Op::kConcatCols: {
        Array2& ga = ensure(n.a);
        Array2& gb = ensure(n.b);
        const int ca = ga.cols();
        for (int r = 0; r < g.rows(); ++r) {
          for (int c = 0; c < ca; ++c) ga.at(r, c) += g.at(r, c);
          for (int c = 0; c < gb.cols(); ++c) gb.at(r, c) += g.at(r, ca + c);
        }
        break;
      }
      case Op::kSliceCols: {
        Array2& ga = ensure(n.a);
        for (int r = 0; r < g.rows(); ++r)
          for (int c = 0; c < g.cols(); ++c) ga.at(r, n.begin + c) += g.at(r, c);
        break;
      }
      case Op::kScale: {
        Array2& ga = ensure(n.a);
        for (size_t i = 0; i < ga.data().size(); ++i) ga.data()[i] += n.scalar * g.data()[i];
        break;
      }
      case Op::kSquare: {
        Array2& ga = ensure(n.a);
        const auto& x = nodes_[n.a].value.data();
        for (size_t i = 0; i < ga.data().size(); ++i) ga.data()[i] += 2.0 * g.data()[i] * x[i];
        break;
      }
    }
  }
  return grads;
}

}  // namespace lep::math
