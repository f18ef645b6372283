#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "satrank/tensor.hpp"

namespace satrank {

enum class ParamKind { weight, bias };

// A named, trainable tensor. grad always has the same shape as value and is
// zeroed by the optimizer step, so gradients accumulate across backward
// passes within one step.
struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;
  ParamKind kind = ParamKind::weight;

  Parameter() = default;
  Parameter(std::string n, Tensor v, ParamKind k = ParamKind::weight)
      : name(std::move(n)), value(std::move(v)), kind(k) {
    grad = Tensor::zeros(value.shape);
  }
  void zero_grad() { std::fill(grad.data.begin(), grad.data.end(), 0.0); }
};

// Reverse-mode tape over a fixed primitive set. Build an expression with the
// op methods, then call backward() on a scalar node (or pass an explicit
// cotangent); parameter gradients accumulate into Parameter::grad.
//
// Every primitive validates operand shapes and checks its result for
// non-finite values, so a NaN/Inf anywhere in a forward pass surfaces as a
// NumericError naming the offending primitive.
class Tape {
 public:
  using Id = std::size_t;

  // Leaf bound to an external parameter; repeated calls for the same
  // parameter return the same node.
  Id leaf(Parameter& p);
  Id constant(Tensor t);

  // [m,k]x[k,n] -> [m,n]; [k]x[k,n] -> [n]; [m,k]x[k] -> [m].
  Id matmul(Id a, Id b);
  Id add(Id a, Id b);            // same shape
  Id add_rows(Id m, Id v);       // [r,c] + [c], v added to every row
  Id concat(Id a, Id b);         // rank-1 operands
  Id absdiff(Id a, Id b);        // elementwise |a - b|
  Id relu(Id a);
  Id sigmoid(Id a);
  Id tanh(Id a);
  Id mul(Id a, Id b);            // elementwise
  Id sum(Id a);                  // -> [1]
  Id mean(Id a);                 // -> [1]
  Id log(Id a);
  Id scale(Id a, double c);
  Id col_max(Id a);              // [r,c] -> [c], max over rows
  Id clamp(Id a, double lo, double hi);

  Id sub(Id a, Id b) { return add(a, scale(b, -1.0)); }
  Id dot(Id a, Id b) { return sum(mul(a, b)); }

  const Tensor& value(Id id) const { return nodes_[id].val; }
  double scalar(Id id) const { return nodes_[id].val.item(); }

  // Reverse sweep from a scalar output, seeding with 1.0 (or `seed`).
  void backward(Id out, double seed = 1.0);
  // Reverse sweep with an explicit cotangent for non-scalar outputs.
  void backward_with_cotangent(Id out, const Tensor& cotangent);

  std::size_t size() const { return nodes_.size(); }

 private:
  enum class Op : std::uint8_t {
    leaf, constant, matmul, add, add_rows, concat, absdiff, relu, sigmoid,
    tanh, mul, sum, mean, log, scale, col_max, clamp
  };

  struct Node {
    Op op;
    Id a = 0, b = 0;
    double c0 = 0.0, c1 = 0.0;
    Tensor val;
    Parameter* param = nullptr;
    std::vector<std::uint32_t> arg;  // argmax rows for col_max
  };

  Id push(Node n, const char* op_name);
  static const char* op_name(Op op);

  std::vector<Node> nodes_;
  std::unordered_map<Parameter*, Id> param_nodes_;
};

}  // namespace satrank
