#include "satrank/autodiff.hpp"

#include <algorithm>
#include <cmath>

namespace satrank {

namespace {

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (!a.same_shape(b)) {
    throw ShapeError(std::string(op) + ": shape mismatch " + shape_str(a.shape) +
                     " vs " + shape_str(b.shape));
  }
}

}  // namespace

const char* Tape::op_name(Op op) {
  switch (op) {
    case Op::leaf: return "leaf";
    case Op::constant: return "constant";
    case Op::matmul: return "matmul";
    case Op::add: return "add";
    case Op::add_rows: return "add_rows";
    case Op::concat: return "concat";
    case Op::absdiff: return "absdiff";
    case Op::relu: return "relu";
    case Op::sigmoid: return "sigmoid";
    case Op::tanh: return "tanh";
    case Op::mul: return "mul";
    case Op::sum: return "sum";
    case Op::mean: return "mean";
    case Op::log: return "log";
    case Op::scale: return "scale";
    case Op::col_max: return "col_max";
    case Op::clamp: return "clamp";
  }
  return "?";
}

Tape::Id Tape::push(Node n, const char* name) {
  if (!n.val.all_finite()) {
    throw NumericError(std::string("non-finite result in ") + name);
  }
  nodes_.push_back(std::move(n));
  return nodes_.size() - 1;
}

Tape::Id Tape::leaf(Parameter& p) {
  auto it = param_nodes_.find(&p);
  if (it != param_nodes_.end()) return it->second;
  Node n;
  n.op = Op::leaf;
  n.val = p.value;
  n.param = &p;
  Id id = push(std::move(n), "leaf");
  param_nodes_[&p] = id;
  return id;
}

Tape::Id Tape::constant(Tensor t) {
  Node n;
  n.op = Op::constant;
  n.val = std::move(t);
  return push(std::move(n), "constant");
}

Tape::Id Tape::matmul(Id a, Id b) {
  const Tensor& A = nodes_[a].val;
  const Tensor& B = nodes_[b].val;
  std::size_t m, k, n2;
  bool a_vec = A.rank() == 1, b_vec = B.rank() == 1;
  if (A.rank() > 2 || B.rank() > 2 || (a_vec && b_vec)) {
    throw ShapeError("matmul: cannot multiply " + shape_str(A.shape) + " by " + shape_str(B.shape));
  }
  m = a_vec ? 1 : A.shape[0];
  k = a_vec ? A.shape[0] : A.shape[1];
  n2 = b_vec ? 1 : B.shape[1];
  std::size_t bk = b_vec ? B.shape[0] : B.shape[0];
  if (k != bk) {
    throw ShapeError("matmul: cannot multiply " + shape_str(A.shape) + " by " + shape_str(B.shape));
  }
  std::vector<std::size_t> out_shape;
  if (a_vec) out_shape = {n2};
  else if (b_vec) out_shape = {m};
  else out_shape = {m, n2};

  Node out;
  out.op = Op::matmul;
  out.a = a;
  out.b = b;
  out.val = Tensor::zeros(out_shape);
  const double* pa = A.data.data();
  const double* pb = B.data.data();
  double* pc = out.val.data.data();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t kk = 0; kk < k; ++kk) {
      double av = pa[i * k + kk];
      if (av == 0.0) continue;
      const double* brow = pb + kk * n2;
      double* crow = pc + i * n2;
      for (std::size_t j = 0; j < n2; ++j) crow[j] += av * brow[j];
    }
  }
  return push(std::move(out), "matmul");
}

Tape::Id Tape::add(Id a, Id b) {
  const Tensor& A = nodes_[a].val;
  const Tensor& B = nodes_[b].val;
  require_same_shape(A, B, "add");
  Node out;
  out.op = Op::add;
  out.a = a;
  out.b = b;
  out.val = A;
  for (std::size_t i = 0; i < B.numel(); ++i) out.val.data[i] += B.data[i];
  return push(std::move(out), "add");
}

Tape::Id Tape::add_rows(Id m, Id v) {
  const Tensor& M = nodes_[m].val;
  const Tensor& V = nodes_[v].val;
  if (M.rank() != 2 || V.rank() != 1 || M.cols() != V.shape[0]) {
    throw ShapeError("add_rows: cannot broadcast " + shape_str(V.shape) + " over rows of " +
                     shape_str(M.shape));
  }
  Node out;
  out.op = Op::add_rows;
  out.a = m;
  out.b = v;
  out.val = M;
  for (std::size_t r = 0; r < M.rows(); ++r)
    for (std::size_t c = 0; c < M.cols(); ++c) out.val.at(r, c) += V.at(c);
  return push(std::move(out), "add_rows");
}

Tape::Id Tape::concat(Id a, Id b) {
  const Tensor& A = nodes_[a].val;
  const Tensor& B = nodes_[b].val;
  if (A.rank() != 1 || B.rank() != 1) {
    throw ShapeError("concat: operands must be rank-1, got " + shape_str(A.shape) + " and " +
                     shape_str(B.shape));
  }
  Node out;
  out.op = Op::concat;
  out.a = a;
  out.b = b;
  std::vector<double> d = A.data;
  d.insert(d.end(), B.data.begin(), B.data.end());
  out.val = Tensor::vector(std::move(d));
  return push(std::move(out), "concat");
}

Tape::Id Tape::absdiff(Id a, Id b) {
  const Tensor& A = nodes_[a].val;
  const Tensor& B = nodes_[b].val;
  require_same_shape(A, B, "absdiff");
  Node out;
  out.op = Op::absdiff;
  out.a = a;
  out.b = b;
  out.val = A;
  for (std::size_t i = 0; i < A.numel(); ++i) out.val.data[i] = std::abs(A.data[i] - B.data[i]);
  return push(std::move(out), "absdiff");
}

Tape::Id Tape::relu(Id a) {
  Node out;
  out.op = Op::relu;
  out.a = a;
  out.val = nodes_[a].val;
  for (double& v : out.val.data) v = v > 0.0 ? v : 0.0;
  return push(std::move(out), "relu");
}

Tape::Id Tape::sigmoid(Id a) {
  Node out;
  out.op = Op::sigmoid;
  out.a = a;
  out.val = nodes_[a].val;
  for (double& v : out.val.data) {
    v = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
  }
  return push(std::move(out), "sigmoid");
}

Tape::Id Tape::tanh(Id a) {
  Node out;
  out.op = Op::tanh;
  out.a = a;
  out.val = nodes_[a].val;
  for (double& v : out.val.data) v = std::tanh(v);
  return push(std::move(out), "tanh");
}

Tape::Id Tape::mul(Id a, Id b) {
  const Tensor& A = nodes_[a].val;
  const Tensor& B = nodes_[b].val;
  require_same_shape(A, B, "mul");
  Node out;
  out.op = Op::mul;
  out.a = a;
  out.b = b;
  out.val = A;
  for (std::size_t i = 0; i < A.numel(); ++i) out.val.data[i] *= B.data[i];
  return push(std::move(out), "mul");
}

Tape::Id Tape::sum(Id a) {
  Node out;
  out.op = Op::sum;
  out.a = a;
  double s = 0.0;
  for (double v : nodes_[a].val.data) s += v;
  out.val = Tensor::scalar(s);
  return push(std::move(out), "sum");
}

Tape::Id Tape::mean(Id a) {
  Node out;
  out.op = Op::mean;
  out.a = a;
  double s = 0.0;
  for (double v : nodes_[a].val.data) s += v;
  out.val = Tensor::scalar(s / static_cast<double>(nodes_[a].val.numel()));
  return push(std::move(out), "mean");
}

Tape::Id Tape::log(Id a) {
  Node out;
  out.op = Op::log;
  out.a = a;
  out.val = nodes_[a].val;
  for (double& v : out.val.data) v = std::log(v);
  return push(std::move(out), "log");
}

Tape::Id Tape::scale(Id a, double c) {
  Node out;
  out.op = Op::scale;
  out.a = a;
  out.c0 = c;
  out.val = nodes_[a].val;
  for (double& v : out.val.data) v *= c;
  return push(std::move(out), "scale");
}

Tape::Id Tape::col_max(Id a) {
  const Tensor& A = nodes_[a].val;
  if (A.rank() != 2) throw ShapeError("col_max: operand must be rank-2, got " + shape_str(A.shape));
  Node out;
  out.op = Op::col_max;
  out.a = a;
  out.val = Tensor::zeros({A.cols()});
  out.arg.assign(A.cols(), 0);
  for (std::size_t c = 0; c < A.cols(); ++c) {
    double best = A.at(0, c);
    std::uint32_t best_r = 0;
    for (std::size_t r = 1; r < A.rows(); ++r) {
      if (A.at(r, c) > best) {  // first max wins, deterministic subgradient
        best = A.at(r, c);
        best_r = static_cast<std::uint32_t>(r);
      }
    }
    out.val.at(c) = best;
    out.arg[c] = best_r;
  }
  return push(std::move(out), "col_max");
}

Tape::Id Tape::clamp(Id a, double lo, double hi) {
  Node out;
  out.op = Op::clamp;
  out.a = a;
  out.c0 = lo;
  out.c1 = hi;
  out.val = nodes_[a].val;
  for (double& v : out.val.data) v = std::min(hi, std::max(lo, v));
  return push(std::move(out), "clamp");
}

void Tape::backward(Id out, double seed) {
  if (nodes_[out].val.numel() != 1) {
    throw ShapeError("backward: output has shape " + shape_str(nodes_[out].val.shape) +
                     "; pass a cotangent for non-scalar outputs");
  }
  backward_with_cotangent(out, Tensor::scalar(seed));
}

void Tape::backward_with_cotangent(Id out, const Tensor& cotangent) {
  require_same_shape(nodes_[out].val, cotangent, "backward");
  std::vector<Tensor> grads(nodes_.size());
  grads[out] = cotangent;

  auto grad_of = [&](Id id) -> Tensor& {
    if (grads[id].numel() == 0) grads[id] = Tensor::zeros(nodes_[id].val.shape);
    return grads[id];
  };

  for (Id id = out + 1; id-- > 0;) {
    if (grads[id].numel() == 0) continue;
    Node& n = nodes_[id];
    const Tensor& g = grads[id];
    switch (n.op) {
      case Op::constant:
        break;
      case Op::leaf: {
        Tensor& pg = n.param->grad;
        for (std::size_t i = 0; i < g.numel(); ++i) pg.data[i] += g.data[i];
        break;
      }
      case Op::matmul: {
        const Tensor& A = nodes_[n.a].val;
        const Tensor& B = nodes_[n.b].val;
        bool a_vec = A.rank() == 1, b_vec = B.rank() == 1;
        std::size_t m = a_vec ? 1 : A.shape[0];
        std::size_t k = a_vec ? A.shape[0] : A.shape[1];
        std::size_t n2 = b_vec ? 1 : B.shape[1];
        // dA += g . B^T ; dB += A^T . g
        if (nodes_[n.a].op != Op::constant) {
          Tensor& da = grad_of(n.a);
          for (std::size_t i = 0; i < m; ++i)
            for (std::size_t kk = 0; kk < k; ++kk) {
              double acc = 0.0;
              for (std::size_t j = 0; j < n2; ++j)
                acc += g.data[i * n2 + j] * B.data[kk * n2 + j];
              da.data[i * k + kk] += acc;
            }
        }
        if (nodes_[n.b].op != Op::constant) {
          Tensor& db = grad_of(n.b);
          for (std::size_t kk = 0; kk < k; ++kk)
            for (std::size_t j = 0; j < n2; ++j) {
              double acc = 0.0;
              for (std::size_t i = 0; i < m; ++i)
                acc += A.data[i * k + kk] * g.data[i * n2 + j];
              db.data[kk * n2 + j] += acc;
            }
        }
        break;
      }
      case Op::add: {
        if (nodes_[n.a].op != Op::constant) {
          Tensor& da = grad_of(n.a);
          for (std::size_t i = 0; i < g.numel(); ++i) da.data[i] += g.data[i];
        }
        if (nodes_[n.b].op != Op::constant) {
          Tensor& db = grad_of(n.b);
          for (std::size_t i = 0; i < g.numel(); ++i) db.data[i] += g.data[i];
        }
        break;
      }
      case Op::add_rows: {
        std::size_t rows = nodes_[n.a].val.rows(), cols = nodes_[n.a].val.cols();
        if (nodes_[n.a].op != Op::constant) {
          Tensor& da = grad_of(n.a);
          for (std::size_t i = 0; i < g.numel(); ++i) da.data[i] += g.data[i];
        }
        if (nodes_[n.b].op != Op::constant) {
          Tensor& db = grad_of(n.b);
          for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) db.data[c] += g.data[r * cols + c];
        }
        break;
      }
      case Op::concat: {
        std::size_t na = nodes_[n.a].val.numel();
        if (nodes_[n.a].op != Op::constant) {
          Tensor& da = grad_of(n.a);
          for (std::size_t i = 0; i < na; ++i) da.data[i] += g.data[i];
        }
        if (nodes_[n.b].op != Op::constant) {
          Tensor& db = grad_of(n.b);
          for (std::size_t i = 0; i < db.numel(); ++i) db.data[i] += g.data[na + i];
        }
        break;
      }
      case Op::absdiff: {
        const Tensor& A = nodes_[n.a].val;
        const Tensor& B = nodes_[n.b].val;
        for (std::size_t i = 0; i < g.numel(); ++i) {
          double d = A.data[i] - B.data[i];
          double s = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
          if (nodes_[n.a].op != Op::constant) grad_of(n.a).data[i] += g.data[i] * s;
          if (nodes_[n.b].op != Op::constant) grad_of(n.b).data[i] -= g.data[i] * s;
        }
        break;
      }
      case Op::relu: {
        if (nodes_[n.a].op == Op::constant) break;
        Tensor& da = grad_of(n.a);
        const Tensor& A = nodes_[n.a].val;
        // derivative at exactly 0 is 0
        for (std::size_t i = 0; i < g.numel(); ++i)
          if (A.data[i] > 0.0) da.data[i] += g.data[i];
        break;
      }
      case Op::sigmoid: {
        if (nodes_[n.a].op == Op::constant) break;
        Tensor& da = grad_of(n.a);
        for (std::size_t i = 0; i < g.numel(); ++i) {
          double s = n.val.data[i];
          da.data[i] += g.data[i] * s * (1.0 - s);
        }
        break;
      }
      case Op::tanh: {
        if (nodes_[n.a].op == Op::constant) break;
        Tensor& da = grad_of(n.a);
        for (std::size_t i = 0; i < g.numel(); ++i) {
          double t = n.val.data[i];
          da.data[i] += g.data[i] * (1.0 - t * t);
        }
        break;
      }
      case Op::mul: {
        const Tensor& A = nodes_[n.a].val;
        const Tensor& B = nodes_[n.b].val;
        if (nodes_[n.a].op != Op::constant) {
          Tensor& da = grad_of(n.a);
          for (std::size_t i = 0; i < g.numel(); ++i) da.data[i] += g.data[i] * B.data[i];
        }
        if (nodes_[n.b].op != Op::constant) {
          Tensor& db = grad_of(n.b);
          for (std::size_t i = 0; i < g.numel(); ++i) db.data[i] += g.data[i] * A.data[i];
        }
        break;
      }
      case Op::sum: {
        if (nodes_[n.a].op == Op::constant) break;
        Tensor& da = grad_of(n.a);
        double gv = g.data[0];
        for (double& v : da.data) v += gv;
        break;
      }
      case Op::mean: {
        if (nodes_[n.a].op == Op::constant) break;
        Tensor& da = grad_of(n.a);
        double gv = g.data[0] / static_cast<double>(da.numel());
        for (double& v : da.data) v += gv;
        break;
      }
      case Op::log: {
        if (nodes_[n.a].op == Op::constant) break;
        Tensor& da = grad_of(n.a);
        const Tensor& A = nodes_[n.a].val;
        for (std::size_t i = 0; i < g.numel(); ++i) da.data[i] += g.data[i] / A.data[i];
        break;
      }
      case Op::scale: {
        if (nodes_[n.a].op == Op::constant) break;
        Tensor& da = grad_of(n.a);
        for (std::size_t i = 0; i < g.numel(); ++i) da.data[i] += g.data[i] * n.c0;
        break;
      }
      case Op::col_max: {
        if (nodes_[n.a].op == Op::constant) break;
        Tensor& da = grad_of(n.a);
        std::size_t cols = nodes_[n.a].val.cols();
        for (std::size_t c = 0; c < cols; ++c) da.data[n.arg[c] * cols + c] += g.data[c];
        break;
      }
      case Op::clamp: {
        if (nodes_[n.a].op == Op::constant) break;
        Tensor& da = grad_of(n.a);
        const Tensor& A = nodes_[n.a].val;
        for (std::size_t i = 0; i < g.numel(); ++i)
          if (A.data[i] > n.c0 && A.data[i] < n.c1) da.data[i] += g.data[i];
        break;
      }
    }
  }
}

}  // namespace satrank
