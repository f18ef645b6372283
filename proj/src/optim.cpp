#include "satrank/optim.hpp"

#include <cmath>

#include "satrank/rng.hpp"

namespace satrank {

Tensor xavier_init(std::size_t fan_in, std::size_t fan_out, std::uint64_t seed) {
  if (fan_in < 1 || fan_out < 1) throw ShapeError("xavier_init: fan_in and fan_out must be >= 1");
  double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  Rng rng(seed);
  Tensor t = Tensor::zeros({fan_in, fan_out});
  for (double& v : t.data) v = rng.uniform(-bound, bound);
  return t;
}

Tensor dropout_mask(const std::vector<std::size_t>& shape, double rate, std::uint64_t seed,
                    Mode mode) {
  if (rate < 0.0 || rate >= 1.0) throw UsageError("dropout rate must be in [0,1)");
  if (mode == Mode::eval || rate == 0.0) return Tensor::ones(shape);
  Rng rng(seed);
  Tensor t = Tensor::zeros(shape);
  double keep_scale = 1.0 / (1.0 - rate);
  for (double& v : t.data) v = rng.uniform() < rate ? 0.0 : keep_scale;
  return t;
}

AdamState AdamState::init(const std::vector<Parameter*>& params, AdamConfig cfg) {
  AdamState s;
  s.cfg = cfg;
  s.m.reserve(params.size());
  s.v.reserve(params.size());
  for (const Parameter* p : params) {
    s.m.push_back(Tensor::zeros(p->value.shape));
    s.v.push_back(Tensor::zeros(p->value.shape));
  }
  return s;
}

void adam_step(const std::vector<Parameter*>& params, AdamState& state) {
  if (params.size() != state.m.size()) {
    throw ShapeError("adam_step: state tracks " + std::to_string(state.m.size()) +
                     " parameters, got " + std::to_string(params.size()));
  }
  state.t += 1;
  double b1t = 1.0 - std::pow(state.cfg.beta1, static_cast<double>(state.t));
  double b2t = 1.0 - std::pow(state.cfg.beta2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    Parameter& p = *params[i];
    if (!p.value.same_shape(state.m[i])) {
      throw ShapeError("adam_step: parameter '" + p.name + "' has shape " +
                       shape_str(p.value.shape) + " but state expects " +
                       shape_str(state.m[i].shape));
    }
    for (std::size_t j = 0; j < p.value.numel(); ++j) {
      double g = p.grad.data[j];
      double& m = state.m[i].data[j];
      double& v = state.v[i].data[j];
      m = state.cfg.beta1 * m + (1.0 - state.cfg.beta1) * g;
      v = state.cfg.beta2 * v + (1.0 - state.cfg.beta2) * g * g;
      double mhat = m / b1t;
      double vhat = v / b2t;
      p.value.data[j] -= state.cfg.alpha * mhat / (std::sqrt(vhat) + state.cfg.epsilon);
    }
    p.zero_grad();
  }
}

double l2_penalty(const std::vector<Parameter*>& params, double lambda) {
  double acc = 0.0;
  for (Parameter* p : params) {
    if (p->kind != ParamKind::weight) continue;
    for (std::size_t j = 0; j < p->value.numel(); ++j) {
      double w = p->value.data[j];
      acc += w * w;
      p->grad.data[j] += 2.0 * lambda * w;
    }
  }
  return lambda * acc;
}

}  // namespace satrank
