#pragma once

#include <cstdint>
#include <vector>

#include "satrank/autodiff.hpp"
#include "satrank/tensor.hpp"

namespace satrank {

// Uniform Xavier/Glorot init: entries in [-b, b] with b = sqrt(6/(fan_in+fan_out)).
// Shape is [fan_in, fan_out]; bit-identical for a given seed.
Tensor xavier_init(std::size_t fan_in, std::size_t fan_out, std::uint64_t seed);

// Inverted dropout mask: eval mode is all ones; train mode zeroes entries
// with probability `rate` and scales survivors by 1/(1-rate).
Tensor dropout_mask(const std::vector<std::size_t>& shape, double rate, std::uint64_t seed,
                    Mode mode);

struct AdamConfig {
  double alpha = 1e-5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Per-parameter first/second moments plus the shared step counter.
struct AdamState {
  AdamConfig cfg;
  std::uint64_t t = 0;
  std::vector<Tensor> m;
  std::vector<Tensor> v;

  static AdamState init(const std::vector<Parameter*>& params, AdamConfig cfg = {});
};

// One bias-corrected Adam update over `params`; gradients are zeroed after
// the update. Throws ShapeError if the state no longer matches the params.
void adam_step(const std::vector<Parameter*>& params, AdamState& state);

// lambda * sum of squared entries over weight-kind parameters (biases are
// exempt). Accumulates the gradient 2*lambda*W into each weight's grad and
// returns the penalty value.
double l2_penalty(const std::vector<Parameter*>& params, double lambda);

}  // namespace satrank
