#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "satrank/error.hpp"

namespace satrank {

enum class Mode { train, eval };

// Dense row-major tensor of doubles. Everything in this codebase is rank 1
// or rank 2; scalars are represented as shape [1].
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  Tensor() = default;
  Tensor(std::vector<std::size_t> s, std::vector<double> d);

  static Tensor zeros(std::vector<std::size_t> s);
  static Tensor full(std::vector<std::size_t> s, double v);
  static Tensor ones(std::vector<std::size_t> s) { return full(std::move(s), 1.0); }
  static Tensor scalar(double v) { return Tensor({1}, {v}); }
  static Tensor vector(std::vector<double> d);
  static Tensor matrix(std::size_t rows, std::size_t cols, std::vector<double> d);

  std::size_t numel() const { return data.size(); }
  std::size_t rank() const { return shape.size(); }
  std::size_t rows() const;
  std::size_t cols() const;

  double& at(std::size_t i) { return data[i]; }
  double at(std::size_t i) const { return data[i]; }
  double& at(std::size_t r, std::size_t c) { return data[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols() + c]; }

  bool same_shape(const Tensor& o) const { return shape == o.shape; }
  bool all_finite() const;
  // Value of a single-element tensor.
  double item() const;

  bool operator==(const Tensor& o) const { return shape == o.shape && data == o.data; }
};

// "[2,3]" style rendering for error messages.
std::string shape_str(const std::vector<std::size_t>& shape);

}  // namespace satrank
