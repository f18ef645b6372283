#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "satrank/autodiff.hpp"
#include "satrank/optim.hpp"
#include "satrank/rng.hpp"
#include "support/gradcheck.hpp"

using namespace satrank;
using satrank::testing::gradcheck;

TEST_CASE("xavier_init bounds and determinism") {
  // fan 2+4 gives bound sqrt(6/6) = 1
  Tensor t = xavier_init(2, 4, 7);
  CHECK(t.shape == std::vector<std::size_t>{2, 4});
  for (double v : t.data) {
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
  Tensor t2 = xavier_init(2, 4, 7);
  CHECK(t == t2);
  Tensor t3 = xavier_init(2, 4, 8);
  CHECK(t.data != t3.data);
}

TEST_CASE("xavier_init sample mean concentrates near zero") {
  Tensor t = xavier_init(100, 100, 3);
  double mean = 0.0;
  for (double v : t.data) mean += v;
  mean /= static_cast<double>(t.numel());
  // bound = sqrt(6/200) ~ 0.173; sd of the mean ~ bound/sqrt(3)/100 ~ 1e-3
  CHECK(std::abs(mean) < 0.02);
}

TEST_CASE("sigmoid and relu derivatives at fixed points") {
  Parameter x("x", Tensor::scalar(0.0));
  {
    Tape t;
    auto out = t.sigmoid(t.leaf(x));
    t.backward(out);
    CHECK(x.grad.item() == doctest::Approx(0.25).epsilon(1e-12));
  }
  Parameter a("a", Tensor::scalar(-1.0));
  Parameter b("b", Tensor::scalar(2.0));
  Parameter c("c", Tensor::scalar(0.0));
  {
    Tape t;
    t.backward(t.relu(t.leaf(a)));
    CHECK(a.grad.item() == 0.0);
  }
  {
    Tape t;
    t.backward(t.relu(t.leaf(b)));
    CHECK(b.grad.item() == 1.0);
  }
  {
    // subgradient at exactly 0 is pinned to 0
    Tape t;
    t.backward(t.relu(t.leaf(c)));
    CHECK(c.grad.item() == 0.0);
  }
}

TEST_CASE("gradient of mean(matmul) matches finite differences") {
  Parameter w("w", Tensor::matrix(2, 2, {0.3, -1.2, 0.8, 0.5}));
  Tensor x = Tensor::vector({1.0, 1.0});
  auto forward = [&](bool backprop) {
    Tape t;
    auto out = t.mean(t.matmul(t.leaf(w), t.constant(x)));
    if (backprop) t.backward(out);
    return t.scalar(out);
  };
  w.zero_grad();
  forward(true);
  auto res = gradcheck({&w}, [&] { return forward(false); });
  CHECK(res.max_rel_err < 1e-6);
}

TEST_CASE("every primitive passes a composed finite-difference check") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    Parameter w("w", Tensor::matrix(3, 4, [&] {
                  std::vector<double> d(12);
                  for (double& v : d) v = rng.uniform(-1.0, 1.0);
                  return d;
                }()));
    Parameter u("u", Tensor::vector({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                                     rng.uniform(-1, 1)}));
    Parameter b("b", Tensor::vector({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}),
                ParamKind::bias);
    Tensor k = Tensor::vector({rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0),
                               rng.uniform(0.2, 1.0)});
    auto forward = [&](bool backprop) {
      Tape t;
      auto wi = t.leaf(w), ui = t.leaf(u), bi = t.leaf(b);
      auto h = t.add(t.matmul(wi, ui), bi);               // [3]
      auto act = t.concat(t.relu(h), t.tanh(t.scale(h, 0.5)));
      auto gate = t.sigmoid(t.absdiff(act, t.constant(Tensor::full({6}, 0.1))));
      auto mixed = t.mul(act, gate);
      auto mat = t.matmul(t.constant(Tensor::matrix(2, 6, {1, 0, 1, 0, 1, 0,
                                                           0, 1, 0, 1, 0, 1})),
                          mixed);                          // [2]
      auto safe = t.clamp(t.sigmoid(mat), 1e-12, 1.0 - 1e-12);
      auto out = t.add(t.mean(t.log(safe)), t.sum(t.mul(ui, t.constant(k))));
      if (backprop) t.backward(out);
      return t.scalar(out);
    };
    w.zero_grad();
    u.zero_grad();
    b.zero_grad();
    forward(true);
    auto res = gradcheck({&w, &u, &b}, [&] { return forward(false); });
    INFO("worst entry ", res.worst);
    CHECK(res.max_rel_err < 1e-4);
  }
}

TEST_CASE("col_max routes gradient to the max row") {
  Parameter m("m", Tensor::matrix(3, 2, {1.0, 5.0, 4.0, 2.0, 3.0, 0.5}));
  Tape t;
  auto out = t.sum(t.col_max(t.leaf(m)));
  t.backward(out);
  CHECK(m.grad.at(1, 0) == 1.0);  // column 0 max at row 1
  CHECK(m.grad.at(0, 1) == 1.0);  // column 1 max at row 0
  double total = 0.0;
  for (double v : m.grad.data) total += v;
  CHECK(total == 2.0);
}

TEST_CASE("shape algebra and error messages") {
  Tape t;
  auto a = t.constant(Tensor::vector({1, 2}));
  auto b = t.constant(Tensor::vector({3, 4, 5}));
  CHECK(t.value(t.concat(a, b)).shape == std::vector<std::size_t>{5});
  auto m = t.constant(Tensor::zeros({2, 3}));
  auto n = t.constant(Tensor::zeros({3, 4}));
  CHECK(t.value(t.matmul(m, n)).shape == std::vector<std::size_t>{2, 4});
  CHECK_THROWS_WITH_AS(t.matmul(m, m), doctest::Contains("matmul"), ShapeError);
  CHECK_THROWS_WITH_AS(t.add(a, b), doctest::Contains("add"), ShapeError);
}

TEST_CASE("non-finite intermediates surface as numeric errors") {
  Tape t;
  auto z = t.constant(Tensor::scalar(0.0));
  CHECK_THROWS_AS(t.log(z), NumericError);
}

TEST_CASE("adam first step moves by alpha in the gradient sign direction") {
  Parameter p("p", Tensor::vector({1.0, -2.0, 3.0}));
  p.grad = Tensor::vector({0.5, -0.25, 1.5});
  AdamConfig cfg;
  cfg.alpha = 0.01;
  auto state = AdamState::init({&p}, cfg);
  Tensor before = p.value;
  adam_step({&p}, state);
  CHECK(state.t == 1);
  // With constant gradient, mhat = g and vhat = g^2, so the step is
  // -alpha * g / (|g| + eps) ~ -alpha * sign(g).
  CHECK(std::abs((p.value.at(0) - before.at(0)) + cfg.alpha) <= cfg.alpha * 1e-6);
  CHECK(std::abs((p.value.at(1) - before.at(1)) - cfg.alpha) <= cfg.alpha * 1e-6);
  CHECK(std::abs((p.value.at(2) - before.at(2)) + cfg.alpha) <= cfg.alpha * 1e-6);
  // Gradients zeroed by the step.
  for (double g : p.grad.data) CHECK(g == 0.0);
}

TEST_CASE("adam with zero gradient leaves values alone but advances t") {
  Parameter p("p", Tensor::vector({0.7, -0.1}));
  auto state = AdamState::init({&p});
  Tensor before = p.value;
  adam_step({&p}, state);
  adam_step({&p}, state);
  CHECK(state.t == 2);
  CHECK(p.value == before);
}

TEST_CASE("adam two-step trace matches the scalar recurrence") {
  // Hand-rolled recurrence for g=1, alpha=0.1, written independently of the
  // implementation.
  double b1 = 0.9, b2 = 0.999, eps = 1e-8, alpha = 0.1;
  double m = 0, v = 0, x = 0.5;
  for (int t = 1; t <= 2; ++t) {
    m = b1 * m + (1 - b1) * 1.0;
    v = b2 * v + (1 - b2) * 1.0;
    double mhat = m / (1 - std::pow(b1, t));
    double vhat = v / (1 - std::pow(b2, t));
    x -= alpha * mhat / (std::sqrt(vhat) + eps);
  }

  Parameter p("p", Tensor::scalar(0.5));
  AdamConfig cfg;
  cfg.alpha = 0.1;
  auto state = AdamState::init({&p}, cfg);
  for (int t = 0; t < 2; ++t) {
    p.grad = Tensor::scalar(1.0);
    adam_step({&p}, state);
  }
  CHECK(p.value.item() == doctest::Approx(x).epsilon(1e-12));
}

TEST_CASE("adam rejects shape drift") {
  Parameter p("p", Tensor::vector({1.0, 2.0}));
  auto state = AdamState::init({&p});
  p.value = Tensor::vector({1.0, 2.0, 3.0});
  p.grad = Tensor::zeros({3});
  CHECK_THROWS_AS(adam_step({&p}, state), ShapeError);
}

TEST_CASE("dropout_mask contract") {
  CHECK(dropout_mask({4}, 0.0, 1, Mode::train) == Tensor::ones({4}));
  CHECK(dropout_mask({4}, 0.9, 1, Mode::eval) == Tensor::ones({4}));

  Tensor m = dropout_mask({64}, 0.5, 42, Mode::train);
  for (double v : m.data) CHECK((v == 0.0 || v == 2.0));

  Tensor big = dropout_mask({10000}, 0.5, 9, Mode::train);
  double zeros = 0;
  for (double v : big.data)
    if (v == 0.0) zeros += 1;
  // binomial sd of the zero fraction is 0.005; 0.02 is 4 sigma
  CHECK(std::abs(zeros / 10000.0 - 0.5) < 0.02);

  CHECK(dropout_mask({100}, 0.5, 9, Mode::train) ==
        dropout_mask({100}, 0.5, 9, Mode::train));
}

TEST_CASE("l2_penalty value and gradient") {
  Parameter w("w", Tensor::matrix(1, 2, {1.0, -2.0}));
  Parameter b("b", Tensor::vector({3.0}), ParamKind::bias);
  CHECK(l2_penalty({&w, &b}, 0.0) == 0.0);
  w.zero_grad();
  b.zero_grad();
  double v = l2_penalty({&w, &b}, 0.5);
  CHECK(v == doctest::Approx(2.5).epsilon(1e-15));
  // biases excluded from both value and gradient
  CHECK(b.grad.item() == 0.0);
  CHECK(w.grad.at(0) == doctest::Approx(1.0));
  CHECK(w.grad.at(1) == doctest::Approx(-2.0));

  // gradient 2*lambda*W against finite differences
  w.zero_grad();
  l2_penalty({&w}, 0.3);
  auto res = gradcheck({&w}, [&] {
    double acc = 0.0;
    for (double x : w.value.data) acc += x * x;
    return 0.3 * acc;
  });
  CHECK(res.max_rel_err < 1e-7);
}

TEST_CASE("seed splitting is stable and order-free") {
  CHECK(split_seed(5, "dropout", 0) == split_seed(5, "dropout", 0));
  CHECK(split_seed(5, "dropout", 0) != split_seed(5, "dropout", 1));
  CHECK(split_seed(5, "dropout", 0) != split_seed(5, "sample", 0));
}

TEST_CASE("backward with explicit cotangent") {
  Parameter w("w", Tensor::matrix(2, 2, {1, 2, 3, 4}));
  Tape t;
  auto out = t.matmul(t.leaf(w), t.constant(Tensor::vector({1.0, -1.0})));
  t.backward_with_cotangent(out, Tensor::vector({2.0, 0.5}));
  CHECK(w.grad.at(0, 0) == 2.0);
  CHECK(w.grad.at(0, 1) == -2.0);
  CHECK(w.grad.at(1, 0) == 0.5);
  CHECK(w.grad.at(1, 1) == -0.5);
  CHECK_THROWS_AS(t.backward(out), ShapeError);
}
