// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#include <algorithm>
#include <cmath>

#include "fakecheck/classifiers.hpp"

namespace fakecheck::classifiers {

namespace {

void softmax2(std::array<double, 2>& z) {
  const double m = std::max(z[0], z[1]);
  const double e0 = std::exp(z[0] - m), e1 = std::exp(z[1] - m);
  const double s = e0 + e1;
  z = {e0 / s, e1 / s};
}

double log_prob(const std::vector<double>& logits, int y) {
  const double m = std::max(logits[0], logits[1]);
  return logits[static_cast<std::size_t>(y)] - m - std::log(std::exp(logits[0] - m) + std::exp(logits[1] - m));
}

// Pre-activations of every layer for one sample; the input is activations[0].
struct Trace {
  std::vector<std::vector<double>> activations;  // layer inputs, post-ReLU
  std::vector<std::vector<double>> pre;          // z per layer
};

Trace forward(const MlpModel& model, std::span<const double> x) {
  Trace t;
  t.activations.emplace_back(x.begin(), x.end());
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const auto& layer = model.layers[l];
    const auto& in = t.activations.back();
    std::vector<double> z(layer.outputs);
    for (std::size_t o = 0; o < layer.outputs; ++o) {
      double s = layer.bias[o];
      const double* w = &layer.weights[o * layer.inputs];
      for (std::size_t i = 0; i < layer.inputs; ++i) s += w[i] * in[i];
      z[o] = s;
    }
    t.pre.push_back(z);
    if (l + 1 < model.layers.size()) {
      for (auto& v : z) v = std::max(v, 0.0);
      t.activations.push_back(std::move(z));
    }
  }
  return t;
}

}  // namespace

std::array<double, 2> MlpModel::predict_proba(std::span<const double> x) const {
  const auto t = forward(*this, x);
  std::array<double, 2> z = {t.pre.back()[0], t.pre.back()[1]};
  softmax2(z);
  return z;
}

MlpModel init_mlp(std::size_t inputs, const std::vector<std::size_t>& hidden, Rng& rng) {
  MlpModel m;
  std::size_t in = inputs;
  std::vector<std::size_t> widths = hidden;
  widths.push_back(2);
  for (std::size_t out : widths) {
    DenseLayer layer(in, out);
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    for (auto& w : layer.weights) w = rng.uniform(-limit, limit);
    m.layers.push_back(std::move(layer));
    in = out;
  }
  return m;
}

MlpGradients mlp_gradient(const MlpModel& model, const Matrix& batch, std::span<const int> labels) {
  MlpGradients g;
  for (const auto& layer : model.layers) g.layers.emplace_back(layer.inputs, layer.outputs);
  const std::size_t n = batch.rows();
  if (n == 0) return g;
  const double inv_n = 1.0 / static_cast<double>(n);

  for (std::size_t r = 0; r < n; ++r) {
    const auto t = forward(model, batch.row(r));
    std::array<double, 2> p = {t.pre.back()[0], t.pre.back()[1]};
    softmax2(p);
    const int y = labels[r];
    g.loss -= log_prob(t.pre.back(), y) * inv_n;

    std::vector<double> delta = {p[0] - (y == 0 ? 1.0 : 0.0), p[1] - (y == 1 ? 1.0 : 0.0)};
    for (std::size_t l = model.layers.size(); l-- > 0;) {
      const auto& layer = model.layers[l];
      auto& gl = g.layers[l];
      const auto& in = t.activations[l];
      for (std::size_t o = 0; o < layer.outputs; ++o) {
        const double d = delta[o] * inv_n;
        gl.bias[o] += d;
        double* gw = &gl.weights[o * layer.inputs];
        for (std::size_t i = 0; i < layer.inputs; ++i) gw[i] += d * in[i];
      }
      if (l == 0) break;
      std::vector<double> back(layer.inputs, 0.0);
      for (std::size_t o = 0; o < layer.outputs; ++o) {
        const double* w = &layer.weights[o * layer.inputs];
        for (std::size_t i = 0; i < layer.inputs; ++i) back[i] += w[i] * delta[o];
      }
      const auto& z = t.pre[l - 1];
      for (std::size_t i = 0; i < back.size(); ++i) {
        if (!(z[i] > 0.0)) back[i] = 0.0;
      }
      delta = std::move(back);
    }
  }
  return g;
}

double mlp_loss(const MlpModel& model, const Matrix& batch, std::span<const int> labels) {
  double loss = 0.0;
  for (std::size_t r = 0; r < batch.rows(); ++r) {
    loss -= log_prob(forward(model, batch.row(r)).pre.back(), labels[r]);
  }
  return batch.rows() ? loss / static_cast<double>(batch.rows()) : 0.0;
}

}  // namespace fakecheck::classifiers
