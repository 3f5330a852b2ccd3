// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#include "fakecheck/platt.hpp"

#include <cmath>
#include <vector>

#include "fakecheck/error.hpp"

namespace fakecheck {

double PlattScaling::probability(double margin) const {
  const double z = a * margin + b;
  // Two branches keep exp() from overflowing.
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

PlattScaling PlattScaling::fit(std::span<const double> margins, std::span<const int> labels) {
  if (margins.size() != labels.size() || margins.empty()) {
    throw ValidationError("Platt fit needs one label per margin");
  }
  const std::size_t n = margins.size();
  double prior1 = 0.0, prior0 = 0.0;
  for (int y : labels) (y == 1 ? prior1 : prior0) += 1.0;

  constexpr int kMaxIter = 100;
  constexpr double kMinStep = 1e-10;
  constexpr double kSigma = 1e-12;
  constexpr double kEps = 1e-5;

  const double hi = (prior1 + 1.0) / (prior1 + 2.0);
  const double lo = 1.0 / (prior0 + 2.0);
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = labels[i] == 1 ? hi : lo;

  double A = 0.0;
  double B = std::log((prior0 + 1.0) / (prior1 + 1.0));

  auto objective = [&](double a_, double b_) {
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double fApB = margins[i] * a_ + b_;
      if (fApB >= 0) {
        f += t[i] * fApB + std::log1p(std::exp(-fApB));
      } else {
        f += (t[i] - 1.0) * fApB + std::log1p(std::exp(fApB));
      }
    }
    return f;
  };

  double fval = objective(A, B);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    double h11 = kSigma, h22 = kSigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double fApB = margins[i] * A + B;
      double p, q;
      if (fApB >= 0) {
        p = std::exp(-fApB) / (1.0 + std::exp(-fApB));
        q = 1.0 / (1.0 + std::exp(-fApB));
      } else {
        p = 1.0 / (1.0 + std::exp(fApB));
        q = std::exp(fApB) / (1.0 + std::exp(fApB));
      }
      const double d2 = p * q;
      h11 += margins[i] * margins[i] * d2;
      h22 += d2;
      h21 += margins[i] * d2;
      const double d1 = t[i] - p;
      g1 += margins[i] * d1;
      g2 += d1;
    }
    if (std::abs(g1) < kEps && std::abs(g2) < kEps) break;

    const double det = h11 * h22 - h21 * h21;
    const double dA = -(h22 * g1 - h21 * g2) / det;
    const double dB = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * dA + g2 * dB;

    double step = 1.0;
    while (step >= kMinStep) {
      const double newA = A + step * dA;
      const double newB = B + step * dB;
      const double newf = objective(newA, newB);
      if (newf < fval + 1e-4 * step * gd) {
        A = newA;
        B = newB;
        fval = newf;
        break;
      }
      step /= 2.0;
    }
    if (step < kMinStep) break;
  }
  return {A, B};
}

}  // namespace fakecheck
