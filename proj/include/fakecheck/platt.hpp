// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#pragma once

#include <span>

namespace fakecheck {

// Sigmoid calibration of a decision value f: P(positive | f) = 1 / (1 + exp(a*f + b)).
struct PlattScaling {
  double a = 0.0;
  double b = 0.0;

  double probability(double margin) const;

  // Newton's method with backtracking on the regularized targets of
  // Lin, Lin & Weng (2007). `labels` are 0/1.
  static PlattScaling fit(std::span<const double> margins, std::span<const int> labels);
};

}  // namespace fakecheck
