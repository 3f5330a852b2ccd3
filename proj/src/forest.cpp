// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fakecheck/classifiers.hpp"

namespace fakecheck::classifiers {

int DecisionTree::predict(std::span<const double> x) const {
  int i = 0;
  while (nodes[static_cast<std::size_t>(i)].feature >= 0) {
    const auto& n = nodes[static_cast<std::size_t>(i)];
    i = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return nodes[static_cast<std::size_t>(i)].label;
}

std::size_t DecisionTree::depth() const {
  if (nodes.empty()) return 0;
  std::size_t deepest = 0;
  std::vector<std::pair<int, std::size_t>> stack = {{0, 0}};
  while (!stack.empty()) {
    auto [i, d] = stack.back();
    stack.pop_back();
    const auto& n = nodes[static_cast<std::size_t>(i)];
    if (n.feature < 0) {
      deepest = std::max(deepest, d);
    } else {
      stack.emplace_back(n.left, d + 1);
      stack.emplace_back(n.right, d + 1);
    }
  }
  return deepest;
}

namespace {

struct SplitChoice {
  int feature = -1;
  double threshold = 0.0;
  // Sum over children of (n0^2 + n1^2) / n; larger means lower weighted gini.
  double score = -1.0;
};

SplitChoice best_split_on(const Matrix& X, std::span<const int> y, const std::vector<std::size_t>& samples,
                          std::size_t feature, std::vector<std::pair<double, int>>& scratch) {
  scratch.clear();
  for (auto s : samples) scratch.emplace_back(X(s, feature), y[s]);
  std::sort(scratch.begin(), scratch.end());
  double total1 = 0.0;
  for (const auto& p : scratch) total1 += p.second;
  const double total = static_cast<double>(scratch.size());
  const double total0 = total - total1;

  SplitChoice best;
  double l0 = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i + 1 < scratch.size(); ++i) {
    (scratch[i].second == 1 ? l1 : l0) += 1.0;
    if (!(scratch[i].first < scratch[i + 1].first)) continue;
    const double nl = l0 + l1;
    const double nr = total - nl;
    const double r0 = total0 - l0, r1 = total1 - l1;
    const double score = (l0 * l0 + l1 * l1) / nl + (r0 * r0 + r1 * r1) / nr;
    if (score > best.score) {
      best.score = score;
      best.feature = static_cast<int>(feature);
      const double lo = scratch[i].first, hi = scratch[i + 1].first;
      double mid = lo + (hi - lo) / 2.0;
      if (!(mid >= lo && mid < hi)) mid = lo;
      best.threshold = mid;
    }
  }
  return best;
}

}  // namespace

DecisionTree train_tree(const Matrix& X, std::span<const int> y, std::span<const std::size_t> samples,
                        const ForestParams& params, Rng& rng) {
  const std::size_t d = X.cols();
  const std::size_t max_features =
      params.max_features == 0 ? std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(d)))))
                               : std::min(params.max_features, d);

  struct Frame {
    int node;
    std::vector<std::size_t> samples;
    std::size_t depth;
  };

  DecisionTree tree;
  tree.nodes.emplace_back();
  std::vector<Frame> stack;
  stack.push_back({0, std::vector<std::size_t>(samples.begin(), samples.end()), 0});
  std::vector<std::size_t> features(d);
  std::vector<std::pair<double, int>> scratch;

  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    std::size_t c1 = 0;
    for (auto s : f.samples) c1 += static_cast<std::size_t>(y[s] == 1);
    const std::size_t c0 = f.samples.size() - c1;
    auto& node = tree.nodes[static_cast<std::size_t>(f.node)];
    node.label = c1 > c0 ? 1 : 0;
    const bool pure = c0 == 0 || c1 == 0;
    if (pure || f.samples.size() < params.min_samples_split || (params.max_depth && f.depth >= params.max_depth)) {
      continue;
    }

    std::iota(features.begin(), features.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(features));
    SplitChoice best;
    // Like CART implementations that keep looking past max_features when
    // every sampled feature is constant on the node.
    for (std::size_t k = 0; k < d; ++k) {
      if (k >= max_features && best.feature >= 0) break;
      const auto cand = best_split_on(X, y, f.samples, features[k], scratch);
      if (cand.feature >= 0 && cand.score > best.score) best = cand;
    }
    if (best.feature < 0) continue;

    std::vector<std::size_t> left, right;
    for (auto s : f.samples) {
      (X(s, static_cast<std::size_t>(best.feature)) <= best.threshold ? left : right).push_back(s);
    }
    const int li = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    const int ri = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    auto& parent = tree.nodes[static_cast<std::size_t>(f.node)];
    parent.feature = best.feature;
    parent.threshold = best.threshold;
    parent.left = li;
    parent.right = ri;
    stack.push_back({ri, std::move(right), f.depth + 1});
    stack.push_back({li, std::move(left), f.depth + 1});
  }
  return tree;
}

}  // namespace fakecheck::classifiers
