// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fakecheck Authors

// Reference implementations used only by tests. They are deliberately naive
// and share no code with the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

// Full (n+1)x(m+1) edit-distance table.
inline std::size_t levenshtein(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, sub});
    }
  }
  return d[a.size()][b.size()];
}

// Minimal UTF-8 encoder for test strings (valid scalar values only).
inline std::string utf8(const std::u32string& s) {
  std::string out;
  for (char32_t c : s) {
    if (c < 0x80) {
      out += static_cast<char>(c);
    } else if (c < 0x800) {
      out += static_cast<char>(0xC0 | (c >> 6));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
      out += static_cast<char>(0xE0 | (c >> 12));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (c >> 18));
      out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    }
  }
  return out;
}

// Random string of length <= max_len drawn from a small mixed-script
// alphabet (Latin, Devanagari, Bengali, one astral code point) so that
// collisions, and therefore non-trivial alignments, are frequent.
inline std::u32string random_mixed(std::mt19937_64& rng, std::size_t max_len) {
  static const std::u32string alphabet = U"abcABCकखगाকখা \U0001F600";
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::u32string s(len(rng), U' ');
  for (auto& c : s) c = alphabet[pick(rng)];
  return s;
}

// Central differences of f at x, one coordinate at a time.
inline std::vector<double> finite_difference(const std::function<double(const std::vector<double>&)>& f,
                                             std::vector<double> x, double h = 1e-5) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = x[i];
    x[i] = orig + h;
    const double up = f(x);
    x[i] = orig - h;
    const double down = f(x);
    x[i] = orig;
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

// ||a - b|| / max(||a|| + ||b||, tiny), the usual gradient-check ratio.
inline double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double denom = std::sqrt(na) + std::sqrt(nb);
  return denom < 1e-12 ? std::sqrt(diff) : std::sqrt(diff) / denom;
}

struct Point2 {
  double x, y;
  int label;
};

// Brute force over directions: a 2-D set is linearly separable iff some
// direction puts every label-1 projection strictly above every label-0
// projection. Candidate directions are the normals of all point pairs
// (perturbed both ways) plus a dense angular grid; returns the best margin
// found (> 0 means separable).
inline double separation_margin(const std::vector<Point2>& pts) {
  auto margin_for = [&](double wx, double wy) {
    const double norm = std::hypot(wx, wy);
    if (norm == 0) return -1e300;
    double lo1 = 1e300, hi0 = -1e300;
    for (const auto& p : pts) {
      const double s = (wx * p.x + wy * p.y) / norm;
      if (p.label == 1) lo1 = std::min(lo1, s);
      else hi0 = std::max(hi0, s);
    }
    return (lo1 - hi0) / 2.0;
  };
  double best = -1e300;
  const double pi = std::acos(-1.0);
  for (int k = 0; k < 3600; ++k) {
    const double a = 2 * pi * k / 3600.0;
    best = std::max(best, margin_for(std::cos(a), std::sin(a)));
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dx = pts[j].x - pts[i].x, dy = pts[j].y - pts[i].y;
      for (double e : {-1e-6, 1e-6}) {
        best = std::max(best, margin_for(-dy + e * dx, dx + e * dy));
        best = std::max(best, margin_for(dy + e * dx, -dx + e * dy));
      }
    }
  }
  return best;
}

// Two isotropic Gaussian blobs around (-c,-c) and (c,c).
inline std::vector<Point2> blobs(std::size_t n, double c, double sd, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sd);
  std::vector<Point2> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    const double m = label ? c : -c;
    pts.push_back({m + noise(rng), m + noise(rng), label});
  }
  return pts;
}

// Point-biserial correlation from its textbook formula
// (M1 - M0) / s * sqrt(p q), with population s.
inline double point_biserial(const std::vector<double>& x, const std::vector<int>& y) {
  double m1 = 0, m0 = 0, mean = 0;
  std::size_t n1 = 0, n0 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean += x[i];
    if (y[i]) {
      m1 += x[i];
      ++n1;
    } else {
      m0 += x[i];
      ++n0;
    }
  }
  const double n = static_cast<double>(x.size());
  mean /= n;
  m1 /= static_cast<double>(n1);
  m0 /= static_cast<double>(n0);
  double var = 0;
  for (double v : x) var += (v - mean) * (v - mean);
  const double s = std::sqrt(var / n);
  const double p = static_cast<double>(n1) / n;
  return (m1 - m0) / s * std::sqrt(p * (1 - p));
}

}  // namespace oracle
