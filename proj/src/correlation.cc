// Copyright 2026 The QAEval Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qaeval/correlation.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>

#include "qaeval/errors.h"

namespace qaeval {
namespace {

void CheckInputs(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw PreconditionError("correlation inputs differ in length (" +
                            std::to_string(x.size()) + " vs " +
                            std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) {
    throw PreconditionError("correlation needs at least two points");
  }
}

double Clamp(double r) { return std::clamp(r, -1.0, 1.0); }

// Number of pairs tied within runs of equal keys in a sorted sequence.
template <typename Equal>
int64_t TiedPairs(std::size_t n, Equal equal) {
  int64_t ties = 0;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n && equal(i - 1, i)) {
      ++run;
    } else {
      ties += static_cast<int64_t>(run) * static_cast<int64_t>(run - 1) / 2;
      run = 1;
    }
  }
  return ties;
}

// Sorts `v` ascending and returns the number of strict inversions.
int64_t MergeSortInversions(std::vector<double>& v, std::vector<double>& buf,
                            std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  int64_t swaps = MergeSortInversions(v, buf, lo, mid) +
                  MergeSortInversions(v, buf, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<int64_t>(mid - i);
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
  return swaps;
}

}  // namespace

std::string_view CoefficientName(Coefficient c) {
  switch (c) {
    case Coefficient::kPearson:
      return "pearson";
    case Coefficient::kSpearman:
      return "spearman";
    case Coefficient::kKendall:
      return "kendall";
  }
  return "";
}

Coefficient ParseCoefficient(std::string_view name) {
  if (name == "pearson" || name == "r") return Coefficient::kPearson;
  if (name == "spearman" || name == "rho") return Coefficient::kSpearman;
  if (name == "kendall" || name == "tau") return Coefficient::kKendall;
  throw PreconditionError("unknown correlation coefficient \"" +
                          std::string(name) +
                          "\" (expected pearson, spearman or kendall)");
}

double Pearson(std::span<const double> x, std::span<const double> y) {
  CheckInputs(x, y);
  const double n = static_cast<double>(x.size());
  const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw DegenerateInputError("correlation input has zero variance");
  }
  return Clamp(sxy / std::sqrt(sxx * syy));
}

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 (0-based) share rank mean((i+1)..j).
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double Spearman(std::span<const double> x, std::span<const double> y) {
  CheckInputs(x, y);
  const auto rx = AverageRanks(x);
  const auto ry = AverageRanks(y);
  return Pearson(rx, ry);
}

double Kendall(std::span<const double> x, std::span<const double> y) {
  CheckInputs(x, y);
  const std::size_t n = x.size();
  std::vector<std::pair<double, double>> pairs(n);
  for (std::size_t i = 0; i < n; ++i) pairs[i] = {x[i], y[i]};
  std::sort(pairs.begin(), pairs.end());

  const int64_t total = static_cast<int64_t>(n) * static_cast<int64_t>(n - 1) / 2;
  const int64_t x_ties = TiedPairs(n, [&](std::size_t a, std::size_t b) {
    return pairs[a].first == pairs[b].first;
  });
  const int64_t joint_ties = TiedPairs(n, [&](std::size_t a, std::size_t b) {
    return pairs[a] == pairs[b];
  });

  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = pairs[i].second;
  std::vector<double> buf(n);
  const int64_t discordant = MergeSortInversions(ys, buf, 0, n);
  const int64_t y_ties = TiedPairs(n, [&](std::size_t a, std::size_t b) {
    return ys[a] == ys[b];
  });

  const int64_t x_pairs = total - x_ties;
  const int64_t y_pairs = total - y_ties;
  if (x_pairs == 0 || y_pairs == 0) {
    throw DegenerateInputError("kendall input has every pair tied");
  }
  // concordant - discordant over pairs untied in both x and y.
  const int64_t numerator =
      total - x_ties - y_ties + joint_ties - 2 * discordant;
  return Clamp(static_cast<double>(numerator) /
               std::sqrt(static_cast<double>(x_pairs) *
                         static_cast<double>(y_pairs)));
}

double Correlate(Coefficient c, std::span<const double> x,
                 std::span<const double> y) {
  switch (c) {
    case Coefficient::kPearson:
      return Pearson(x, y);
    case Coefficient::kSpearman:
      return Spearman(x, y);
    case Coefficient::kKendall:
      return Kendall(x, y);
  }
  return 0.0;
}

}  // namespace qaeval
