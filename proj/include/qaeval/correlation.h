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

#ifndef QAEVAL_CORRELATION_H_
#define QAEVAL_CORRELATION_H_

#include <span>
#include <string_view>
#include <vector>

namespace qaeval {

enum class Coefficient { kPearson, kSpearman, kKendall };

std::string_view CoefficientName(Coefficient c);  // "pearson", ...
Coefficient ParseCoefficient(std::string_view name);

// All three throw PreconditionError on length mismatch or fewer than two
// points, and DegenerateInputError when either side has no variation.
double Pearson(std::span<const double> x, std::span<const double> y);
// Pearson over average ranks.
double Spearman(std::span<const double> x, std::span<const double> y);
// Tau-b, O(n log n) via merge-sort discordance counting.
double Kendall(std::span<const double> x, std::span<const double> y);

double Correlate(Coefficient c, std::span<const double> x,
                 std::span<const double> y);

// 1-based ranks; tied values share the mean of their positions.
std::vector<double> AverageRanks(std::span<const double> values);

}  // namespace qaeval

#endif  // QAEVAL_CORRELATION_H_
