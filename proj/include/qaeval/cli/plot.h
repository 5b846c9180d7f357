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

#ifndef QAEVAL_CLI_PLOT_H_
#define QAEVAL_CLI_PLOT_H_

#include <string>
#include <vector>

#include "qaeval/analysis.h"

namespace qaeval::cli {

// Static SVG line plot of a learning curve with error bars.
std::string CurveSvg(const std::vector<CurvePoint>& curve,
                     const std::string& title, const std::string& x_label,
                     const std::string& y_label);

}  // namespace qaeval::cli

#endif  // QAEVAL_CLI_PLOT_H_
