// Copyright 2026 The pacfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PACFAIR_REPORT_HPP_
#define PACFAIR_REPORT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "pacfair/audit.hpp"
#include "pacfair/logistic.hpp"

namespace pacfair {

// Report layout is documented in docs/report.md. Output depends only on the
// report contents (no timestamps, fixed key order), so equal reports
// serialize to equal bytes.
std::string ReportToJson(const AuditReport& report);
std::string ReportToMarkdown(const AuditReport& report);

// Footnote attached to the uniform lower bound.
extern const std::string_view kUniformLowerFootnote;

// Model files used by the `train` and `fairness` commands.
std::string ModelToJson(const TrainedModel& model, const std::vector<std::string>& feature_names);
TrainedModel ModelFromJson(std::string_view text);

}  // namespace pacfair

#endif  // PACFAIR_REPORT_HPP_
