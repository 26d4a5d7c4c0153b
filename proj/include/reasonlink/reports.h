// Copyright 2026 The ReasonLink Authors.
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

#ifndef REASONLINK_REPORTS_H_
#define REASONLINK_REPORTS_H_

#include <istream>
#include <string>
#include <vector>

#include "reasonlink/aggregation.h"
#include "reasonlink/analytics.h"
#include "reasonlink/annotation_workflow.h"
#include "reasonlink/json_io.h"

namespace reasonlink {

enum class ExportBucket { kKeptOnly, kAll };

// Column order of exported datasets.
const std::vector<std::string>& ExportColumns();

// CSV with header; one row per funnel chain ordered by (argument id, chain id).
std::string ExportDataset(const FunnelReport& funnel, ExportBucket bucket);

// Arguments that were sent to Phase 1, by id.
std::vector<Argument> AnnotatedArguments(const WorkflowState& state);

std::vector<KeptChain> Phase1Chains(const FunnelReport& funnel);
std::vector<KeptChain> KeptChains(const FunnelReport& funnel);

Json StatsReport(const WorkflowState& state, const FunnelReport& funnel);
Json CoverageReport(const WorkflowState& state, const FunnelReport& funnel);
// Two-column "k,count" text per phase, ready for plotting.
std::string CoverageTable(const std::map<int, int>& histogram);

// Crowd agreement over Phase 2: outcome validity (chains x workers, 0/1)
// and rubric scores (chains x workers, 1..5).
Json AgreementReport(const WorkflowState& state);

// item,rater,value CSV (header required) into a matrix; item and rater are
// free-form labels.
RatingMatrix ReadRatingsCsv(std::istream& in);

}  // namespace reasonlink

#endif  // REASONLINK_REPORTS_H_
