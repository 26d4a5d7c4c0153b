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

#ifndef REASONLINK_JSON_IO_H_
#define REASONLINK_JSON_IO_H_

// nlohmann/json mappings for the domain records. Field names are the wire
// names used by the HTTP API, snapshots and the event log.

#include "json.hpp"
#include "reasonlink/aggregation.h"
#include "reasonlink/analytics.h"
#include "reasonlink/annotation_workflow.h"
#include "reasonlink/chain_model.h"
#include "reasonlink/corpus_ingestion.h"

namespace reasonlink {

using Json = nlohmann::json;

void to_json(Json& j, const ChainRecord& r);
void to_json(Json& j, const ReasoningChain& c);
void from_json(const Json& j, ReasoningChain& c);
void to_json(Json& j, const Argument& a);
void from_json(const Json& j, Argument& a);
void to_json(Json& j, const Worker& w);
void from_json(const Json& j, Worker& w);
void to_json(Json& j, const AnnotationTask& t);
void from_json(const Json& j, AnnotationTask& t);
void to_json(Json& j, const Phase1Response& r);
void from_json(const Json& j, Phase1Response& r);
void to_json(Json& j, const Phase2Response& r);
void from_json(const Json& j, Phase2Response& r);
void to_json(Json& j, const AggregationVerdict& v);
void from_json(const Json& j, AggregationVerdict& v);
void to_json(Json& j, const BonusLedgerEntry& e);
void from_json(const Json& j, BonusLedgerEntry& e);
void to_json(Json& j, const WorkflowState& s);
void from_json(const Json& j, WorkflowState& s);
void to_json(Json& j, const Status& s);
void to_json(Json& j, const FunnelChain& c);
void from_json(const Json& j, FunnelChain& c);
void to_json(Json& j, const FunnelReport& r);
void from_json(const Json& j, FunnelReport& r);
void to_json(Json& j, const DatasetStatistics& s);
void to_json(Json& j, const ReliabilityReport& r);

// Counts only, keyed by the row names of the published statistics table.
Json FunnelSummary(const FunnelReport& r);

}  // namespace reasonlink

#endif  // REASONLINK_JSON_IO_H_
