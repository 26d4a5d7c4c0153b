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

#ifndef REASONLINK_CORPUS_INGESTION_H_
#define REASONLINK_CORPUS_INGESTION_H_

#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace reasonlink {

enum class StanceLabel { kSupport, kAgainst };

std::string_view ToString(StanceLabel s);

struct Argument {
  std::string id;
  std::string topic;
  std::string claim;
  std::string premise;
  StanceLabel stance_label = StanceLabel::kSupport;
  double stance_conf = 0.0;
  double quality = 0.0;
};

// Only Support-stance rows are ever admitted.
struct FilterPolicy {
  double min_quality = 0.5;
  double min_stance = 0.6;
  std::set<std::string> topics;

  // Field-path errors, empty when valid.
  std::vector<std::string> Validate() const;
};

enum class RejectionReason {
  kParseError,
  kDuplicateId,
  kStanceNotSupport,
  kTopicNotSelected,
  kQualityBelowMin,
  kStanceBelowMin,
};

std::string_view ToString(RejectionReason r);

struct RejectedRow {
  int line = 0;  // source line of the record
  std::string id;
  RejectionReason reason;
  std::string detail;
};

struct IngestResult {
  std::vector<Argument> admitted;
  std::vector<RejectedRow> rejected;

  std::map<std::string, int> RejectionCounts() const;
};

// Source column name for each canonical column. Canonical names:
// id, topic, claim, premise, stance_label, stance_conf, quality.
using ColumnMapping = std::map<std::string, std::string>;

// Reads a CSV with header and applies the policy. The policy is checked
// first; an invalid policy throws std::invalid_argument. A header missing a
// required column throws std::runtime_error. Per-row problems never throw.
IngestResult Ingest(std::istream& csv, const FilterPolicy& policy,
                    const ColumnMapping& mapping = {});

// Reads one topic per line; blank lines and '#' comments skipped.
std::set<std::string> LoadTopics(std::istream& in);

struct TopicCount {
  std::string topic;
  int premise_count = 0;

  bool operator==(const TopicCount&) const = default;
};

// Lexicographic by topic.
std::vector<TopicCount> TopicSummary(const std::vector<Argument>& arguments);

}  // namespace reasonlink

#endif  // REASONLINK_CORPUS_INGESTION_H_
