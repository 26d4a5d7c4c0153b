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

#include "reasonlink/corpus_ingestion.h"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <unordered_set>

#include "reasonlink/csv.h"
#include "reasonlink/text.h"

namespace reasonlink {

namespace {

constexpr const char* kColumns[] = {"id",          "topic",       "claim",  "premise",
                                    "stance_label", "stance_conf", "quality"};

bool ParseUnit(std::string_view s, double& out) {
  s = Trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && out >= 0.0 && out <= 1.0;
}

bool ParseStance(std::string_view s, StanceLabel& out) {
  const std::string t = ToLower(Trim(s));
  if (t == "support" || t == "pro" || t == "1") {
    out = StanceLabel::kSupport;
    return true;
  }
  if (t == "against" || t == "con" || t == "-1") {
    out = StanceLabel::kAgainst;
    return true;
  }
  return false;
}

}  // namespace

std::string_view ToString(StanceLabel s) {
  return s == StanceLabel::kSupport ? "support" : "against";
}

std::string_view ToString(RejectionReason r) {
  switch (r) {
    case RejectionReason::kParseError:
      return "PARSE_ERROR";
    case RejectionReason::kDuplicateId:
      return "DUPLICATE_ID";
    case RejectionReason::kStanceNotSupport:
      return "STANCE_NOT_SUPPORT";
    case RejectionReason::kTopicNotSelected:
      return "TOPIC_NOT_SELECTED";
    case RejectionReason::kQualityBelowMin:
      return "QUALITY_BELOW_MIN";
    case RejectionReason::kStanceBelowMin:
      return "STANCE_BELOW_MIN";
  }
  return "UNKNOWN";
}

std::vector<std::string> FilterPolicy::Validate() const {
  std::vector<std::string> errors;
  if (!(min_quality >= 0.0 && min_quality <= 1.0)) {
    errors.push_back("min_quality: must be within [0,1]");
  }
  if (!(min_stance >= 0.0 && min_stance <= 1.0)) {
    errors.push_back("min_stance: must be within [0,1]");
  }
  if (topics.empty()) errors.push_back("topics: must not be empty");
  return errors;
}

std::map<std::string, int> IngestResult::RejectionCounts() const {
  std::map<std::string, int> counts;
  for (const RejectedRow& r : rejected) ++counts[std::string(ToString(r.reason))];
  return counts;
}

IngestResult Ingest(std::istream& csv, const FilterPolicy& policy, const ColumnMapping& mapping) {
  if (const auto errors = policy.Validate(); !errors.empty()) {
    throw std::invalid_argument("invalid filter policy: " + errors.front());
  }
  CsvReader reader(csv);
  const auto header = reader.Next();
  if (!header) throw std::runtime_error("empty input: missing header");

  size_t index[std::size(kColumns)];
  for (size_t c = 0; c < std::size(kColumns); ++c) {
    std::string want = kColumns[c];
    if (auto it = mapping.find(want); it != mapping.end()) want = it->second;
    const auto pos = std::find_if(header->begin(), header->end(), [&](const std::string& h) {
      return Trim(h) == want;
    });
    if (pos == header->end()) throw std::runtime_error("header is missing column '" + want + "'");
    index[c] = static_cast<size_t>(pos - header->begin());
  }
  const size_t width = header->size();

  IngestResult result;
  std::unordered_set<std::string> seen;
  while (true) {
    std::optional<std::vector<std::string>> row;
    try {
      row = reader.Next();
    } catch (const std::runtime_error& e) {
      result.rejected.push_back({reader.record_line(), "", RejectionReason::kParseError, e.what()});
      break;
    }
    if (!row) break;
    const int line = reader.record_line();
    if (row->size() == 1 && Trim((*row)[0]).empty()) continue;  // blank line

    auto reject = [&](std::string id, RejectionReason reason, std::string detail) {
      result.rejected.push_back({line, std::move(id), reason, std::move(detail)});
    };
    if (row->size() != width) {
      reject("", RejectionReason::kParseError,
             "expected " + std::to_string(width) + " fields, got " + std::to_string(row->size()));
      continue;
    }
    Argument a;
    a.id = std::string(Trim((*row)[index[0]]));
    a.topic = std::string(Trim((*row)[index[1]]));
    a.claim = std::string(Trim((*row)[index[2]]));
    a.premise = std::string(Trim((*row)[index[3]]));
    if (a.id.empty() || a.claim.empty() || a.premise.empty()) {
      reject(a.id, RejectionReason::kParseError, "id, claim and premise must be non-empty");
      continue;
    }
    if (!ParseStance((*row)[index[4]], a.stance_label)) {
      reject(a.id, RejectionReason::kParseError, "bad stance_label");
      continue;
    }
    if (!ParseUnit((*row)[index[5]], a.stance_conf)) {
      reject(a.id, RejectionReason::kParseError, "stance_conf must be a number in [0,1]");
      continue;
    }
    if (!ParseUnit((*row)[index[6]], a.quality)) {
      reject(a.id, RejectionReason::kParseError, "quality must be a number in [0,1]");
      continue;
    }
    if (!seen.insert(a.id).second) {
      reject(a.id, RejectionReason::kDuplicateId, "");
      continue;
    }
    if (a.stance_label != StanceLabel::kSupport) {
      reject(a.id, RejectionReason::kStanceNotSupport, "");
    } else if (!policy.topics.contains(a.topic)) {
      reject(a.id, RejectionReason::kTopicNotSelected, a.topic);
    } else if (a.quality < policy.min_quality) {
      reject(a.id, RejectionReason::kQualityBelowMin, "");
    } else if (a.stance_conf < policy.min_stance) {
      reject(a.id, RejectionReason::kStanceBelowMin, "");
    } else {
      result.admitted.push_back(std::move(a));
    }
  }
  return result;
}

std::set<std::string> LoadTopics(std::istream& in) {
  std::set<std::string> topics;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view t = Trim(line);
    if (t.empty() || t.front() == '#') continue;
    topics.emplace(t);
  }
  return topics;
}

std::vector<TopicCount> TopicSummary(const std::vector<Argument>& arguments) {
  std::map<std::string, int> counts;
  for (const Argument& a : arguments) ++counts[a.topic];
  std::vector<TopicCount> out;
  out.reserve(counts.size());
  for (const auto& [topic, n] : counts) out.push_back({topic, n});
  return out;
}

}  // namespace reasonlink
