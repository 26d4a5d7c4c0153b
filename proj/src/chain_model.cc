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

#include "reasonlink/chain_model.h"

#include <algorithm>
#include <stdexcept>

#include "reasonlink/text.h"

namespace reasonlink {

std::string_view ToString(CausalRelation r) {
  return r == CausalRelation::kCause ? "cause" : "suppress";
}

CausalRelation ParseCausalRelation(std::string_view token) {
  const std::string t = ToLower(Trim(token));
  if (t == "cause") return CausalRelation::kCause;
  if (t == "suppress") return CausalRelation::kSuppress;
  throw std::invalid_argument("unknown causal relation: '" + std::string(token) + "'");
}

std::string_view ToString(ViolationCode code) {
  switch (code) {
    case ViolationCode::kEmptyComponent:
      return "EMPTY_COMPONENT";
    case ViolationCode::kParaphraseOfClaim:
      return "PARAPHRASE_OF_CLAIM";
    case ViolationCode::kParaphraseOfPremise:
      return "PARAPHRASE_OF_PREMISE";
    case ViolationCode::kOutcomeEqualsPremise:
      return "OUTCOME_EQUALS_PREMISE";
  }
  return "UNKNOWN";
}

bool ValidationReport::Has(ViolationCode code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [code](const Violation& v) { return v.code == code; });
}

std::vector<std::string> ValidationReport::Codes() const {
  std::vector<std::string> out;
  out.reserve(violations.size());
  for (const Violation& v : violations) out.emplace_back(ToString(v.code));
  return out;
}

ValidationReport ValidateChain(const ReasoningChain& chain, std::string_view claim,
                               std::string_view premise) {
  ValidationReport report;
  auto& out = report.violations;
  if (Trim(chain.action.text).empty()) out.push_back({ViolationCode::kEmptyComponent, "action"});
  if (Trim(chain.implicit.text).empty()) {
    out.push_back({ViolationCode::kEmptyComponent, "implicit"});
  }
  if (Trim(chain.outcome.text).empty()) {
    out.push_back({ViolationCode::kEmptyComponent, "outcome"});
  }

  const std::string norm_claim = NormalizeForComparison(claim);
  const std::string norm_premise = NormalizeForComparison(premise);
  const std::string norm_implicit = NormalizeForComparison(chain.implicit.text);
  const std::string norm_outcome = NormalizeForComparison(chain.outcome.text);

  if (!norm_implicit.empty()) {
    if (norm_implicit == norm_claim) {
      out.push_back({ViolationCode::kParaphraseOfClaim, "implicit"});
    }
    if (norm_implicit == norm_premise) {
      out.push_back({ViolationCode::kParaphraseOfPremise, "implicit"});
    }
  }
  if (!norm_outcome.empty() && norm_outcome == norm_premise) {
    out.push_back({ViolationCode::kOutcomeEqualsPremise, "outcome"});
  }
  return report;
}

ChainRecord ToRecord(const ReasoningChain& chain, std::string argument_id,
                     std::string phase1_task_id) {
  ChainRecord r;
  r.argument_id = std::move(argument_id);
  r.action = chain.action.text;
  r.rel_ai = chain.rel_ai;
  r.implicit = chain.implicit.text;
  r.rel_io = chain.rel_io;
  r.outcome = chain.outcome.text;
  r.author = chain.implicit.author.empty() ? chain.outcome.author : chain.implicit.author;
  r.phase1_task_id = std::move(phase1_task_id);
  return r;
}

std::string DedupKey(const ReasoningChain& chain) {
  std::string key = NormalizeForComparison(chain.action.text);
  key += '\x1f';
  key += ToString(chain.rel_ai);
  key += '\x1f';
  key += NormalizeForComparison(chain.implicit.text);
  key += '\x1f';
  key += ToString(chain.rel_io);
  key += '\x1f';
  key += NormalizeForComparison(chain.outcome.text);
  return key;
}

}  // namespace reasonlink
