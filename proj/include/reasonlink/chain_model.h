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

#ifndef REASONLINK_CHAIN_MODEL_H_
#define REASONLINK_CHAIN_MODEL_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reasonlink {

// Label on each arc of an Action -> Implicit -> Outcome chain.
enum class CausalRelation { kCause, kSuppress };

std::string_view ToString(CausalRelation r);
// Accepts exactly "cause" or "suppress" (case-insensitive); throws
// std::invalid_argument on anything else.
CausalRelation ParseCausalRelation(std::string_view token);

// Composition of two arcs. Cause is the identity; two suppressions cancel.
constexpr CausalRelation Compose(CausalRelation first, CausalRelation second) {
  return first == second ? CausalRelation::kCause : CausalRelation::kSuppress;
}

struct ActionEntity {
  std::string text;
  std::string source_claim_id;
  // Set when the text was typed by an operator instead of extracted.
  bool manual = false;
};

struct OutcomeEntity {
  std::string text;
  std::string source_premise_id;
  std::string author;
};

struct ImplicitCausalKnowledge {
  std::string text;
  std::string author;
};

struct ReasoningChain {
  ActionEntity action;
  CausalRelation rel_ai = CausalRelation::kCause;
  ImplicitCausalKnowledge implicit;
  CausalRelation rel_io = CausalRelation::kCause;
  OutcomeEntity outcome;
};

constexpr CausalRelation NetRelation(const ReasoningChain& chain) {
  return Compose(chain.rel_ai, chain.rel_io);
}

enum class ViolationCode {
  kEmptyComponent,
  kParaphraseOfClaim,
  kParaphraseOfPremise,
  kOutcomeEqualsPremise,
};

std::string_view ToString(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::string component;  // "action", "implicit" or "outcome"

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool Has(ViolationCode code) const;
  std::vector<std::string> Codes() const;
};

// Checks the structural invariants of a chain against the argument it was
// written for. Violations are reported in a fixed order: empty components
// (action, implicit, outcome), then implicit-vs-claim, implicit-vs-premise,
// outcome-vs-premise.
ValidationReport ValidateChain(const ReasoningChain& chain, std::string_view claim,
                               std::string_view premise);

// Flat export/UI form of a chain.
struct ChainRecord {
  std::string argument_id;
  std::string action;
  CausalRelation rel_ai = CausalRelation::kCause;
  std::string implicit;
  CausalRelation rel_io = CausalRelation::kCause;
  std::string outcome;
  std::string author;
  std::string phase1_task_id;
};

ChainRecord ToRecord(const ReasoningChain& chain, std::string argument_id,
                     std::string phase1_task_id);

// Key used to decide whether two chains are the same implicit reasoning:
// normalized texts of all five components.
std::string DedupKey(const ReasoningChain& chain);

}  // namespace reasonlink

#endif  // REASONLINK_CHAIN_MODEL_H_
