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

#ifndef REASONLINK_ANNOTATION_TYPES_H_
#define REASONLINK_ANNOTATION_TYPES_H_

#include <optional>
#include <string>
#include <string_view>

#include "reasonlink/chain_model.h"

namespace reasonlink {

enum class Phase { kPhase1 = 1, kPhase2 = 2 };

enum class Feasibility { kCanWrite, kCannotWrite, kUnsure };

std::string_view ToString(Feasibility f);
// "can_write" / "cannot_write" / "unsure"; throws std::invalid_argument.
Feasibility ParseFeasibility(std::string_view s);

struct Phase1Response {
  std::string task_id;
  std::string worker;
  std::string argument_id;
  std::string outcome_text;
  Feasibility feasibility = Feasibility::kCanWrite;
  std::optional<ReasoningChain> chain;
  bool sanity_confirmed = false;
};

// Chains are identified by the Phase 1 task and the worker who wrote them.
std::string ChainId(std::string_view phase1_task_id, std::string_view worker);

// One worker's Phase 2 judgement of one chain. Validity and score arrive as
// separate submissions; either may be absent.
struct Phase2Response {
  std::string task_id;
  std::string worker;
  std::string chain_id;
  std::optional<bool> outcome_valid;
  std::optional<int> score;
};

}  // namespace reasonlink

#endif  // REASONLINK_ANNOTATION_TYPES_H_
