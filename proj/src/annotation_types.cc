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

#include "reasonlink/annotation_types.h"

#include <stdexcept>

#include "reasonlink/text.h"

namespace reasonlink {

std::string_view ToString(Feasibility f) {
  switch (f) {
    case Feasibility::kCanWrite:
      return "can_write";
    case Feasibility::kCannotWrite:
      return "cannot_write";
    case Feasibility::kUnsure:
      return "unsure";
  }
  return "unknown";
}

Feasibility ParseFeasibility(std::string_view s) {
  const std::string t = ToLower(Trim(s));
  if (t == "can_write" || t == "yes") return Feasibility::kCanWrite;
  if (t == "cannot_write" || t == "no") return Feasibility::kCannotWrite;
  if (t == "unsure") return Feasibility::kUnsure;
  throw std::invalid_argument("unknown feasibility answer: '" + std::string(s) + "'");
}

std::string ChainId(std::string_view phase1_task_id, std::string_view worker) {
  std::string id(phase1_task_id);
  id += '/';
  id += worker;
  return id;
}

}  // namespace reasonlink
