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

#ifndef REASONLINK_STATUS_H_
#define REASONLINK_STATUS_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace reasonlink {

// Machine-readable outcome of an operation that may be refused. An empty code
// means success; details carry sub-codes such as chain violation codes.
struct Status {
  std::string code;
  std::vector<std::string> details;

  bool ok() const { return code.empty(); }
  static Status Ok() { return {}; }
  static Status Error(std::string code, std::vector<std::string> details = {}) {
    return {std::move(code), std::move(details)};
  }
  bool operator==(const Status&) const = default;
};

template <typename T>
struct StatusOr {
  Status status;
  std::optional<T> value;

  StatusOr(Status s) : status(std::move(s)) {}  // NOLINT
  StatusOr(T v) : value(std::move(v)) {}        // NOLINT

  bool ok() const { return status.ok(); }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }
};

}  // namespace reasonlink

#endif  // REASONLINK_STATUS_H_
