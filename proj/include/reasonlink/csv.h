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

#ifndef REASONLINK_CSV_H_
#define REASONLINK_CSV_H_

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reasonlink {

// Minimal RFC 4180 reader: quoted fields, doubled quotes, embedded newlines
// and CRLF line ends.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Next record, or nullopt at end of input. Throws std::runtime_error on an
  // unterminated quoted field.
  std::optional<std::vector<std::string>> Next();
  // 1-based line on which the last returned record started.
  int record_line() const { return record_line_; }

 private:
  std::istream& in_;
  int line_ = 1;
  int record_line_ = 0;
};

std::string CsvEscape(std::string_view field);
std::string CsvJoin(const std::vector<std::string>& fields);

}  // namespace reasonlink

#endif  // REASONLINK_CSV_H_
