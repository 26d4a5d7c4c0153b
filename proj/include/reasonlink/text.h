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

#ifndef REASONLINK_TEXT_H_
#define REASONLINK_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace reasonlink {

// ASCII-only helpers. Non-ASCII bytes pass through untouched.
std::string_view Trim(std::string_view s);
std::string ToLower(std::string_view s);
std::vector<std::string> SplitWhitespace(std::string_view s);

// Case-folded, whitespace-collapsed, terminal punctuation stripped. Two texts
// with equal normal forms are treated as paraphrases of each other.
std::string NormalizeForComparison(std::string_view s);

// Words after stripping leading/trailing punctuation from each
// whitespace-separated token; tokens that are pure punctuation do not count.
int WordCount(std::string_view s);

bool IsAsciiAlpha(std::string_view s);

}  // namespace reasonlink

#endif  // REASONLINK_TEXT_H_
