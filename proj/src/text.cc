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

#include "reasonlink/text.h"

#include <cctype>

namespace reasonlink {

namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool IsPunct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::string_view StripPunct(std::string_view s) {
  while (!s.empty() && IsPunct(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsPunct(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> SplitWhitespace(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && IsSpace(s[i])) ++i;
    size_t start = i;
    while (i < s.size() && !IsSpace(s[i])) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::string NormalizeForComparison(std::string_view s) {
  std::string out;
  for (const std::string& tok : SplitWhitespace(s)) {
    if (!out.empty()) out.push_back(' ');
    out += ToLower(tok);
  }
  while (!out.empty() && (IsPunct(out.back()) || IsSpace(out.back()))) out.pop_back();
  return out;
}

int WordCount(std::string_view s) {
  int n = 0;
  for (const std::string& tok : SplitWhitespace(s)) {
    if (!StripPunct(tok).empty()) ++n;
  }
  return n;
}

bool IsAsciiAlpha(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalpha(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace reasonlink
