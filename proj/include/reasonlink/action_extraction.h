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

#ifndef REASONLINK_ACTION_EXTRACTION_H_
#define REASONLINK_ACTION_EXTRACTION_H_

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reasonlink/chain_model.h"

namespace reasonlink {

// Gerund form of a base-form verb: irregular lexicon, then final-"e" drop,
// then consonant doubling for single-syllable CVC words (final w/x/y never
// doubled), then plain "+ing". Output is lower case.
std::string Gerundize(std::string_view verb);

struct Token {
  std::string text;
  size_t begin = 0;  // byte offsets into the source string
  size_t end = 0;
  bool punct = false;
};

// Whitespace split, with every ASCII punctuation character emitted as its own
// token.
std::vector<Token> Tokenize(std::string_view text);

// One line of a rule file:
//
//   We|we should not <verb> <rest...> => Not {verb:gerund} {rest} !review
//
// Pattern elements are literal alternatives separated by '|', a single-word
// slot <name>, or a greedy tail slot <name...> that must be last. The
// template substitutes {name} verbatim or {name:gerund}. A trailing !review
// marks matches as needing a human look.
struct PatternElement {
  enum class Kind { kLiteral, kWord, kTail };
  Kind kind = Kind::kLiteral;
  std::vector<std::string> alternatives;  // kLiteral only
  std::string slot;                       // kWord / kTail
};

struct TemplatePart {
  enum class Kind { kText, kSlot, kGerundSlot };
  Kind kind = Kind::kText;
  std::string value;
};

struct ExtractionRule {
  std::string source;  // original rule line
  std::vector<PatternElement> pattern;
  std::vector<TemplatePart> rewrite;
  bool review = false;
};

ExtractionRule ParseRule(std::string_view line);
// Blank lines and lines starting with '#' are skipped. Throws
// std::runtime_error naming the offending line.
std::vector<ExtractionRule> LoadRules(std::istream& in);
std::vector<ExtractionRule> LoadRulesFromFile(const std::string& path);
const std::vector<ExtractionRule>& DefaultRules();

struct ActionExtraction {
  ActionEntity action;
  bool needs_review = false;
  std::string rule;
};

class ActionExtractor {
 public:
  ActionExtractor();
  explicit ActionExtractor(std::vector<ExtractionRule> rules);

  // nullopt means no rule applied; the caller must supply the action by hand.
  // Throws std::invalid_argument on a blank claim.
  std::optional<ActionExtraction> Extract(std::string_view claim,
                                          std::string claim_id = {}) const;

  const std::vector<ExtractionRule>& rules() const { return rules_; }

 private:
  std::vector<ExtractionRule> rules_;
};

}  // namespace reasonlink

#endif  // REASONLINK_ACTION_EXTRACTION_H_
