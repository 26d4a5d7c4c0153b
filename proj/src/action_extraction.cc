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

#include "reasonlink/action_extraction.h"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "reasonlink/text.h"

namespace reasonlink {

namespace {

constexpr std::string_view kDefaultRules = R"(
We|we should not <verb> <rest...> => Not {verb:gerund} {rest} !review
We|we should <verb> <rest...> => {verb:gerund} {rest}
)";

const std::map<std::string, std::string, std::less<>>& IrregularGerunds() {
  static const auto* const lexicon = new std::map<std::string, std::string, std::less<>>{
      {"be", "being"},           {"see", "seeing"},         {"flee", "fleeing"},
      {"agree", "agreeing"},     {"free", "freeing"},       {"guarantee", "guaranteeing"},
      {"dye", "dyeing"},         {"eye", "eyeing"},         {"hoe", "hoeing"},
      {"shoe", "shoeing"},       {"tiptoe", "tiptoeing"},   {"singe", "singeing"},
      {"die", "dying"},          {"lie", "lying"},          {"tie", "tying"},
      {"vie", "vying"},          {"panic", "panicking"},    {"picnic", "picnicking"},
      {"mimic", "mimicking"},    {"traffic", "trafficking"}, {"admit", "admitting"},
      {"commit", "committing"},  {"permit", "permitting"},  {"omit", "omitting"},
      {"submit", "submitting"},  {"prefer", "preferring"},  {"refer", "referring"},
      {"occur", "occurring"},    {"begin", "beginning"},    {"forget", "forgetting"},
      {"regret", "regretting"},  {"control", "controlling"}, {"patrol", "patrolling"},
      {"compel", "compelling"},  {"expel", "expelling"},    {"propel", "propelling"},
      {"rebel", "rebelling"},    {"transfer", "transferring"}, {"deter", "deterring"},
      {"equip", "equipping"},    {"quit", "quitting"},      {"quiz", "quizzing"},
      {"ski", "skiing"},
  };
  return *lexicon;
}

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

int VowelGroups(std::string_view w) {
  int groups = 0;
  bool in_group = false;
  for (char c : w) {
    const bool v = IsVowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  return groups;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool IsPunctChar(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::string CapitalizeFirst(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

struct Match {
  std::map<std::string, std::string> slots;
};

// Matches rule elements against the non-punctuation tokens of the claim.
// Trailing punctuation tokens are ignored; the tail slot spans up to the last
// word token and keeps the original spelling in between.
std::optional<Match> MatchRule(const ExtractionRule& rule, std::string_view claim,
                               const std::vector<Token>& tokens) {
  size_t last = tokens.size();
  while (last > 0 && tokens[last - 1].punct) --last;
  if (last == 0) return std::nullopt;

  Match m;
  size_t i = 0;
  for (size_t e = 0; e < rule.pattern.size(); ++e) {
    const PatternElement& el = rule.pattern[e];
    while (i < last && tokens[i].punct) ++i;
    if (i >= last) return std::nullopt;
    switch (el.kind) {
      case PatternElement::Kind::kLiteral: {
        bool hit = false;
        for (const std::string& alt : el.alternatives) hit = hit || tokens[i].text == alt;
        if (!hit) return std::nullopt;
        ++i;
        break;
      }
      case PatternElement::Kind::kWord:
        if (!IsAsciiAlpha(tokens[i].text)) return std::nullopt;
        m.slots[el.slot] = tokens[i].text;
        ++i;
        break;
      case PatternElement::Kind::kTail:
        m.slots[el.slot] =
            std::string(claim.substr(tokens[i].begin, tokens[last - 1].end - tokens[i].begin));
        i = last;
        break;
    }
  }
  if (i != last) return std::nullopt;
  return m;
}

}  // namespace

std::string Gerundize(std::string_view verb) {
  const std::string w = ToLower(verb);
  const auto& lexicon = IrregularGerunds();
  if (auto it = lexicon.find(w); it != lexicon.end()) return it->second;

  if (w.size() > 2 && w.back() == 'e' && !EndsWith(w, "ee") && !EndsWith(w, "ye") &&
      !EndsWith(w, "oe")) {
    return w.substr(0, w.size() - 1) + "ing";
  }
  if (w.size() >= 3 && VowelGroups(w) == 1) {
    const char c1 = w[w.size() - 3], v = w[w.size() - 2], c2 = w.back();
    if (!IsVowel(c1) && IsVowel(v) && !IsVowel(c2) && c2 != 'w' && c2 != 'x' && c2 != 'y') {
      return w + c2 + "ing";
    }
  }
  return w + "ing";
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (IsPunctChar(c)) {
      out.push_back({std::string(1, c), i, i + 1, true});
      ++i;
      continue;
    }
    const size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           !IsPunctChar(text[i])) {
      ++i;
    }
    out.push_back({std::string(text.substr(start, i - start)), start, i, false});
  }
  return out;
}

ExtractionRule ParseRule(std::string_view line) {
  ExtractionRule rule;
  rule.source = std::string(Trim(line));
  const size_t arrow = line.find("=>");
  if (arrow == std::string_view::npos) throw std::runtime_error("missing '=>'");

  for (const std::string& part : SplitWhitespace(line.substr(0, arrow))) {
    PatternElement el;
    if (part.size() > 2 && part.front() == '<' && part.back() == '>') {
      std::string name = part.substr(1, part.size() - 2);
      if (EndsWith(name, "...")) {
        el.kind = PatternElement::Kind::kTail;
        name.resize(name.size() - 3);
      } else {
        el.kind = PatternElement::Kind::kWord;
      }
      if (name.empty()) throw std::runtime_error("empty slot name");
      el.slot = std::move(name);
    } else {
      el.kind = PatternElement::Kind::kLiteral;
      std::stringstream ss(part);
      std::string alt;
      while (std::getline(ss, alt, '|')) {
        if (!alt.empty()) el.alternatives.push_back(alt);
      }
      if (el.alternatives.empty()) throw std::runtime_error("empty literal");
    }
    if (!rule.pattern.empty() && rule.pattern.back().kind == PatternElement::Kind::kTail) {
      throw std::runtime_error("tail slot must be the last pattern element");
    }
    rule.pattern.push_back(std::move(el));
  }
  if (rule.pattern.empty()) throw std::runtime_error("empty pattern");

  std::string_view rhs = Trim(line.substr(arrow + 2));
  if (EndsWith(rhs, "!review")) {
    rule.review = true;
    rhs = Trim(rhs.substr(0, rhs.size() - 7));
  }
  size_t i = 0;
  while (i < rhs.size()) {
    if (rhs[i] == '{') {
      const size_t close = rhs.find('}', i);
      if (close == std::string_view::npos) throw std::runtime_error("unterminated '{'");
      std::string name(rhs.substr(i + 1, close - i - 1));
      TemplatePart part;
      part.kind = TemplatePart::Kind::kSlot;
      if (EndsWith(name, ":gerund")) {
        part.kind = TemplatePart::Kind::kGerundSlot;
        name.resize(name.size() - 7);
      }
      bool known = false;
      for (const PatternElement& el : rule.pattern) known = known || el.slot == name;
      if (!known) throw std::runtime_error("template uses unknown slot '" + name + "'");
      part.value = std::move(name);
      rule.rewrite.push_back(std::move(part));
      i = close + 1;
    } else {
      const size_t next = rhs.find('{', i);
      const size_t end = next == std::string_view::npos ? rhs.size() : next;
      rule.rewrite.push_back({TemplatePart::Kind::kText, std::string(rhs.substr(i, end - i))});
      i = end;
    }
  }
  if (rule.rewrite.empty()) throw std::runtime_error("empty template");
  // Unreviewed rules must start with a gerund.
  if (!rule.review && rule.rewrite.front().kind != TemplatePart::Kind::kGerundSlot) {
    throw std::runtime_error("template must start with a gerund slot unless marked !review");
  }
  return rule;
}

std::vector<ExtractionRule> LoadRules(std::istream& in) {
  std::vector<ExtractionRule> rules;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = Trim(line);
    if (t.empty() || t.front() == '#') continue;
    try {
      rules.push_back(ParseRule(t));
    } catch (const std::exception& e) {
      throw std::runtime_error("rule line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rules;
}

std::vector<ExtractionRule> LoadRulesFromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open rule file " + path);
  return LoadRules(in);
}

const std::vector<ExtractionRule>& DefaultRules() {
  static const auto* const rules = [] {
    std::istringstream in{std::string(kDefaultRules)};
    return new std::vector<ExtractionRule>(LoadRules(in));
  }();
  return *rules;
}

ActionExtractor::ActionExtractor() : rules_(DefaultRules()) {}

ActionExtractor::ActionExtractor(std::vector<ExtractionRule> rules) : rules_(std::move(rules)) {}

std::optional<ActionExtraction> ActionExtractor::Extract(std::string_view claim,
                                                         std::string claim_id) const {
  if (Trim(claim).empty()) throw std::invalid_argument("claim is empty");
  const std::vector<Token> tokens = Tokenize(claim);
  for (const ExtractionRule& rule : rules_) {
    const std::optional<Match> m = MatchRule(rule, claim, tokens);
    if (!m) continue;
    std::string phrase;
    for (const TemplatePart& part : rule.rewrite) {
      switch (part.kind) {
        case TemplatePart::Kind::kText:
          phrase += part.value;
          break;
        case TemplatePart::Kind::kSlot:
          phrase += m->slots.at(part.value);
          break;
        case TemplatePart::Kind::kGerundSlot:
          phrase += Gerundize(m->slots.at(part.value));
          break;
      }
    }
    phrase = CapitalizeFirst(std::string(Trim(phrase)));
    if (phrase.empty()) continue;
    bool has_modal = false;
    for (const std::string& w : SplitWhitespace(phrase)) has_modal = has_modal || ToLower(w) == "should";
    if (has_modal) continue;

    ActionExtraction out;
    out.action.text = std::move(phrase);
    out.action.source_claim_id = std::move(claim_id);
    out.needs_review = rule.review;
    out.rule = rule.source;
    return out;
  }
  return std::nullopt;
}

}  // namespace reasonlink
